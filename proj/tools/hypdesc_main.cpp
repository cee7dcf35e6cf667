#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "hypdesc/hypdesc.hpp"

namespace {

using namespace hypdesc;

constexpr int kExitUsage = 2;
constexpr int kExitNoNormalForm = 3;
constexpr int kExitObstructed = 10;

json read_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

BinForm load_form(const std::string& path) { return form_from_json(read_doc(path)); }

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

int cmd_invariants(const std::string& file, bool normalize) {
    BinForm f = load_form(file);
    auto nf = classify_normal_form(f);
    if (!nf) {
        std::cerr << "error: no normal form (trivial diagonal symmetry)\n";
        return kExitNoNormalForm;
    }
    DiagonalData D = diagonal_invariants(*nf);
    json doc = document_header();
    doc["shape"] = shape_name(nf->shape);
    doc["n"] = nf->n;
    doc["m"] = nf->m;
    doc["genus"] = nf->genus();
    if (nf->shape == Shape::cform1) {
        doc["kind"] = "diagonal";
        doc["invariants"] = tuple_to_json(normalize ? wp_normalize(D.J) : D.J);
    } else {
        DihedralData dd = dihedral_invariants(D);
        doc["kind"] = "dihedral";
        doc["invariants"] = tuple_to_json(normalize ? wp_normalize(dd.I) : dd.I);
    }
    emit(doc);
    return 0;
}

int cmd_descend(const std::string& file) {
    BinForm f = load_form(file);
    std::optional<DescentResult> res;
    try {
        res = descend(f);
    } catch (const std::domain_error& e) {
        std::string msg = e.what();
        if (msg.find("no normal form") != std::string::npos) {
            std::cerr << "error: " << msg << "\n";
            return kExitNoNormalForm;
        }
        throw;
    }
    emit(descent_to_json(*res));
    return res->is_obstructed() ? kExitObstructed : 0;
}

int cmd_obstruction(const std::string& file) {
    BinForm f = load_form(file);
    auto nf = classify_normal_form(f);
    if (!nf) {
        std::cerr << "error: no normal form (trivial diagonal symmetry)\n";
        return kExitNoNormalForm;
    }
    CaseDescriptor cs = classify_case(nf->shape, nf->n, nf->m, nf->genus());
    json doc = document_header();
    doc["case"] = json{{"group", cs.group_type},
                       {"shape", shape_name(cs.shape)},
                       {"n", cs.n},
                       {"m", cs.m},
                       {"genus", cs.g},
                       {"always_descends", cs.always_descends}};
    if (cs.obstruction_label) doc["case"]["obstruction_label"] = *cs.obstruction_label;

    DescentResult res = descend(f);
    if (const auto* ob = std::get_if<ObstructionCert>(&res.v)) {
        doc["obstructed"] = true;
        doc["witness_r"] = rat_str(ob->witness_r);
        doc["d"] = ob->d.get_str();
        doc["label"] = ob->label;
    } else {
        doc["obstructed"] = false;
        doc["descends_as"] = std::holds_alternative<ConicModel>(res.v) ? "conic" : "hyperelliptic";
    }
    emit(doc);
    return 0;
}

int cmd_counterexample(long d1, const std::string& d2s, int n, int ell, long u_num,
                       const std::string& upper_json, unsigned long seed, bool xz) {
    FamilyParams params;
    params.d1 = Int(d1);
    params.d2 = parse_rat(d2s);
    params.n = n;
    params.ell = ell;
    params.xz_shape = xz;
    QuadTower L = QuadTower::rationals().extend(params.d1);
    if (u_num == 1)
        params.u = QElem::one(L);
    else if (u_num == -1)
        params.u = QElem(Rat(-1)) * QElem::one(L);
    else
        throw CLI::ValidationError("--u must be 1 or -1");

    if (!upper_json.empty()) {
        json j = json::parse(upper_json);
        for (const auto& e : j) params.upper.push_back(qelem_from_json(e, L));
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> coef(-9, 9);
        for (int jj = 0; jj <= ell; ++jj) {
            if (jj == 0) {
                // a_ell with conj(a_ell) = u a_ell: take tau + u conj(tau)
                QElem tau(L, {Rat(coef(rng)), Rat(coef(rng))});
                params.upper.push_back(tau + params.u * tau.conj());
            } else {
                params.upper.push_back(QElem(L, {Rat(coef(rng)), Rat(coef(rng))}));
            }
        }
    }
    auto [nf, cert] = build_family(params);
    json doc = document_header();
    doc["form"] = form_to_json(assemble(nf));
    doc["certificate"] = json{{"squarefree", cert.squarefree},
                              {"field_of_moduli_is_k", cert.invariants_stable},
                              {"antidiagonal_cocycle", cert.antidiagonal},
                              {"r", rat_str(cert.r)},
                              {"r_in_class_of_d2", cert.r_in_class_of_d2},
                              {"d2_is_norm", cert.d2_is_norm},
                              {"exact_Cn", cert.exact_cn},
                              {"counterexample", cert.counterexample()}};
    emit(doc);
    return 0;
}

int cmd_gens(int m) {
    auto gens = invariant_algebra_generators(m);
    json doc = document_header();
    json list = json::array();
    for (const auto& e : gens) {
        json mono = json::array();
        long deg = 0;
        for (size_t i = 0; i < e.size(); ++i) {
            deg += e[i];
            if (e[i]) mono.push_back(json{{"index", i}, {"power", e[i]}});
        }
        list.push_back(json{{"degree", deg}, {"monomial", mono}});
    }
    doc["m"] = m;
    doc["count"] = gens.size();
    doc["generators"] = list;
    emit(doc);
    return 0;
}

int cmd_verify(const std::string& in_file, const std::string& result_file) {
    BinForm f = load_form(in_file);
    json doc = read_doc(result_file);
    auto sm = model_from_json(doc);
    if (!sm) {
        std::cerr << "error: result document is not a constructive model\n";
        return kExitUsage;
    }
    bool ok = verify_model(f, sm->hm);
    json out = document_header();
    out["verified"] = ok;
    emit(out);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Galois descent of hyperelliptic curves with cyclic symmetry"};
    app.require_subcommand(1);

    std::string file, result_file, d2s = "3", upper;
    bool normalize = false, xz = false;
    long d1 = 2, u = 1;
    int n = 2, ell = 2, m = 8;
    unsigned long seed = 1;

    auto* inv = app.add_subcommand("invariants", "arithmetic invariants of a form");
    inv->add_option("file", file)->required();
    inv->add_flag("--normalize", normalize, "normalize to the field of moduli");

    auto* desc = app.add_subcommand("descend", "descend to the field of moduli");
    desc->add_option("file", file)->required();

    auto* obs = app.add_subcommand("obstruction", "report the descent obstruction");
    obs->add_option("file", file)->required();

    auto* cex = app.add_subcommand("counterexample", "build a certified family member");
    cex->add_option("--d1", d1, "disc of L = Q(sqrt d1)")->required();
    cex->add_option("--d2", d2s, "norm-class parameter")->required();
    cex->add_option("--n", n);
    cex->add_option("--l", ell);
    cex->add_option("--u", u, "norm-1 unit: 1 or -1");
    cex->add_option("--seed", seed);
    cex->add_option("--upper", upper, "JSON list of a_ell..a_m over Q(sqrt d1)");
    cex->add_flag("--xz", xz, "use the xz-shape (cform2) family");

    auto* gens = app.add_subcommand("gens", "invariant algebra generators");
    gens->add_option("--m", m)->required();

    auto* ver = app.add_subcommand("verify", "replay a descent certificate");
    ver->add_option("input", file)->required();
    ver->add_option("result", result_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (inv->parsed()) return cmd_invariants(file, normalize);
        if (desc->parsed()) return cmd_descend(file);
        if (obs->parsed()) return cmd_obstruction(file);
        if (cex->parsed()) return cmd_counterexample(d1, d2s, n, ell, u, upper, seed, xz);
        if (gens->parsed()) return cmd_gens(m);
        if (ver->parsed()) return cmd_verify(file, result_file);
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoNormalForm;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
