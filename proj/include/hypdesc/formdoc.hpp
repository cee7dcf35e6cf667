#pragma once

#include <json.hpp>

#include "hypdesc/counterexample.hpp"
#include "hypdesc/descent.hpp"

namespace hypdesc {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "hypdesc/1";

// --- field descriptors ---

inline json tower_to_json(const QuadTower& t) {
    json discs = json::array();
    for (int i = 0; i < t.level(); ++i) discs.push_back(t.disc(i).get_str());
    return json{{"level", t.level()}, {"discs", discs}};
}

inline QuadTower tower_from_json(const json& j) {
    if (!j.is_object() || !j.contains("level") || !j.contains("discs"))
        throw std::invalid_argument("base descriptor must have level and discs");
    QuadTower t = QuadTower::rationals();
    int level = j.at("level").get<int>();
    const json& discs = j.at("discs");
    if (!discs.is_array() || static_cast<int>(discs.size()) != level)
        throw std::invalid_argument("discs must list one entry per level");
    for (const auto& d : discs) {
        Int dv;
        if (d.is_number_integer())
            dv = Int(d.get<long>());
        else
            dv = Int(d.get<std::string>());
        t = t.extend(dv);
    }
    return t;
}

// Coefficients nest by level: "p/q", [lvl0, lvl0] or [lvl1, lvl1].
inline json qelem_to_json(const QElem& v) {
    const auto& c = v.coords();
    switch (v.level()) {
        case 0: return rat_str(c[0]);
        case 1: return json::array({rat_str(c[0]), rat_str(c[1])});
        default:
            return json::array({json::array({rat_str(c[0]), rat_str(c[1])}),
                                json::array({rat_str(c[2]), rat_str(c[3])})});
    }
}

inline QElem qelem_from_json(const json& j, const QuadTower& t) {
    std::vector<Rat> c(QElem::dim(t.level()), Rat(0));
    std::function<void(const json&, size_t, int)> read = [&](const json& node, size_t off,
                                                             int level) {
        if (level == 0) {
            if (!node.is_string() && !node.is_number_integer())
                throw std::invalid_argument("expected a rational string");
            c[off] = node.is_string() ? parse_rat(node.get<std::string>())
                                      : Rat(node.get<long>());
            return;
        }
        if (!node.is_array() || node.size() != 2)
            throw std::invalid_argument("expected a coefficient pair");
        size_t half = size_t(1) << (level - 1);
        read(node[0], off, level - 1);
        read(node[1], off + half, level - 1);
    };
    read(j, 0, t.level());
    return QElem(t, std::move(c));
}

// --- FormDocument ---

inline json form_to_json(const BinForm& f) {
    json coeffs = json::array();
    for (int i = 0; i <= f.degree(); ++i) coeffs.push_back(qelem_to_json(f.coeff(i)));
    return json{{"base", tower_to_json(f.tower())}, {"degree", f.degree()}, {"coeffs", coeffs}};
}

inline BinForm form_from_json(const json& j) {
    QuadTower t = tower_from_json(j.at("base"));
    int degree = j.at("degree").get<int>();
    const json& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != degree + 1)
        throw std::invalid_argument("coeffs must list degree+1 entries");
    std::vector<QElem> c;
    c.reserve(coeffs.size());
    for (const auto& e : coeffs) c.push_back(qelem_from_json(e, t));
    return BinForm(t, std::move(c));
}

// --- invariant documents ---

inline json tuple_to_json(const InvariantTuple& T) {
    QuadTower t = QuadTower::rationals();
    for (const auto& e : T.entries)
        if (t.prefix_of(e.value.tower())) t = e.value.tower();
    json labels = json::array();
    for (const auto& e : T.entries)
        labels.push_back(json{{"label", e.label},
                              {"weight", e.weight},
                              {"value", qelem_to_json(e.value.lift(t))}});
    return json{{"base", tower_to_json(t)}, {"entries", labels}};
}

inline json document_header() {
    return json{{"tool_version", kToolVersion}, {"schema_version", kSchemaVersion}};
}

// --- descent result documents ---

inline json mat2_to_json(const Mat2& M) {
    QuadTower t = M.a.tower();
    return json{{"base", tower_to_json(t)},
                {"entries", json::array({qelem_to_json(M.a), qelem_to_json(M.b),
                                         qelem_to_json(M.c), qelem_to_json(M.d)})}};
}

inline Mat2 mat2_from_json(const json& j) {
    QuadTower t = tower_from_json(j.at("base"));
    const json& e = j.at("entries");
    return Mat2{qelem_from_json(e.at(0), t), qelem_from_json(e.at(1), t),
                qelem_from_json(e.at(2), t), qelem_from_json(e.at(3), t)};
}

inline json tern_to_json(const TernForm& f) {
    json coeffs = json::array();
    for (const auto& c : f.raw()) coeffs.push_back(qelem_to_json(c));
    return json{{"base", tower_to_json(f.tower())}, {"degree", f.degree()}, {"coeffs", coeffs}};
}

inline json descent_to_json(const DescentResult& res) {
    json doc = document_header();
    doc["case"] = json{{"group", res.casedesc.group_type},
                       {"shape", shape_name(res.casedesc.shape)},
                       {"n", res.casedesc.n},
                       {"m", res.casedesc.m},
                       {"genus", res.casedesc.g},
                       {"always_descends", res.casedesc.always_descends}};
    if (res.casedesc.obstruction_label)
        doc["case"]["obstruction_label"] = *res.casedesc.obstruction_label;
    doc["normalized_invariants"] = tuple_to_json(res.I_norm);
    doc["partial_descent"] = form_to_json(assemble(res.f_L));

    if (const auto* hm = std::get_if<HyperellipticModel>(&res.v)) {
        doc["result"] = "model";
        doc["model"] = form_to_json(hm->f0);
        doc["shape"] = shape_name(hm->shape);
        doc["n"] = hm->n;
        doc["m"] = hm->m;
        json chain = json::array();
        for (const auto& st : hm->chain)
            chain.push_back(json{
                {"kind", st.kind == ChainStep::Kind::CoreDiagonal ? "core_diagonal"
                                                                  : "core_moebius"},
                {"matrix", mat2_to_json(st.M)}});
        doc["chain"] = chain;
        if (hm->s0) doc["descended_core"] = form_to_json(*hm->s0);
        if (hm->cover) {
            doc["cover"] = json{{"p", form_to_json(hm->cover->p)},
                                {"q", form_to_json(hm->cover->q)},
                                {"branch_pair", form_to_json(hm->cover->branch_pair)},
                                {"ramification", form_to_json(hm->cover->ram_form)}};
            if (hm->cover->deck) doc["cover"]["deck"] = mat2_to_json(*hm->cover->deck);
        }
    } else if (const auto* cm = std::get_if<ConicModel>(&res.v)) {
        doc["result"] = "conic";
        doc["conic"] = json{{"lambda", rat_str(cm->lambda_c)},
                            {"mu", rat_str(cm->mu_c)},
                            {"r", rat_str(cm->r)},
                            {"d", cm->d.get_str()}};
        doc["parametrization"] = json::array(
            {form_to_json(cm->phiX), form_to_json(cm->phiY), form_to_json(cm->phiZ)});
        doc["branch_core"] = tern_to_json(cm->branch_core);
        doc["branch_form"] = tern_to_json(cm->branch_form);
        doc["branch_source"] = tern_to_json(cm->branch_source);
        doc["cover"] = json::array(
            {tern_to_json(cm->coverX), tern_to_json(cm->coverY), tern_to_json(cm->coverZ)});
    } else {
        const auto& ob = std::get<ObstructionCert>(res.v);
        doc["result"] = "obstructed";
        doc["obstruction"] = json{{"witness_r", rat_str(ob.witness_r)},
                                  {"d", ob.d.get_str()},
                                  {"label", ob.label}};
    }
    return doc;
}

// Re-reads the constructive parts needed to replay a chain certificate.
struct StoredModel {
    HyperellipticModel hm;
};

inline std::optional<StoredModel> model_from_json(const json& doc) {
    if (doc.at("result").get<std::string>() != "model") return std::nullopt;
    StoredModel sm;
    sm.hm.f0 = form_from_json(doc.at("model"));
    auto sh = shape_from_name(doc.at("shape").get<std::string>());
    if (!sh) throw std::invalid_argument("bad shape in document");
    sm.hm.shape = *sh;
    sm.hm.n = doc.at("n").get<int>();
    sm.hm.m = doc.at("m").get<int>();
    for (const auto& st : doc.at("chain")) {
        ChainStep s{st.at("kind").get<std::string>() == "core_diagonal"
                        ? ChainStep::Kind::CoreDiagonal
                        : ChainStep::Kind::CoreMoebius,
                    mat2_from_json(st.at("matrix"))};
        sm.hm.chain.push_back(std::move(s));
    }
    if (doc.contains("descended_core")) sm.hm.s0 = form_from_json(doc.at("descended_core"));
    if (doc.contains("cover")) {
        CoverData cv;
        cv.p = form_from_json(doc.at("cover").at("p"));
        cv.q = form_from_json(doc.at("cover").at("q"));
        cv.branch_pair = form_from_json(doc.at("cover").at("branch_pair"));
        cv.ram_form = form_from_json(doc.at("cover").at("ramification"));
        if (doc.at("cover").contains("deck"))
            cv.deck = mat2_from_json(doc.at("cover").at("deck"));
        sm.hm.cover = std::move(cv);
    }
    return sm;
}

}  // namespace hypdesc
