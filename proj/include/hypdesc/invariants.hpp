#pragma once

#include <set>

#include "hypdesc/intlattice.hpp"
#include "hypdesc/normalform.hpp"

namespace hypdesc {

struct InvEntry {
    std::string label;
    long weight = 0;
    QElem value;
};

// A point of a weighted projective space, values in a tower level.  Entries
// are kept in a fixed order: ascending weight, then label.
struct InvariantTuple {
    std::vector<InvEntry> entries;

    const InvEntry* find(const std::string& label) const {
        for (const auto& e : entries)
            if (e.label == label) return &e;
        return nullptr;
    }
    const QElem& at(const std::string& label) const {
        const InvEntry* e = find(label);
        if (!e) throw std::invalid_argument("no invariant labelled " + label);
        return e->value;
    }

    InvariantTuple conj() const {
        InvariantTuple t = *this;
        for (auto& e : t.entries) e.value = e.value.conj();
        return t;
    }

    InvariantTuple subtuple(const std::vector<std::string>& labels) const {
        InvariantTuple t;
        for (const auto& l : labels) {
            const InvEntry* e = find(l);
            if (!e) throw std::invalid_argument("no invariant labelled " + l);
            t.entries.push_back(*e);
        }
        return t;
    }

    bool same_schema(const InvariantTuple& o) const {
        if (entries.size() != o.entries.size()) return false;
        for (size_t i = 0; i < entries.size(); ++i)
            if (entries[i].label != o.entries[i].label ||
                entries[i].weight != o.entries[i].weight)
                return false;
        return true;
    }

    void sort_canonical() {
        std::stable_sort(entries.begin(), entries.end(),
                         [](const InvEntry& a, const InvEntry& b) {
                             if (a.weight != b.weight) return a.weight < b.weight;
                             return a.label < b.label;
                         });
    }
};

// A monomial in the core coefficients a_0..a_m.
struct JMonomial {
    std::string label;
    long weight = 0;
    std::vector<long> expo;  // size m+1
};

// Reflection a_i -> a_(m-i) on exponent vectors.
inline std::vector<long> swap_conjugate(const std::vector<long>& expo) {
    return {expo.rbegin(), expo.rend()};
}

inline bool mon_symmetric(const JMonomial& mon) { return mon.expo == swap_conjugate(mon.expo); }

inline QElem eval_monomial(const NormalForm& nf, const std::vector<long>& expo) {
    QElem v = QElem::one(nf.tow);
    for (size_t i = 0; i < expo.size(); ++i)
        if (expo[i]) v = v * nf.a[i].pow(expo[i]);
    return v;
}

// The diagonal-invariant datum of a normal form: the J tuple plus everything
// needed to symmetrize, split and reconstruct later.
struct DiagonalData {
    Shape shape = Shape::ccform;
    int n = 0, m = 0, ell = 0;
    bool generic = true;
    SSet S;              // populated on the lattice route
    IMat basis;          // kernel basis aligned with lattice monomials
    IVec wvec;           // complement (the reconstruction parameter monomial)
    IVec row;            // M_S
    std::vector<JMonomial> mons;
    std::vector<size_t> lattice_mons;  // indices into mons, aligned with basis
    InvariantTuple J;
    std::vector<QElem> mirror_vals;    // J' values, aligned with mons
    QuadTower tow;
};

inline bool generic_pattern(const NormalForm& nf) {
    int l = nf.ell;
    if (nf.a[l - 1].is_zero()) return false;
    int from = (nf.m % 2 == 0) ? l + 2 : l + 1;
    for (int i = from; i <= nf.m; ++i)
        if (nf.a[i].is_zero()) return false;
    return true;
}

// One admissible index per symmetric pair: the higher one when its
// coefficient is nonzero, else the lower.
inline SSet choose_S(const NormalForm& nf) {
    SSet S;
    S.m = nf.m;
    S.even_m = nf.m % 2 == 0;
    S.ell = nf.ell;
    int lowest = S.even_m ? nf.ell + 1 : nf.ell;
    for (int i = nf.m; i >= lowest; --i) {
        int j = nf.m - i;
        bool hi = !nf.a[i].is_zero(), lo = !nf.a[j].is_zero();
        if (!hi && !lo) continue;
        S.idx.push_back(hi ? i : j);
    }
    std::sort(S.idx.rbegin(), S.idx.rend());
    return S;
}

inline DiagonalData diagonal_invariants(const NormalForm& nf) {
    DiagonalData D;
    D.shape = nf.shape;
    D.n = nf.n;
    D.m = nf.m;
    D.ell = nf.ell;
    D.tow = nf.tow;
    D.generic = generic_pattern(nf);
    int m = nf.m, l = nf.ell;
    bool even = m % 2 == 0;

    auto expo0 = [&] { return std::vector<long>(m + 1, 0); };
    auto push = [&](std::string label, std::vector<long> e) {
        long w = 0;
        for (long x : e) w += x;
        D.mons.push_back({std::move(label), w, std::move(e)});
    };

    if (even) {
        auto e = expo0();
        e[l] = 1;
        push("J1", std::move(e));
    }
    for (int i = 0; i < l; ++i) {
        auto e = expo0();
        e[i] += 1;
        e[m - i] += 1;
        push("J2_" + std::to_string(i), std::move(e));
    }

    if (D.generic) {
        if (even) {
            for (int t = 3; t <= l + 1; ++t) {
                auto e = expo0();
                e[l + t - 1] = 1;
                e[l - 1] = t - 1;
                push("J" + std::to_string(t), std::move(e));
            }
        } else {
            for (int t = 2; t <= l; ++t) {
                auto e = expo0();
                e[l - 1 + t] = 1;
                e[l - 1] = 2 * t - 1;
                push("J" + std::to_string(2 * t), std::move(e));
            }
        }
    } else {
        D.S = adjust_S(choose_S(nf));
        D.row = ms_row(D.S);
        if (D.S.size() >= 2) {
            D.basis = kernel_positive_basis(D.row);
            D.wvec = complement(D.basis, D.row);
        } else {
            D.basis = {};
            D.wvec = IVec{1};
        }
        std::set<std::string> used;
        for (const auto& me : D.mons) used.insert(me.label);
        for (const IVec& v : D.basis) {
            auto e = expo0();
            long w = 0;
            for (size_t k = 0; k < D.S.idx.size(); ++k) {
                e[D.S.idx[k]] += v[k].get_si();
                w += v[k].get_si();
            }
            std::string label = "J" + std::to_string(w);
            while (used.count(label)) label += "b";
            used.insert(label);
            D.lattice_mons.push_back(D.mons.size());
            push(label, std::move(e));
        }
    }

    std::stable_sort(D.mons.begin(), D.mons.end(), [](const JMonomial& a, const JMonomial& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.label < b.label;
    });
    // re-find lattice monomial positions after the sort
    if (!D.lattice_mons.empty()) {
        D.lattice_mons.clear();
        for (const IVec& v : D.basis) {
            auto e = std::vector<long>(m + 1, 0);
            for (size_t k = 0; k < D.S.idx.size(); ++k) e[D.S.idx[k]] += v[k].get_si();
            for (size_t idx = 0; idx < D.mons.size(); ++idx)
                if (D.mons[idx].expo == e) {
                    D.lattice_mons.push_back(idx);
                    break;
                }
        }
        if (D.lattice_mons.size() != D.basis.size())
            throw std::logic_error("lattice monomial bookkeeping failed");
    }

    for (const auto& mon : D.mons) {
        D.J.entries.push_back({mon.label, mon.weight, eval_monomial(nf, mon.expo)});
        D.mirror_vals.push_back(eval_monomial(nf, swap_conjugate(mon.expo)));
    }
    return D;
}

// Symmetrization under a_i -> a_(m-i): symmetric J's pass through, each
// asymmetric J_t contributes sum and product, every asymmetric pair a cross.
struct DihedralData {
    DiagonalData diag;
    InvariantTuple I;
    struct SymInfo {
        size_t mon;
        std::string label;
    };
    struct PairInfo {
        size_t mon;
        std::string sum_label, prod_label;
        long weight;
    };
    struct CrossInfo {
        size_t mon_s, mon_t;
        std::string label;
    };
    std::vector<SymInfo> syms;
    std::vector<PairInfo> pairs;
    std::vector<CrossInfo> crosses;
};

inline DihedralData dihedral_invariants(const DiagonalData& D) {
    if (D.shape == Shape::cform1)
        throw std::invalid_argument("cform1 keeps plain diagonal invariants");
    DihedralData dd;
    dd.diag = D;
    auto tag = [](const JMonomial& mon) { return mon.label.substr(1); };  // strip 'J'
    std::vector<size_t> asym;
    for (size_t i = 0; i < D.mons.size(); ++i) {
        const auto& mon = D.mons[i];
        const QElem& J = D.J.entries[i].value;
        const QElem& Jp = D.mirror_vals[i];
        if (mon_symmetric(mon)) {
            std::string label = "I" + tag(mon);
            dd.I.entries.push_back({label, mon.weight, J});
            dd.syms.push_back({i, label});
        } else {
            std::string t = tag(mon);
            std::string sl = "I" + t + "_" + t + "_1", pl = "I" + t + "_" + t + "_2";
            dd.I.entries.push_back({sl, mon.weight, J + Jp});
            dd.I.entries.push_back({pl, 2 * mon.weight, J * Jp});
            dd.pairs.push_back({i, sl, pl, mon.weight});
            asym.push_back(i);
        }
    }
    for (size_t u = 0; u < asym.size(); ++u) {
        for (size_t v = u + 1; v < asym.size(); ++v) {
            size_t s = asym[u], t = asym[v];
            std::string label = "I" + tag(D.mons[s]) + "_" + tag(D.mons[t]);
            QElem val = D.J.entries[s].value * D.mirror_vals[t] +
                        D.mirror_vals[s] * D.J.entries[t].value;
            dd.I.entries.push_back({label, D.mons[s].weight + D.mons[t].weight, val});
            dd.crosses.push_back({s, t, label});
        }
    }
    dd.I.sort_canonical();
    return dd;
}

namespace detail {

// Bezout coefficients c_j over the nonzero entries, in tuple order, with
// sum c_j w_j = gcd of the weights.
inline std::pair<long, std::vector<std::pair<size_t, long>>> weight_gcd_combo(
    const InvariantTuple& T) {
    std::vector<std::pair<size_t, long>> combo;
    long g = 0;
    for (size_t j = 0; j < T.entries.size(); ++j) {
        if (T.entries[j].value.is_zero()) continue;
        long w = T.entries[j].weight;
        if (g == 0) {
            combo.push_back({j, 1});
            g = w;
            continue;
        }
        Int gg, x, y;
        mpz_gcdext(gg.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), Int(g).get_mpz_t(),
                   Int(w).get_mpz_t());
        long xg = static_cast<long>(x.get_si()), yg = static_cast<long>(y.get_si());
        for (auto& [idx, c] : combo) c *= xg;
        combo.push_back({j, yg});
        g = static_cast<long>(gg.get_si());
        if (g == 1) break;
    }
    return {g, combo};
}

}  // namespace detail

// Equality in the weighted projective space over the algebraic closure.
inline bool wp_equal(const InvariantTuple& A, const InvariantTuple& B) {
    if (!A.same_schema(B)) throw std::invalid_argument("invariant schema mismatch");
    for (size_t j = 0; j < A.entries.size(); ++j)
        if (A.entries[j].value.is_zero() != B.entries[j].value.is_zero()) return false;
    auto [g, combo] = detail::weight_gcd_combo(A);
    if (g == 0) return true;  // both tuples entirely zero
    auto rho = [&](size_t j) { return B.entries[j].value / A.entries[j].value; };
    QElem lambda = QElem::one(QuadTower::rationals());
    for (auto& [j, c] : combo) lambda = lambda * rho(j).pow(c);
    for (size_t j = 0; j < A.entries.size(); ++j) {
        if (A.entries[j].value.is_zero()) continue;
        if (!(rho(j) == lambda.pow(A.entries[j].weight / g))) return false;
    }
    return true;
}

// Galois-stable tuple over L -> the k-rational representative with the pivot
// entry scaled to 1 (single lowest-weight pivot preferred, else a gcd combo).
inline InvariantTuple wp_normalize(const InvariantTuple& T) {
    bool level1 = false;
    for (const auto& e : T.entries) {
        if (e.value.level() > 1)
            throw std::invalid_argument("wp_normalize expects values over k or k(sqrt d)");
        level1 = level1 || e.value.level() >= 1;
    }
    if (level1 && !wp_equal(T, T.conj()))
        throw std::domain_error("field of moduli larger than k");

    auto [g, combo] = detail::weight_gcd_combo(T);
    InvariantTuple out;
    if (g == 0) {
        for (const auto& e : T.entries)
            out.entries.push_back({e.label, e.weight, QElem(Rat(0))});
        return out;
    }
    // prefer a single pivot of weight = gcd
    for (size_t j = 0; j < T.entries.size(); ++j) {
        if (!T.entries[j].value.is_zero() && T.entries[j].weight == g) {
            combo = {{j, 1}};
            break;
        }
    }
    QElem mval = QElem::one(QuadTower::rationals());
    for (auto& [j, c] : combo) mval = mval * T.entries[j].value.pow(c);
    for (const auto& e : T.entries) {
        if (e.value.is_zero()) {
            out.entries.push_back({e.label, e.weight, QElem(Rat(0))});
            continue;
        }
        QElem v = e.value / mval.pow(e.weight / g);
        out.entries.push_back({e.label, e.weight, QElem(v.to_rational())});
    }
    return out;
}

struct ExtensionData {
    Int d = 1;                        // squarefree class of the first nonzero discriminant
    std::optional<size_t> pair_idx;   // index into DihedralData::pairs
    Rat disc = 0;
};

// First pair (in label order) with nonzero discriminant decides the splitting
// field; all-square or all-vanishing discriminants mean the J's are rational.
inline ExtensionData extension_data(const DihedralData& dd, const InvariantTuple& I_norm) {
    for (size_t i = 0; i < dd.pairs.size(); ++i) {
        Rat s = I_norm.at(dd.pairs[i].sum_label).to_rational();
        Rat p = I_norm.at(dd.pairs[i].prod_label).to_rational();
        Rat disc = s * s - 4 * p;
        if (!is_zero(disc)) return {squarefree_core_rat(disc), i, disc};
    }
    return {Int(1), std::nullopt, Rat(0)};
}

// Splits the symmetrized tuple back into diagonal invariants over k(sqrt d).
// Values returned aligned with dd.diag.mons.
inline std::pair<std::vector<QElem>, QuadTower> split_dihedral(const DihedralData& dd,
                                                               const InvariantTuple& I_norm,
                                                               const ExtensionData& ext) {
    QuadTower L = (ext.d == 1) ? QuadTower::rationals()
                               : QuadTower::rationals().extend(ext.d);
    std::vector<QElem> J(dd.diag.mons.size(), QElem::zero(L));
    for (const auto& si : dd.syms)
        J[si.mon] = QElem::from_rat(L, I_norm.at(si.label).to_rational());
    if (dd.pairs.empty()) return {J, L};

    if (!ext.pair_idx) {
        // every discriminant vanished: each pair has J = J' = sum/2
        for (const auto& pi : dd.pairs) {
            Rat s = I_norm.at(pi.sum_label).to_rational();
            J[pi.mon] = QElem::from_rat(L, s / 2);
        }
        return {J, L};
    }

    const auto& p0 = dd.pairs[*ext.pair_idx];
    Rat A0 = I_norm.at(p0.sum_label).to_rational();
    QElem root = QElem::zero(L);
    if (ext.d == 1) {
        auto r = rat_sqrt_exact(ext.disc);
        if (!r) throw std::domain_error("d = 1 with nonsplit data");
        root = QElem::from_rat(L, *r);
    } else {
        auto scale = rat_sqrt_exact(ext.disc / Rat(ext.d));
        if (!scale) throw std::domain_error("extension data inconsistent with invariants");
        root = *scale * QElem::sqrt_gen(L, 0);
    }
    Rat half(1, 2);
    QElem J0 = half * (QElem::from_rat(L, A0) + root);   // the + branch
    QElem J0p = half * (QElem::from_rat(L, A0) - root);
    if (!(J0 * J0p == QElem::from_rat(L, I_norm.at(p0.prod_label).to_rational())))
        throw std::logic_error("pair discriminant inconsistent with product invariant");
    J[p0.mon] = J0;

    auto cross_label = [&](size_t a, size_t b) -> std::string {
        for (const auto& c : dd.crosses)
            if ((c.mon_s == a && c.mon_t == b) || (c.mon_s == b && c.mon_t == a))
                return c.label;
        throw std::logic_error("missing cross invariant");
    };
    QElem denom = J0p - J0;
    for (size_t i = 0; i < dd.pairs.size(); ++i) {
        if (i == *ext.pair_idx) continue;
        const auto& pi = dd.pairs[i];
        QElem A = QElem::from_rat(L, I_norm.at(pi.sum_label).to_rational());
        QElem B = QElem::from_rat(L, I_norm.at(cross_label(p0.mon, pi.mon)).to_rational());
        QElem Jt = (B - A * J0) / denom;
        QElem Jtp = A - Jt;
        if (!(Jt * Jtp == QElem::from_rat(L, I_norm.at(pi.prod_label).to_rational())))
            throw std::logic_error("cross system inconsistent with product invariant");
        J[pi.mon] = Jt;
    }
    return {J, L};
}

// Rebuilds a normal form from diagonal invariants; the fiber is the rational
// line parametrized by the w-monomial value t.
inline NormalForm reconstruct(const DiagonalData& sch, const std::vector<QElem>& jvals,
                              const QElem& t) {
    if (jvals.size() != sch.mons.size())
        throw std::invalid_argument("J value count does not match schema");
    if (t.is_zero()) throw std::invalid_argument("parameter t must be nonzero");
    int m = sch.m, l = sch.ell;
    bool even = m % 2 == 0;
    QuadTower tw = t.tower();
    for (const auto& v : jvals)
        if (tw.prefix_of(v.tower())) tw = v.tower();
    auto val = [&](const std::string& label) -> QElem {
        for (size_t i = 0; i < sch.mons.size(); ++i)
            if (sch.mons[i].label == label) return jvals[i].lift(tw);
        throw std::invalid_argument("schema lacks invariant " + label);
    };
    std::vector<QElem> a(m + 1, QElem::zero(tw));
    auto div_or_zero = [&](const QElem& num, const QElem& den) {
        if (num.is_zero()) return QElem::zero(tw);
        if (den.is_zero()) throw std::domain_error("inconsistent invariants: division by zero");
        return num / den;
    };

    if (sch.generic) {
        QElem tl = t.lift(tw);
        a[l - 1] = tl;
        if (even) {
            for (int u = 3; u <= l + 1; ++u)
                a[l + u - 1] = val("J" + std::to_string(u)) / tl.pow(u - 1);
            a[l] = val("J1");
            a[l + 1] = div_or_zero(val("J2_" + std::to_string(l - 1)), tl);
        } else {
            for (int u = 2; u <= l; ++u)
                a[l - 1 + u] = val("J" + std::to_string(2 * u)) / tl.pow(2 * u - 1);
            a[l] = div_or_zero(val("J2_" + std::to_string(l - 1)), tl);
        }
        for (int i = 0; i <= l - 2; ++i)
            a[i] = div_or_zero(val("J2_" + std::to_string(i)), a[m - i]);
    } else {
        QElem tl = t.lift(tw);
        size_t s = sch.S.idx.size();
        for (size_t k = 0; k < s; ++k) {
            IVec target(s, 0);
            target[k] = 1;
            IVec coords = express(target, sch.basis, sch.wvec);
            QElem v = tl.pow(coords.back().get_si());
            for (size_t j = 0; j + 1 < coords.size(); ++j)
                v = v * jvals[sch.lattice_mons[j]].lift(tw).pow(coords[j].get_si());
            a[sch.S.idx[k]] = v;
        }
        if (even) a[l] = val("J1");
        auto in_S = [&](int i) {
            return std::find(sch.S.idx.begin(), sch.S.idx.end(), i) != sch.S.idx.end();
        };
        for (int i = 0; i <= m; ++i) {
            if (in_S(i) || (even && i == l)) continue;
            int j = m - i;
            if (in_S(j))
                a[i] = div_or_zero(val("J2_" + std::to_string(std::min(i, j))), a[j]);
            // neither side admissible: coefficient stays zero by the pairs rule
        }
    }

    NormalForm nf = make_normal_form(sch.shape, sch.n, m, tw, std::move(a));
    for (size_t i = 0; i < sch.mons.size(); ++i)
        if (!(eval_monomial(nf, sch.mons[i].expo) == jvals[i].lift(tw)))
            throw std::logic_error("reconstruction postcondition failed at " +
                                   sch.mons[i].label);
    return nf;
}

// Minimal generating monomials of the torus-invariant algebra for even m:
// weight-zero exponent vectors not decomposable in the solution semigroup.
// Wehlau's bound caps the degree at m-1 (at 2 for the degenerate m = 2).
inline std::vector<std::vector<long>> invariant_algebra_generators(int m) {
    if (m < 2 || m % 2) throw std::invalid_argument("m must be even and >= 2");
    int l = m / 2;
    int maxdeg = std::max(m - 1, 2);
    std::vector<std::vector<long>> gens;
    std::vector<long> cur(m + 1, 0);
    std::vector<std::vector<long>> found_this_degree;

    std::function<void(int, int, long)> enumerate = [&](int idx, int left, long wsum) {
        if (idx == m + 1) {
            if (left == 0 && wsum == 0) {
                for (const auto& g : gens) {
                    bool dominated = true;
                    for (int i = 0; i <= m; ++i)
                        if (cur[i] < g[i]) {
                            dominated = false;
                            break;
                        }
                    if (dominated) return;  // product of a smaller invariant and a rest
                }
                found_this_degree.push_back(cur);
            }
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[idx] = e;
            enumerate(idx + 1, left - e, wsum + e * (idx - l));
            cur[idx] = 0;
        }
    };

    for (int deg = 1; deg <= maxdeg; ++deg) {
        found_this_degree.clear();
        enumerate(0, deg, 0);
        std::sort(found_this_degree.begin(), found_this_degree.end());
        for (auto& g : found_this_degree) gens.push_back(std::move(g));
    }
    return gens;
}

}  // namespace hypdesc
