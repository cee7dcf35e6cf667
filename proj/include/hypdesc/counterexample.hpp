#pragma once

#include "hypdesc/descent.hpp"

namespace hypdesc {

// Parameters of a Theorem-5 family over L = k(sqrt d1): upper coefficients
// a_m..a_ell free subject to a_ell^sigma = u a_ell; the lower half is forced
// by a_(ell-j) = u d2^j conj(a_(ell+j)).
struct FamilyParams {
    Int d1 = 2;
    Rat d2 = 3;
    QElem u;                    // norm 1; defaults to 1 when left empty
    int n = 2;
    int ell = 2;
    std::vector<QElem> upper;   // upper[j] = a_(ell+j), j = 0..ell
    bool xz_shape = false;      // false: plain ccform f; true: g = xz f
};

struct FamilyCertificate {
    bool squarefree = false;
    bool invariants_stable = false;      // field of moduli = k
    bool antidiagonal = false;
    Rat r = 0;                           // cocycle entry
    bool r_in_class_of_d2 = false;
    bool d2_is_norm = false;
    bool exact_cn = false;
    bool counterexample() const {
        return squarefree && invariants_stable && antidiagonal && r_in_class_of_d2 &&
               !d2_is_norm && exact_cn;
    }
};

// No larger diagonal symmetry than n, and no antidiagonal matrix fixes the
// form over the closure (decided by kernel relations on coefficient ratios).
inline bool check_exact_Cn(const NormalForm& nf) {
    BinForm f = assemble(nf);
    std::vector<int> E = f.support();
    int lo = E.front();
    int gap = 0;
    for (int e : E) gap = std::gcd(gap, e - lo);
    if (gap != nf.n) return false;

    int N = f.degree();
    for (int e : E)
        if (f.coeff(N - e).is_zero()) return true;  // asymmetric support: no antidiagonal
    // ratio system c_e = C rho^e c_(N-e): solvable over the closure iff every
    // integer relation sum k_i (1, e_i) = 0 forces prod (c_e/c_(N-e))^(k_i) = 1
    IMat rows(2, IVec(E.size()));
    for (size_t i = 0; i < E.size(); ++i) {
        rows[0][i] = 1;
        rows[1][i] = E[i];
    }
    IMat rel = integer_kernel(rows, E.size());
    for (const IVec& k : rel) {
        QElem prod = QElem::one(f.tower());
        for (size_t i = 0; i < E.size(); ++i) {
            if (k[i] == 0) continue;
            QElem q = f.coeff(E[i]) / f.coeff(N - E[i]);
            prod = prod * q.pow(k[i].get_si());
        }
        if (!(prod == QElem::one(f.tower()))) return true;
    }
    return false;  // an antidiagonal automorphism exists over the closure
}

inline std::pair<NormalForm, FamilyCertificate> build_family(const FamilyParams& params) {
    QuadTower L = QuadTower::rationals().extend(params.d1);
    QElem u = params.u.is_zero() ? QElem::one(L) : params.u.lift(L);
    if (!(field_norm(u) == QElem::one(QuadTower::rationals())))
        throw std::invalid_argument("u must have norm 1");
    if (static_cast<int>(params.upper.size()) != params.ell + 1)
        throw std::invalid_argument("need upper coefficients a_ell..a_m");
    int ell = params.ell, m = 2 * ell;

    std::vector<QElem> a(m + 1, QElem::zero(L));
    for (int j = 0; j <= ell; ++j) a[ell + j] = params.upper[j].lift(L);
    if (!(a[ell].conj() == u * a[ell]))
        throw std::invalid_argument("a_ell must satisfy conj(a_ell) = u a_ell");
    for (int j = 1; j <= ell; ++j)
        a[ell - j] = QElem::from_rat(L, pow_rat(params.d2, j)) * u * a[ell + j].conj();

    NormalForm nf = make_normal_form(params.xz_shape ? Shape::cform2 : Shape::ccform,
                                     params.n, m, L, std::move(a));
    FamilyCertificate cert;
    cert.squarefree = is_squarefree(assemble(nf));
    if (!cert.squarefree) throw std::invalid_argument("degenerate parameters");

    DihedralData dd = dihedral_invariants(diagonal_invariants(nf));
    cert.invariants_stable = wp_equal(dd.I, dd.I.conj());

    CocycleData coc = cocycle(nf);
    cert.antidiagonal = coc.kind == CocycleData::Kind::Antidiagonal;
    if (cert.antidiagonal) {
        cert.r = coc.r;
        cert.r_in_class_of_d2 = is_norm(coc.r / params.d2, params.d1);
    }
    cert.d2_is_norm = is_norm(params.d2, params.d1);
    cert.exact_cn = check_exact_Cn(nf);
    return {nf, cert};
}

}  // namespace hypdesc
