#pragma once

#include <numeric>

#include "hypdesc/binform.hpp"

namespace hypdesc {

enum class Shape { ccform, cform1, cform2 };

inline const char* shape_name(Shape s) {
    switch (s) {
        case Shape::ccform: return "ccform";
        case Shape::cform1: return "cform1";
        case Shape::cform2: return "cform2";
    }
    return "?";
}

inline std::optional<Shape> shape_from_name(const std::string& s) {
    if (s == "ccform") return Shape::ccform;
    if (s == "cform1") return Shape::cform1;
    if (s == "cform2") return Shape::cform2;
    return std::nullopt;
}

// Core a_0..a_m of x-exponent step n; the full form is
//   ccform:  sum a_i x^(i n) z^((m-i) n)
//   cform1:  z * core        cform2:  x z * core
// ell = m/2 (even m) or (m+1)/2 (odd m).  zeta_n is never materialized.
struct NormalForm {
    Shape shape;
    int n = 0, m = 0, ell = 0;
    QuadTower tow;
    std::vector<QElem> a;  // size m+1, a[0] != 0, a[m] != 0

    int full_degree() const {
        int d = m * n;
        if (shape == Shape::cform1) d += 1;
        if (shape == Shape::cform2) d += 2;
        return d;
    }
    int genus() const { return (full_degree() - 2) / 2; }

    BinForm core() const { return BinForm(tow, a); }
};

inline NormalForm make_normal_form(Shape shape, int n, int m, const QuadTower& t,
                                   std::vector<QElem> a) {
    if (n < 2 || m < 1 || static_cast<int>(a.size()) != m + 1)
        throw std::invalid_argument("bad normal form parameters");
    if (a.front().is_zero() || a.back().is_zero())
        throw std::invalid_argument("normal form needs a_0, a_m nonzero");
    NormalForm nf;
    nf.shape = shape;
    nf.n = n;
    nf.m = m;
    nf.ell = (m % 2 == 0) ? m / 2 : (m + 1) / 2;
    nf.tow = t;
    nf.a = std::move(a);
    for (auto& x : nf.a)
        if (!(x.tower() == t)) x = x.lift(t);
    return nf;
}

inline BinForm assemble(const NormalForm& nf) {
    BinForm f(nf.tow, nf.full_degree());
    int shift = (nf.shape == Shape::cform2) ? 1 : 0;
    for (int i = 0; i <= nf.m; ++i) f.set_coeff(i * nf.n + shift, nf.a[i]);
    return f;
}

// Detects the largest n >= 2 whose diagonal action the support pattern admits.
// Residue/endpoint pattern: (min exp, codegree of max exp) distinguishes
//   (0,0) ccform, (0,1) or (1,0) cform1, (1,1) cform2;
// an x*core presentation of cform1 is canonicalized by reversing the core.
inline std::optional<NormalForm> classify_normal_form(const BinForm& f) {
    if (f.degree() < 4) throw std::invalid_argument("classify needs degree >= 4");
    if (!is_squarefree(f)) throw std::invalid_argument("classify needs a squarefree form");
    std::vector<int> E = f.support();
    if (E.size() < 2) return std::nullopt;
    int lo = E.front(), hi = E.back(), N = f.degree();
    if (lo > 1 || N - hi > 1) return std::nullopt;  // repeated factor would be caught above
    int n = 0;
    for (int e : E) n = std::gcd(n, e - lo);
    if (n < 2) return std::nullopt;
    int m = (hi - lo) / n;

    Shape shape;
    bool reverse = false;
    if (lo == 0 && N == hi) shape = Shape::ccform;
    else if (lo == 0 && N == hi + 1) shape = Shape::cform1;
    else if (lo == 1 && N == hi) {
        shape = Shape::cform1;
        reverse = true;
    } else
        shape = Shape::cform2;

    std::vector<QElem> a;
    a.reserve(m + 1);
    for (int i = 0; i <= m; ++i) a.push_back(f.coeff(lo + i * n));
    if (reverse) std::reverse(a.begin(), a.end());
    return make_normal_form(shape, n, m, f.tower(), std::move(a));
}

// Diagonalizes a supplied involution M (M^2 scalar, act(M, f) ~ f).  Returns
// an eigenvector matrix A over at most one extra quadratic extension and
// g = act(A, f); then A M A^-1 is diagonal and fixes g up to scalar.  Under
// the substitution convention act(X, act(Y, .)) = act(XY, .), the rows of A
// carry the eigenvectors.
inline std::pair<Mat2, BinForm> diagonalize_involution(const BinForm& f, const Mat2& M) {
    Mat2 M2 = M * M;
    if (!M2.is_scalar()) throw std::invalid_argument("M^2 must be scalar");
    if (!proportional(act(M, f), f))
        throw std::invalid_argument("M is not an automorphism of f");
    if (M.is_diagonal()) return {Mat2::identity(f.tower()), f};

    QElem nu = -M.det();  // tr M = 0 for a non-scalar involution
    if (!(M.a + M.d).is_zero()) throw std::invalid_argument("M^2 scalar forces tr M = 0");
    if (!nu.is_rational())
        throw std::invalid_argument("unsupported: -det M not rational");
    Rat nu_q = nu.to_rational();
    if (is_zero(nu_q)) throw std::invalid_argument("singular involution");

    QuadTower t = M.a.tower();
    QElem root = QElem::zero(t);
    if (auto r = rat_sqrt_exact(nu_q)) {
        root = QElem::from_rat(t, *r);
    } else {
        Int core = squarefree_core_rat(nu_q);
        Rat scale = *rat_sqrt_exact(nu_q / Rat(core));
        int have = -1;
        for (int i = 0; i < t.level(); ++i)
            if (t.disc(i) == core) have = i;
        if (have < 0) {
            t = t.extend(core);
            have = t.level() - 1;
        }
        root = scale * QElem::sqrt_gen(t, have);
    }
    Mat2 Ml = {M.a.lift(t), M.b.lift(t), M.c.lift(t), M.d.lift(t)};

    // left eigenvector of M for eigenvalue e: v with v M = e v
    auto eigvec = [&](const QElem& e) -> std::pair<QElem, QElem> {
        if (!Ml.c.is_zero()) return {Ml.c, e - Ml.a};
        return {e + Ml.a, Ml.b};
    };
    auto [p1, q1] = eigvec(root);
    auto [p2, q2] = eigvec(-root);
    Mat2 A = {p1, q1, p2, q2};  // rows are eigenvectors
    if (A.det().is_zero()) throw std::logic_error("eigenvectors degenerate");

    Mat2 D = A * Ml * A.inverse();
    if (!D.is_diagonal()) throw std::logic_error("diagonalization failed");
    BinForm g = act(A, f);
    if (!proportional(act(D, g), g)) throw std::logic_error("diagonalized action check failed");
    return {A, g};
}

}  // namespace hypdesc
