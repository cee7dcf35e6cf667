#pragma once

#include <algorithm>

#include "hypdesc/linalg.hpp"
#include "hypdesc/rational.hpp"

namespace hypdesc {

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;  // rows

// Index set S = {s_1 > s_2 > ...} of admissible coefficient positions of a
// normal-form core a_0..a_m, following the pairs rule.
struct SSet {
    std::vector<int> idx;  // strictly decreasing
    int m = 0;
    int ell = 0;
    bool even_m = true;

    size_t size() const { return idx.size(); }
};

// M_S: entry s - ell (even m) or 2(s - ell) + 1 (odd m).
inline IVec ms_row(const SSet& S) {
    IVec row;
    row.reserve(S.idx.size());
    for (int s : S.idx)
        row.push_back(S.even_m ? Int(s - S.ell) : Int(2 * (s - S.ell) + 1));
    return row;
}

inline bool mixed_signs(const IVec& row) {
    bool pos = false, neg = false;
    for (const Int& x : row) {
        if (x > 0) pos = true;
        if (x < 0) neg = true;
    }
    return pos && neg;
}

// When M_S is single-signed, swap the endpoint m <-> 0 (legal: a_0, a_m != 0).
inline SSet adjust_S(const SSet& S) {
    if (S.size() <= 1 || mixed_signs(ms_row(S))) return S;
    SSet T = S;
    bool swapped = false;
    for (int& s : T.idx) {
        if (s == T.m) {
            s = 0;
            swapped = true;
        } else if (s == 0) {
            s = T.m;
            swapped = true;
        }
    }
    std::sort(T.idx.rbegin(), T.idx.rend());
    if (!swapped || !mixed_signs(ms_row(T)))
        throw std::logic_error("cannot mix signs in M_S");
    return T;
}

namespace detail {

// Unimodular U with row * U = (g, 0, ..., 0); U as columns (U[j] = j-th column).
inline std::pair<Int, IMat> row_reduce_unimodular(const IVec& row) {
    size_t s = row.size();
    IMat U(s, IVec(s, 0));
    for (size_t i = 0; i < s; ++i) U[i][i] = 1;  // U[j] is column j
    Int g = row[0];
    auto col = [&](size_t j) -> IVec& { return U[j]; };
    for (size_t j = 1; j < s; ++j) {
        Int rj = 0;
        for (size_t i = 0; i < s; ++i) rj += row[i] * U[j][i];
        if (rj == 0) continue;
        if (g == 0) {
            std::swap(col(0), col(j));
            g = rj;
            continue;
        }
        Int gg, x, y;
        mpz_gcdext(gg.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), g.get_mpz_t(), rj.get_mpz_t());
        Int u = g / gg, v = rj / gg;
        IVec c0 = col(0), cj = col(j);
        for (size_t i = 0; i < s; ++i) {
            col(0)[i] = x * c0[i] + y * cj[i];
            col(j)[i] = -v * c0[i] + u * cj[i];
        }
        g = gg;
    }
    return {g, U};
}

inline IVec rat_to_int(const RatVec& v) {
    IVec out;
    out.reserve(v.size());
    for (const Rat& x : v) {
        if (x.get_den() != 1) throw std::logic_error("expected integral solution");
        out.push_back(x.get_num());
    }
    return out;
}

inline RatVec int_to_rat(const IVec& v) {
    RatVec out;
    out.reserve(v.size());
    for (const Int& x : v) out.emplace_back(x);
    return out;
}

}  // namespace detail

// Saturated basis of ker(row) in Z^s with all entries >= 0 and first vector
// strictly positive.  Requires mixed signs (guaranteed after adjust_S).
inline IMat kernel_positive_basis(const IVec& row) {
    size_t s = row.size();
    if (s == 0) return {};
    if (s == 1) {
        if (row[0] == 0) throw std::invalid_argument("zero row");
        return {};  // trivial kernel
    }
    if (!mixed_signs(row)) throw std::invalid_argument("row must have mixed signs");

    auto [g, U] = detail::row_reduce_unimodular(row);
    IMat B;  // kernel columns
    for (size_t j = 1; j < s; ++j) B.push_back(U[j]);

    // strictly positive kernel vector: pairwise cancellations, summed
    IVec v(s, 0);
    for (size_t i = 0; i < s; ++i) {
        if (row[i] == 0) {
            v[i] += 1;  // e_i already lies in the kernel
            continue;
        }
        size_t j = s;
        for (size_t k = 0; k < s; ++k)
            if (row[k] != 0 && (row[i] > 0) != (row[k] > 0)) { j = k; break; }
        v[i] += abs(row[j]);
        v[j] += abs(row[i]);
    }
    Int content = 0;
    for (const Int& x : v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    for (Int& x : v) x /= content;

    // coordinates of v in B (columns 1.. of U), via U^-1 v over Q
    RatMat Um(s, RatVec(s));
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < s; ++j) Um[i][j] = Rat(U[j][i]);
    auto sol = rat_solve(Um, detail::int_to_rat(v));
    if (!sol) throw std::logic_error("kernel vector not in lattice");
    IVec coords_full = detail::rat_to_int(*sol);
    if (coords_full[0] != 0) throw std::logic_error("positive vector outside kernel");
    IVec c(coords_full.begin() + 1, coords_full.end());

    // complete c (primitive) to a basis of Z^(s-1): W = (Uc^T)^-1 diag(gc, 1, ..)
    // has first column exactly c, since Uc^T c = gc e_0
    auto [gc, Uc] = detail::row_reduce_unimodular(c);
    if (!(gc == 1 || gc == -1)) throw std::logic_error("coordinate vector not primitive");
    size_t k = s - 1;
    RatMat UcT(k, RatVec(k));
    for (size_t r = 0; r < k; ++r)
        for (size_t cc = 0; cc < k; ++cc) UcT[r][cc] = Rat(Uc[r][cc]);
    IMat W(k, IVec(k, 0));
    for (size_t j = 0; j < k; ++j) {
        RatVec e(k, Rat(0));
        e[j] = (j == 0) ? Rat(gc) : Rat(1);
        auto w = rat_solve(UcT, e);
        if (!w) throw std::logic_error("unimodular completion failed");
        W[j] = detail::rat_to_int(*w);  // W[j] = column j
    }

    // new kernel basis: column j of B * W
    IMat out;
    for (size_t j = 0; j < k; ++j) {
        IVec bj(s, 0);
        for (size_t t = 0; t < k; ++t)
            for (size_t i = 0; i < s; ++i) bj[i] += B[t][i] * W[j][t];
        out.push_back(std::move(bj));
    }
    // out[0] is +-v; force strictly positive
    if (out[0][0] < 0)
        for (Int& x : out[0]) x = -x;

    // minimal multiples of out[0] make the rest nonnegative
    for (size_t j = 1; j < out.size(); ++j) {
        Int mult = 0;
        for (size_t i = 0; i < s; ++i) {
            if (out[j][i] >= 0) continue;
            Int need;  // ceil(-out[j][i] / v1[i])
            mpz_cdiv_q(need.get_mpz_t(), Int(-out[j][i]).get_mpz_t(), out[0][i].get_mpz_t());
            if (need > mult) mult = need;
        }
        for (size_t i = 0; i < s; ++i) out[j][i] += mult * out[0][i];
    }

    for (const IVec& b : out) {
        Int dot = 0;
        for (size_t i = 0; i < s; ++i) dot += row[i] * b[i];
        if (dot != 0) throw std::logic_error("kernel basis check failed");
        for (const Int& x : b)
            if (x < 0) throw std::logic_error("kernel basis not nonnegative");
    }
    return out;
}

inline Rat int_det(const IMat& cols) {
    size_t n = cols.size();
    RatMat M(n, RatVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) M[i][j] = Rat(cols[j][i]);
    return rat_det(M);
}

// Nonnegative w completing the kernel basis to a basis of Z^s (det +-1).
inline IVec complement(const IMat& basis, const IVec& row) {
    size_t s = row.size();
    if (s == 1) return {1};
    auto [g, U] = detail::row_reduce_unimodular(row);
    IVec w = U[0];
    IMat full = basis;
    full.push_back(w);
    Rat d = int_det(full);
    if (!(d == 1 || d == -1)) throw std::logic_error("complement determinant check failed");
    if (!basis.empty()) {
        Int mult = 0;
        const IVec& v1 = basis[0];
        for (size_t i = 0; i < s; ++i) {
            if (w[i] >= 0) continue;
            Int need;
            mpz_cdiv_q(need.get_mpz_t(), Int(-w[i]).get_mpz_t(), v1[i].get_mpz_t());
            if (need > mult) mult = need;
        }
        for (size_t i = 0; i < s; ++i) w[i] += mult * v1[i];
    }
    return w;
}

// Integer coordinates of target in the unimodular basis {basis..., w}.
inline IVec express(const IVec& target, const IMat& basis, const IVec& w) {
    size_t s = target.size();
    IMat cols = basis;
    cols.push_back(w);
    RatMat M(s, RatVec(cols.size()));
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < cols.size(); ++j) M[i][j] = Rat(cols[j][i]);
    auto sol = rat_solve(M, detail::int_to_rat(target));
    if (!sol) throw std::logic_error("express: target outside lattice");
    return detail::rat_to_int(*sol);
}

// Kernel of a stack of rows: integer vectors orthogonal to every row.
inline IMat integer_kernel(const IMat& rows, size_t s) {
    IMat basis(s, IVec(s, 0));
    for (size_t i = 0; i < s; ++i) basis[i][i] = 1;
    for (const IVec& row : rows) {
        if (basis.empty()) break;
        IVec proj(basis.size());
        bool nonzero = false;
        for (size_t j = 0; j < basis.size(); ++j) {
            Int d = 0;
            for (size_t i = 0; i < s; ++i) d += row[i] * basis[j][i];
            proj[j] = d;
            nonzero = nonzero || d != 0;
        }
        if (!nonzero) continue;
        auto [g, U] = detail::row_reduce_unimodular(proj);
        IMat next;
        for (size_t j = 1; j < basis.size(); ++j) {
            IVec nb(s, 0);
            for (size_t t = 0; t < basis.size(); ++t)
                for (size_t i = 0; i < s; ++i) nb[i] += basis[t][i] * U[j][t];
            next.push_back(std::move(nb));
        }
        basis = std::move(next);
    }
    return basis;
}

// Row-style Hermite normal form (canonical form of the row span), for lattice
// equality in tests.
inline IMat hnf(IMat A) {
    if (A.empty()) return A;
    size_t cols = A[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < A.size(); ++c) {
        // gcd the column below r into row r via row ops
        for (size_t i = r + 1; i < A.size(); ++i) {
            while (A[i][c] != 0) {
                if (A[r][c] == 0) {
                    std::swap(A[r], A[i]);
                    continue;
                }
                Int q = A[i][c] / A[r][c];
                for (size_t j = 0; j < cols; ++j) A[i][j] -= q * A[r][j];
                if (A[i][c] != 0) std::swap(A[r], A[i]);
            }
        }
        if (A[r][c] == 0) continue;
        if (A[r][c] < 0)
            for (size_t j = 0; j < cols; ++j) A[r][j] = -A[r][j];
        for (size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), A[i][c].get_mpz_t(), A[r][c].get_mpz_t());
            if (q != 0)
                for (size_t j = 0; j < cols; ++j) A[i][j] -= q * A[r][j];
        }
        ++r;
    }
    A.resize(r);
    return A;
}

inline bool same_lattice(const IMat& a, const IMat& b) { return hnf(a) == hnf(b); }

}  // namespace hypdesc
