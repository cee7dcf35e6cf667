#pragma once

#include <vector>

#include "hypdesc/rational.hpp"

namespace hypdesc {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // rows

inline RatMat rat_identity(size_t n) {
    RatMat I(n, RatVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

// Row echelon by Gaussian elimination; returns pivot column per row rank order.
inline std::vector<size_t> rat_echelon(RatMat& A) {
    std::vector<size_t> pivots;
    size_t rows = A.size(), cols = rows ? A[0].size() : 0, r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && is_zero(A[p][c])) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[r]);
        Rat inv = Rat(1) / A[r][c];
        for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(A[i][c])) continue;
            Rat f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// One solution of A x = b, if any.
inline std::optional<RatVec> rat_solve(RatMat A, const RatVec& b) {
    size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    for (size_t i = 0; i < rows; ++i) A[i].push_back(b[i]);
    auto pivots = rat_echelon(A);
    for (size_t r = 0; r < rows; ++r) {
        bool all0 = true;
        for (size_t c = 0; c < cols; ++c)
            if (!is_zero(A[r][c])) { all0 = false; break; }
        if (all0 && !is_zero(A[r][cols])) return std::nullopt;
    }
    RatVec x(cols, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = A[r][cols];
    return x;
}

// Basis of the null space of A.
inline std::vector<RatVec> rat_kernel(RatMat A) {
    size_t cols = A.empty() ? 0 : A[0].size();
    auto pivots = rat_echelon(A);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        RatVec v(cols, Rat(0));
        v[free_c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -A[r][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rat rat_det(RatMat A) {
    size_t n = A.size();
    Rat det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && is_zero(A[p][c])) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            std::swap(A[p], A[c]);
            det = -det;
        }
        det *= A[c][c];
        Rat inv = Rat(1) / A[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (is_zero(A[i][c])) continue;
            Rat f = A[i][c] * inv;
            for (size_t j = c; j < n; ++j) A[i][j] -= f * A[c][j];
        }
    }
    return det;
}

}  // namespace hypdesc
