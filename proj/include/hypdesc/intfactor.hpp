#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "hypdesc/rational.hpp"

namespace hypdesc {

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace detail {

inline Int pollard_rho(const Int& n) {
    // deterministic: walk the polynomial family x^2 + c until a factor splits off
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        auto step = [&](const Int& v) { return Int((v * v + c) % n); };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            Int diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;  // cycle without factor; retry with next c
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

inline void factor_into(Int n, std::map<Int, unsigned long>& out) {
    if (n <= 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[Int(p)];
            n /= static_cast<long>(p);
        }
        if (n == 1) return;
    }
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    // trial division for desk-scale inputs, rho for stragglers
    for (unsigned long p = 17; p < 100000 && Int(p) * Int(p) <= n; p += 2) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[Int(p)];
            n /= static_cast<long>(p);
        }
    }
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    if (auto r = int_sqrt_exact(n)) {
        std::map<Int, unsigned long> half;
        factor_into(*r, half);
        for (auto& [p, e] : half) out[p] += 2 * e;
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

// Prime factorization of |n| as prime -> exponent. n must be nonzero.
inline std::map<Int, unsigned long> factorize(const Int& n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    std::map<Int, unsigned long> out;
    Int m = n < 0 ? Int(-n) : n;
    detail::factor_into(m, out);
    return out;
}

// Signed squarefree core: n = core * square, core squarefree with sign(n).
inline Int squarefree_core(const Int& n) {
    if (n == 0) return 0;
    Int core = n < 0 ? -1 : 1;
    for (auto& [p, e] : factorize(n))
        if (e % 2) core *= p;
    return core;
}

// Square class of a nonzero rational as a squarefree integer (p/q ~ p*q).
inline Int squarefree_core_rat(const Rat& r) {
    if (is_zero(r)) throw std::invalid_argument("square class of 0");
    return squarefree_core(Int(r.get_num() * r.get_den()));
}

// Odd primes dividing any of the given nonzero rationals, plus 2.
inline std::vector<Int> relevant_primes(const std::vector<Rat>& vals) {
    std::map<Int, unsigned long> acc;
    acc[2] = 1;
    for (const Rat& v : vals) {
        if (is_zero(v)) continue;
        for (auto& [p, e] : factorize(v.get_num()))
            if (e) acc[p] += e;
        for (auto& [p, e] : factorize(v.get_den()))
            if (e) acc[p] += e;
    }
    std::vector<Int> primes;
    for (auto& [p, e] : acc) primes.push_back(p);
    return primes;
}

}  // namespace hypdesc
