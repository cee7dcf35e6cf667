#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace hypdesc {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "p/q" or "p"; sign on the numerator, denominator positive.
inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational: '" + s + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline int sign(const Rat& r) { return sgn(r); }
inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// b^e for any integer e; e < 0 inverts (b must be nonzero then).
inline Rat pow_rat(const Rat& b, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (is_zero(b)) throw std::domain_error("0^negative");
        return pow_rat(Rat(1) / b, -e);
    }
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;  // powers of a canonical fraction stay canonical
}

inline std::optional<Int> int_sqrt_exact(const Int& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Nonnegative rational square root, when one exists.
inline std::optional<Rat> rat_sqrt_exact(const Rat& q) {
    if (sgn(q) < 0) return std::nullopt;
    auto n = int_sqrt_exact(q.get_num());
    if (!n) return std::nullopt;
    auto d = int_sqrt_exact(q.get_den());
    if (!d) return std::nullopt;
    return Rat(*n, *d);
}

// Exact integer n-th root, when one exists (n >= 1; negative base needs odd n).
inline std::optional<Int> int_nth_root_exact(const Int& b, unsigned long n) {
    if (n == 0) throw std::invalid_argument("0th root");
    if (b < 0 && n % 2 == 0) return std::nullopt;
    Int r;
    int exact = mpz_root(r.get_mpz_t(), b.get_mpz_t(), n);
    if (!exact) return std::nullopt;
    return r;
}

inline std::optional<Rat> rat_nth_root_exact(const Rat& q, unsigned long n) {
    auto a = int_nth_root_exact(q.get_num(), n);
    if (!a) return std::nullopt;
    auto b = int_nth_root_exact(q.get_den(), n);
    if (!b) return std::nullopt;
    return Rat(*a, *b);
}

}  // namespace hypdesc
