#pragma once

#include "hypdesc/intfactor.hpp"
#include "hypdesc/quadfield.hpp"

namespace hypdesc {

// The real place is denoted by p = 0 in hilbert_symbol.
inline const Int kRealPlace = 0;

namespace detail {

inline long ord_p(const Int& n, const Int& p) {
    if (n == 0) throw std::invalid_argument("ord of 0");
    long e = 0;
    Int m = n;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++e;
    }
    return e;
}

inline long ord_p(const Rat& r, const Int& p) {
    return ord_p(Int(r.get_num()), p) - ord_p(Int(r.get_den()), p);
}

// p-unit part of r reduced mod p^k (den inverted mod p^k), for odd p use k=1.
inline Int unit_mod(const Rat& r, const Int& p, const Int& pk) {
    long e = ord_p(r, p);
    Int num = r.get_num(), den = r.get_den();
    Int pe;
    if (e > 0) {
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
        num /= pe;
    } else if (e < 0) {
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(-e));
        den /= pe;
    }
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t()) == 0)
        throw std::logic_error("non-invertible denominator");
    Int u = (num % pk) * dinv % pk;
    if (u < 0) u += pk;
    return u;
}

}  // namespace detail

// Quadratic Hilbert symbol (a, b)_p over Q_p (p = 0: the real place).
inline int hilbert_symbol(const Rat& a, const Rat& b, const Int& p) {
    if (is_zero(a) || is_zero(b)) throw std::invalid_argument("hilbert symbol of 0");
    if (p == kRealPlace) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
    if (!is_prime(p)) throw std::invalid_argument("place must be prime or real");

    long alpha = detail::ord_p(a, p), beta = detail::ord_p(b, p);
    if (p == 2) {
        Int u = detail::unit_mod(a, p, Int(8)), v = detail::unit_mod(b, p, Int(8));
        auto eps = [](const Int& x) { return ((x - 1) / 2) % 2 != 0; };
        auto omega = [](const Int& x) { return ((x * x - 1) / 8) % 2 != 0; };
        bool minus = (eps(u) && eps(v)) ^ ((alpha % 2) && omega(v)) ^ ((beta % 2) && omega(u));
        return minus ? -1 : 1;
    }
    Int u = detail::unit_mod(a, p, p), v = detail::unit_mod(b, p, p);
    int r = 1;
    if ((alpha % 2) && (beta % 2) && ((p - 1) / 2) % 2 != 0) r = -r;
    if (beta % 2) r *= mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
    if (alpha % 2) r *= mpz_legendre(v.get_mpz_t(), p.get_mpz_t());
    return r;
}

// true iff x^2 - d y^2 = r has a rational solution, i.e. r is a norm from Q(sqrt d).
// Decided locally at every place dividing 2 d num(r) den(r) and at infinity;
// the product over those places must be +1 (product formula), checked here.
inline bool is_norm(const Rat& r, const Int& d_in) {
    if (is_zero(r)) throw std::invalid_argument("is_norm(0)");
    Int d = squarefree_core(d_in);
    if (d == 0 || d == 1) throw std::invalid_argument("d must be a non-square");
    std::vector<Rat> vals = {Rat(d), r};
    int product = hilbert_symbol(Rat(d), r, kRealPlace);
    bool ok = product == 1;
    for (const Int& p : relevant_primes(vals)) {
        int h = hilbert_symbol(Rat(d), r, p);
        product *= h;
        ok = ok && h == 1;
    }
    if (product != 1) throw std::logic_error("Hilbert product formula violated");
    return ok;
}

// Explicit lambda in Q(sqrt d) with field_norm(lambda) = r, when r is a norm.
// Searches X^2 - d Y^2 = (num r)(den r) t^2 with doubling bounds on (t, Y);
// rational denominators t are needed since integral representability can fail
// while the rational norm equation is solvable.
inline std::optional<QElem> solve_norm(const Rat& r, const Int& d_in) {
    Int d = squarefree_core(d_in);
    if (!is_norm(r, d)) return std::nullopt;
    QuadTower L = QuadTower::rationals().extend(d);
    Int P = r.get_num(), Q = r.get_den();
    for (unsigned long bound = 1;; bound *= 2) {
        for (unsigned long t = 1; t <= bound; ++t) {
            Int base = P * Q * Int(t) * Int(t);
            for (unsigned long y = 0; y <= bound; ++y) {
                Int rhs = base + d * Int(y) * Int(y);
                if (auto x = int_sqrt_exact(rhs)) {
                    Rat den(Q * Int(t));
                    QElem lam(L, {Rat(*x) / den, Rat(Int(y)) / den});
                    if (field_norm(lam).to_rational() != r)
                        throw std::logic_error("solve_norm postcondition failed");
                    return lam;
                }
            }
        }
    }
}

// Hilbert 90: for norm-1 c, a mu with conj(mu)/mu = c.
inline QElem hilbert90(const QElem& c) {
    if (c.level() < 1) throw std::domain_error("hilbert90 needs level >= 1");
    if (!(field_norm(c) == QElem::one(c.tower().base())))
        throw std::domain_error("hilbert90 requires field_norm(c) = 1");
    QElem mu = QElem::one(c.tower()) + c.conj();
    if (mu.is_zero()) mu = QElem::sqrt_gen(c.tower(), c.level() - 1);
    if (mu.conj() / mu != c) throw std::logic_error("hilbert90 postcondition failed");
    return mu;
}

}  // namespace hypdesc
