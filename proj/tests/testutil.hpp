#pragma once

#include <cstdlib>
#include <random>

#include "hypdesc/invariants.hpp"

namespace hypdesc::testing {

inline unsigned long test_seed() {
    if (const char* s = std::getenv("HYPDESC_SEED")) return std::strtoul(s, nullptr, 10);
    return 20260811ul;
}

struct Rng {
    std::mt19937_64 gen{test_seed()};

    long integer(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(gen);
    }
    Rat rational(long hi = 9) {
        Rat r(integer(-hi, hi), integer(1, hi));
        r.canonicalize();
        return r;
    }
    Rat nonzero_rational(long hi = 9) {
        Rat r = rational(hi);
        while (is_zero(r)) r = rational(hi);
        return r;
    }
    QElem elem(const QuadTower& t, long hi = 9) {
        std::vector<Rat> c(QElem::dim(t.level()));
        for (auto& x : c) x = rational(hi);
        return QElem(t, std::move(c));
    }
    QElem nonzero_elem(const QuadTower& t, long hi = 9) {
        QElem e = elem(t, hi);
        while (e.is_zero()) e = elem(t, hi);
        return e;
    }

    // random squarefree non-square disc
    Int disc() {
        static const long pool[] = {2, 3, 5, 6, 7, -1, -2, 10, 13, 15};
        return Int(pool[integer(0, 9)]);
    }

    // a random S-admissible ccform normal form over t
    NormalForm normal_form(const QuadTower& t, int n, int m, bool allow_gaps = true) {
        std::vector<QElem> a(m + 1, QElem::zero(t));
        for (int i = 0; i <= m; ++i) {
            bool zero = allow_gaps && i != 0 && i != m && integer(0, 3) == 0;
            if (!zero) a[i] = nonzero_elem(t, 5);
        }
        NormalForm nf = make_normal_form(Shape::ccform, n, m, t, std::move(a));
        if (!is_squarefree(assemble(nf))) return normal_form(t, n, m, allow_gaps);
        return nf;
    }
};

}  // namespace hypdesc::testing
