#pragma once

#include "hypdesc/invariants.hpp"

namespace hypdesc {

// The arithmetic dihedral invariants of a general octavic
// f = a_8 x^8 + ... + a_0 z^8, as printed: weights 1..7.
inline InvariantTuple octavic_dihedral(const BinForm& f) {
    if (f.degree() != 8) throw std::invalid_argument("octavic_dihedral needs degree 8");
    auto a = [&](int i) { return f.coeff(i); };
    auto sym = [&](std::initializer_list<int> idx) {  // monomial + its mirror
        QElem m1 = QElem::one(f.tower()), m2 = m1;
        for (int i : idx) {
            m1 = m1 * a(i);
            m2 = m2 * a(8 - i);
        }
        return m1 + m2;
    };
    auto mono = [&](std::initializer_list<int> idx) {
        QElem m = QElem::one(f.tower());
        for (int i : idx) m = m * a(i);
        return m;
    };
    InvariantTuple T;
    auto put = [&](const char* label, long w, QElem v) {
        T.entries.push_back({label, w, std::move(v)});
    };
    put("i1", 1, mono({4}));
    put("i2", 2, mono({0, 8}));
    put("j2", 2, mono({1, 7}));
    put("k2", 2, mono({2, 6}));
    put("l2", 2, mono({3, 5}));
    put("i3", 3, sym({0, 5, 7}));
    put("j3", 3, sym({0, 6, 6}));
    put("k3", 3, sym({1, 5, 6}));
    put("l3", 3, sym({2, 5, 5}));
    put("i4", 4, sym({0, 5, 5, 6}));
    put("j4", 4, sym({0, 3, 6, 7}));
    put("k4", 4, sym({0, 2, 7, 7}));
    put("l4", 4, sym({1, 5, 5, 5}));
    put("m4", 4, sym({1, 3, 6, 6}));
    put("i5", 5, sym({0, 0, 6, 7, 7}));
    put("j5", 5, sym({0, 5, 5, 5, 5}));
    put("k5", 5, sym({0, 3, 3, 7, 7}));
    put("l5", 5, sym({1, 1, 6, 6, 6}));
    put("i6", 6, sym({0, 0, 3, 7, 7, 7}));
    put("i7", 7, sym({0, 0, 0, 7, 7, 7, 7}));
    return T;
}

// The two printed Shioda expressions in the octavic dihedral invariants.
inline std::pair<QElem, QElem> shioda_expr(const InvariantTuple& T) {
    auto v = [&](const char* l) { return T.at(l); };
    QElem S2 = Rat(1, 70) * (v("i1") * v("i1")) + Rat(2) * v("i2") + Rat(-1, 4) * v("j2") +
               Rat(1, 14) * v("k2") + Rat(-1, 28) * v("l2");
    QElem S3 = Rat(9, 34300) * v("i1").pow(3) + Rat(3, 35) * (v("i1") * v("i2")) +
               Rat(9, 560) * (v("i1") * v("j2")) + Rat(-33, 13720) * (v("i1") * v("k2")) +
               Rat(-27, 27440) * (v("i1") * v("l2")) + Rat(-3, 56) * v("i3") +
               Rat(9, 392) * v("j3") + Rat(-3, 784) * v("k3") + Rat(9, 5488) * v("l3");
    return {S2, S3};
}

}  // namespace hypdesc
