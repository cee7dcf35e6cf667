#include <catch2/catch_amalgamated.hpp>

#include "hypdesc/normsolve.hpp"
#include "testutil.hpp"

using namespace hypdesc;

TEST_CASE("rationals parse and stay reduced") {
    CHECK(parse_rat("6/4") == Rat(3, 2));
    CHECK(parse_rat("-6/4") == Rat(-3, 2));
    CHECK(rat_str(parse_rat("0/7")) == "0");
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
}

TEST_CASE("is_square finds exact roots") {
    CHECK(*is_square(Rat(9, 4)) == Rat(3, 2));
    CHECK(!is_square(Rat(2)));
    // 289/(2^13 3^2): numerator square, denominator class 2
    Rat q(289, Int(8192) * 9);
    CHECK(!is_square(q));
    CHECK(squarefree_core_rat(q) == 2);
}

TEST_CASE("squarefree cores") {
    CHECK(squarefree_core(Int(12)) == 3);
    CHECK(squarefree_core(Int(-18)) == -2);
    CHECK(squarefree_core(Int(1)) == 1);
    CHECK(squarefree_core_rat(Rat(144, 13)) == 13);
}

TEST_CASE("tower construction reduces discs and rejects squares") {
    QuadTower t = QuadTower::rationals().extend(12);
    CHECK(t.disc(0) == 3);
    CHECK_THROWS_AS(QuadTower::rationals().extend(4), std::invalid_argument);
    CHECK_THROWS_AS(QuadTower::rationals().extend(0), std::invalid_argument);
    QuadTower t2 = t.extend(2);
    CHECK(t2.level() == 2);
    CHECK_THROWS_AS(t.extend(3), std::invalid_argument);   // already a square there
    CHECK_THROWS_AS(t.extend(27), std::invalid_argument);  // core 3 again
}

TEST_CASE("conjugation golden values") {
    QElem x = quad(2, 3, 2);  // 3 + 2 sqrt 2
    CHECK(conj(x) == quad(2, 3, -2));
    CHECK(conj(conj(x)) == x);

    QElem s5 = QElem::sqrt_gen(QuadTower::rationals().extend(5), 0);
    CHECK(conj(s5) == -s5);

    QElem lam = quad(3, Rat(-60, 13), Rat(-24, 13));  // the Weil lambda of the d=3 family
    CHECK(conj(lam) == quad(3, Rat(-60, 13), Rat(24, 13)));
    CHECK_THROWS_AS(conj(QElem(Rat(1))), std::domain_error);
}

TEST_CASE("field norms") {
    QElem lam = quad(3, Rat(-60, 13), Rat(-24, 13));
    CHECK(field_norm(lam).to_rational() == Rat(144, 13));
    CHECK(field_norm(quad(2, 1, 1)).to_rational() == Rat(-1));  // 1 + sqrt 2
    QuadTower t = QuadTower::rationals().extend(7);
    QElem q = QElem::from_rat(t, Rat(5, 3));
    CHECK(field_norm(q).to_rational() == Rat(25, 9));
}

TEST_CASE("level-2 arithmetic round trips") {
    QuadTower t = QuadTower::rationals().extend(2).extend(3);
    testing::Rng rng;
    for (int i = 0; i < 50; ++i) {
        QElem a = rng.nonzero_elem(t), b = rng.nonzero_elem(t);
        CHECK((a * b) / b == a);
        CHECK(a + (-a) == QElem::zero(t));
        CHECK(conj(conj(a)) == a);
        CHECK(field_norm(a) == field_norm(conj(a)));
        CHECK(a.pow(3) == a * a * a);
    }
}

TEST_CASE("hilbert symbol golden values") {
    CHECK(hilbert_symbol(Rat(-1), Rat(-1), Int(2)) == -1);
    CHECK(hilbert_symbol(Rat(2), Rat(3), Int(3)) == -1);
    testing::Rng rng;
    for (int i = 0; i < 50; ++i) {
        Rat a = rng.nonzero_rational();
        Int p = Int(std::vector<long>{2, 3, 5, 7, 11}[rng.integer(0, 4)]);
        CHECK(hilbert_symbol(a, Rat(1), p) == 1);
        CHECK(hilbert_symbol(a, Rat(1), kRealPlace) == 1);
    }
}

TEST_CASE("hilbert symbol brute-force oracles") {
    // (-1, -1, 2) = -1: x^2 + y^2 + z^2 = 0 has no primitive solution mod 8
    bool solvable = false;
    for (int x = 0; x < 8 && !solvable; ++x)
        for (int y = 0; y < 8 && !solvable; ++y)
            for (int z = 0; z < 8 && !solvable; ++z)
                if ((x % 2 || y % 2 || z % 2) && (x * x + y * y + z * z) % 8 == 0)
                    solvable = true;
    CHECK_FALSE(solvable);

    // (2, 3, 3): 2 is a non-residue mod 3; exhaustive z^2 = 2 mod 81 fails
    bool residue = false;
    for (int z = 0; z < 81; ++z)
        if ((z * z) % 81 == 2 % 81) residue = true;
    CHECK_FALSE(residue);
}

TEST_CASE("unramified odd places are trivial") {
    testing::Rng rng;
    for (int i = 0; i < 100; ++i) {
        long a = rng.integer(1, 40), b = rng.integer(1, 40);
        for (long p : {41L, 43L, 47L})
            CHECK(hilbert_symbol(Rat(a), Rat(b), Int(p)) == 1);
    }
}

TEST_CASE("is_norm golden values") {
    CHECK(is_norm(Rat(144, 13), Int(3)));
    CHECK_FALSE(is_norm(Rat(-1, 96), Int(2)));
    testing::Rng rng;
    for (int i = 0; i < 20; ++i) CHECK(is_norm(Rat(1), rng.disc()));
}

TEST_CASE("is_norm is a norm-class invariant") {
    testing::Rng rng;
    for (int i = 0; i < 200; ++i) {
        Int d = rng.disc();
        Rat r = rng.nonzero_rational();
        QuadTower L = QuadTower::rationals().extend(d);
        QElem t = rng.nonzero_elem(L);
        Rat nrm = field_norm(t).to_rational();
        if (is_zero(nrm)) continue;
        CHECK(is_norm(r * nrm, d) == is_norm(r, d));
    }
}

TEST_CASE("solve_norm golden and postcondition") {
    QElem l1 = *solve_norm(Rat(13), Int(3));
    CHECK(field_norm(l1).to_rational() == Rat(13));

    QElem l2 = *solve_norm(Rat(144, 13), Int(3));
    CHECK(field_norm(l2).to_rational() == Rat(144, 13));

    CHECK_FALSE(solve_norm(Rat(-1, 96), Int(2)));

    // rationally but not integrally representable
    QElem l3 = *solve_norm(Rat(-1), Int(34));
    CHECK(field_norm(l3).to_rational() == Rat(-1));

    testing::Rng rng;
    int solved = 0;
    for (int i = 0; i < 200; ++i) {
        Int d = rng.disc();
        Rat r = rng.nonzero_rational(6);
        auto lam = solve_norm(r, d);
        CHECK(lam.has_value() == is_norm(r, d));
        if (lam) {
            ++solved;
            CHECK(field_norm(*lam).to_rational() == r);
        }
    }
    CHECK(solved > 10);
}

TEST_CASE("hilbert 90") {
    QuadTower L2 = QuadTower::rationals().extend(2);
    CHECK(hilbert90(QElem::one(L2)) == QElem::from_rat(L2, Rat(2)));
    QElem minus1 = QElem::from_rat(L2, Rat(-1));
    CHECK(hilbert90(minus1) == QElem::sqrt_gen(L2, 0));

    QElem c = quad(2, 3, 2) / quad(2, 3, -2);
    QElem mu = hilbert90(c);
    CHECK(mu.conj() / mu == c);

    testing::Rng rng;
    for (int i = 0; i < 100; ++i) {
        QuadTower L = QuadTower::rationals().extend(rng.disc());
        QElem w = rng.nonzero_elem(L);
        QElem cc = w.conj() / w;
        QElem m = hilbert90(cc);
        CHECK(m.conj() / m == cc);
    }
    CHECK_THROWS_AS(hilbert90(quad(2, 2, 0)), std::domain_error);
}
