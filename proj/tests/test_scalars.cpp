#include <catch2/catch_amalgamated.hpp>

#include "elliptica/coeffpoly.hpp"
#include "test_support.hpp"

using namespace elliptica;

TEST_CASE("Rational is canonical") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0).str() == "0");
    CHECK(Rational(-4, 6).str() == "-2/3");
    CHECK(Rational::parse("32/48") == Rational(2, 3));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("CoeffPoly arithmetic examples") {
    const CoeffPoly b = CoeffPoly::symbol(Symbol::b);

    SECTION("additive inverse") {
        CHECK((b + (-b)).is_zero());
    }
    SECTION("hand expansion: (b-1)(2b-1) = 2b^2 - 3b + 1") {
        const CoeffPoly lhs = (b - CoeffPoly::one()) * (2 * b - CoeffPoly::one());
        const CoeffPoly rhs = 2 * (b * b) - 3 * b + CoeffPoly::one();
        CHECK(lhs == rhs);
    }
    SECTION("scale by 1/35") {
        const CoeffPoly p = 32 * (b * b) - 48 * b + CoeffPoly::constant(11);
        const CoeffPoly s = p.scale(Rational(1, 35));
        CHECK(s == Rational(32, 35) * (b * b) - Rational(48, 35) * b +
                       CoeffPoly::constant(Rational(11, 35)));
    }
}

TEST_CASE("CoeffPoly specialize") {
    const CoeffPoly b = CoeffPoly::symbol(Symbol::b);
    const CoeffPoly chi0 = CoeffPoly::symbol(Symbol::chi0);

    CHECK((Rational(4, 5) * (b - CoeffPoly::one()))
              .specialize({{Symbol::b, Rational(1)}})
              .is_zero());
    CHECK((chi0 * b).specialize({{Symbol::chi0, Rational(2)}}) == 2 * b);
    const CoeffPoly p = 32 * (b * b) - 48 * b + CoeffPoly::constant(11);
    CHECK(p.specialize({{Symbol::b, Rational(1)}}) == CoeffPoly::constant(-5));
}

TEST_CASE("CoeffPoly rendering is graded-lexicographic") {
    const CoeffPoly b = CoeffPoly::symbol(Symbol::b);
    const CoeffPoly chi0 = CoeffPoly::symbol(Symbol::chi0);
    CHECK(CoeffPoly::zero().str() == "0");
    CHECK((Rational(4, 5) * b - CoeffPoly::constant(Rational(4, 5))).str() == "(4/5)*b - 4/5");
    CHECK((2 * (b * b) - 3 * b + CoeffPoly::one()).str() == "2*b^2 - 3*b + 1");
    CHECK((b * chi0 + chi0 * chi0 + b * b).str() == "b^2 + b*chi0 + chi0^2");
    CHECK((-b + CoeffPoly::one()).str() == "-b + 1");
}

TEST_CASE("CoeffPoly ring axioms on randomized triples") {
    TestRng rng(0xe11a57u);
    for (int iter = 0; iter < 60; ++iter) {
        const CoeffPoly p = random_poly(rng);
        const CoeffPoly q = random_poly(rng);
        const CoeffPoly r = random_poly(rng);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * q == q * p);
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("specialize commutes with arithmetic") {
    TestRng rng(0x5eedu);
    for (int iter = 0; iter < 60; ++iter) {
        const CoeffPoly p = random_poly(rng);
        const CoeffPoly q = random_poly(rng);
        std::map<Symbol, Rational> bind;
        for (int i = 0; i < kSymbolCount; ++i) {
            if (rng.below(2) == 0) bind[static_cast<Symbol>(i)] = rng.small_rational();
        }
        CHECK((p * q).specialize(bind) == p.specialize(bind) * q.specialize(bind));
        CHECK((p + q).specialize(bind) == p.specialize(bind) + q.specialize(bind));
    }
}
