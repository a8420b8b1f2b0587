#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"

using namespace nakt;
using nakt::testing::Q;
using nakt::testing::random_scalar;

TEST_CASE("scalar arithmetic examples") {
    FieldSpec triv = FieldSpec::trivial();
    CHECK(scalar_add(triv, Scalar{Q("1/2")}, Scalar{Q("1/3")}) == Scalar{Q("5/6")});

    FieldSpec f5 = FieldSpec::finite(5);
    Scalar three = parse_scalar(f5, "3"), four = parse_scalar(f5, "4");
    CHECK(scalar_mul(f5, three, four) == parse_scalar(f5, "2"));

    FieldSpec lc = FieldSpec::levi_civita();
    Scalar a{Series{{Rational(0), Rational(1)}}};
    Scalar b{Series{{Q("1/2"), Rational(2)}}};
    CHECK(scalar_mul(lc, a, b) == Scalar{Series{{Q("1/2"), Rational(2)}}});
}

TEST_CASE("normal forms") {
    FieldSpec f5 = FieldSpec::finite(5);
    // residues reduced into [0, p)
    CHECK(scalar_from_int(f5, Int(-1)) == parse_scalar(f5, "4"));
    CHECK(scalar_from_int(f5, Int(12)) == parse_scalar(f5, "2"));

    FieldSpec lc = FieldSpec::levi_civita();
    Scalar a{Series{{Rational(0), Rational(1)}}};
    Scalar na = scalar_neg(lc, a);
    CHECK(scalar_is_zero(lc, scalar_add(lc, a, na)));  // no zero coefficients survive
}

TEST_CASE("field axioms hold under random sampling") {
    std::mt19937_64 rng(11);
    for (FieldSpec field : {FieldSpec::trivial(), FieldSpec::padic(2), FieldSpec::padic(3),
                            FieldSpec::finite(5), FieldSpec::levi_civita()}) {
        for (int it = 0; it < 60; ++it) {
            Scalar a = random_scalar(rng, field, true);
            Scalar b = random_scalar(rng, field, true);
            Scalar c = random_scalar(rng, field, true);
            // associativity/commutativity/distributivity
            CHECK(scalar_add(field, a, b) == scalar_add(field, b, a));
            CHECK(scalar_add(field, scalar_add(field, a, b), c) ==
                  scalar_add(field, a, scalar_add(field, b, c)));
            CHECK(scalar_mul(field, a, b) == scalar_mul(field, b, a));
            CHECK(scalar_mul(field, scalar_mul(field, a, b), c) ==
                  scalar_mul(field, a, scalar_mul(field, b, c)));
            CHECK(scalar_mul(field, a, scalar_add(field, b, c)) ==
                  scalar_add(field, scalar_mul(field, a, b), scalar_mul(field, a, c)));
            // additive inverse
            CHECK(scalar_is_zero(field, scalar_add(field, a, scalar_neg(field, a))));
            // multiplicative inverse (exact kinds; Levi-Civita inverses are truncated)
            if (!scalar_is_zero(field, a) && field.kind != FieldKind::levi_civita)
                CHECK(scalar_mul(field, a, scalar_inv(field, a)) == scalar_one(field));
        }
    }
}

TEST_CASE("abs examples") {
    CHECK(scalar_abs(FieldSpec::padic(2), Scalar{Q("12")}) == Magnitude::from_exponent(2));
    CHECK(scalar_abs(FieldSpec::padic(3), Scalar{Q("1/6")}) == Magnitude::from_exponent(-1));

    FieldSpec lc = FieldSpec::levi_civita();
    Scalar f{Series{{Q("-1/2"), Rational(3)}, {Rational(1), Rational(7)}}};
    CHECK(scalar_abs(lc, f) == Magnitude::from_exponent(Q("-1/2")));  // b^{+1/2}

    // trivial valuation: magnitudes in {0, 1}
    CHECK(scalar_abs(FieldSpec::trivial(), Scalar{Q("7/3")}) == Magnitude::from_exponent(0));
    CHECK(scalar_abs(FieldSpec::trivial(), Scalar{Q("0")}).zero);
}

TEST_CASE("abs is multiplicative and ultra-subadditive") {
    std::mt19937_64 rng(12);
    for (FieldSpec field : {FieldSpec::trivial(), FieldSpec::padic(2), FieldSpec::padic(3),
                            FieldSpec::finite(7), FieldSpec::levi_civita()}) {
        for (int it = 0; it < 100; ++it) {
            Scalar a = random_scalar(rng, field);
            Scalar b = random_scalar(rng, field);
            CHECK(scalar_abs(field, scalar_mul(field, a, b)) ==
                  mag_mul(scalar_abs(field, a), scalar_abs(field, b)));
            Magnitude ma = scalar_abs(field, a), mb = scalar_abs(field, b);
            Magnitude ms = scalar_abs(field, scalar_add(field, a, b));
            CHECK(mag_compare(ms, mag_max(ma, mb)) <= 0);
            if (mag_compare(ma, mb) != 0) CHECK(ms == mag_max(ma, mb));
        }
    }
}

TEST_CASE("cost comparison examples") {
    CHECK(cost_compare(Cost::make(3, 1, 2), Cost::make(1, -1, 2)) < 0);    // 1.5 < 2
    CHECK(cost_compare(Cost::make(2, Q("-3/2"), 2), Cost::make(1, -3, 2)) < 0);  // 32 < 64
    CHECK(cost_compare(Cost::of_zero(2), Cost::make(1, 100, 2)) < 0);
    CHECK(cost_compare(Cost::make(1, 0, 2), Cost::make(1, 0, 2)) == 0);
}

TEST_CASE("cost order is total and agrees with float evaluation") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> small(-6, 6);
    auto random_cost = [&] {
        if (small(rng) == 0) return Cost::of_zero(2);
        Rational m(std::abs(small(rng)) + 1, std::abs(small(rng)) + 1);
        Rational e(small(rng), std::abs(small(rng)) + 1);
        return Cost::make(m, e, 2);
    };
    for (int it = 0; it < 300; ++it) {
        Cost a = random_cost(), b = random_cost(), c = random_cost();
        int ab = cost_compare(a, b), ba = cost_compare(b, a);
        CHECK(ab == -ba);  // antisymmetry
        if (ab <= 0 && cost_compare(b, c) <= 0) CHECK(cost_compare(a, c) <= 0);  // transitivity
        double fa = a.approx(), fb = b.approx();
        if (std::abs(fa - fb) > 1e-9 * (1 + std::abs(fa) + std::abs(fb)))
            CHECK(((ab < 0) == (fa < fb)));  // sanity cross-check only
    }
}

TEST_CASE("cost scaling") {
    Cost c = Cost::make(3, 1, 2);
    Cost s = cost_scale(c, Q("2/3"));
    CHECK(cost_equal(s, Cost::make(2, 1, 2)));
    // multiplying by a magnitude adds exponents
    Cost m = cost_from(Magnitude::from_exponent(2), Q("3"), 2);
    CHECK(cost_equal(m, Cost::make(3, 2, 2)));
    CHECK(cost_from(Magnitude::of_zero(), Q("3"), 2).zero);
    CHECK(cost_from(Magnitude::from_exponent(1), Q("0"), 2).zero);
}

TEST_CASE("strong triangle check examples") {
    FieldSpec q2 = FieldSpec::padic(2);
    CHECK(strong_triangle_check(q2, Scalar{Q("1")}, Scalar{Q("1")}));
    CHECK(strong_triangle_check(q2, Scalar{Q("1")}, Scalar{Q("2")}));
    CHECK(strong_triangle_check(FieldSpec::trivial(), Scalar{Q("5")}, Scalar{Q("-5")}));
}

TEST_CASE("levi-civita monomial products") {
    std::mt19937_64 rng(14);
    FieldSpec lc = FieldSpec::levi_civita();
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), cf(1, 9);
    for (int it = 0; it < 100; ++it) {
        Rational e1(num(rng), den(rng)), e2(num(rng), den(rng));
        Scalar a{Series{{e1, Rational(cf(rng))}}};
        Scalar b{Series{{e2, Rational(cf(rng))}}};
        CHECK(scalar_abs(lc, scalar_mul(lc, a, b)) ==
              Magnitude::from_exponent(e1 + e2));  // valuation of product adds
    }
}

TEST_CASE("field spec constraints") {
    CHECK_THROWS_AS(FieldSpec::padic(4), input_error);   // p must be prime
    CHECK_THROWS_AS(FieldSpec::finite(6), input_error);
    CHECK(FieldSpec::padic(2).base == 2);  // b = p for p-adic
    CHECK_THROWS_AS(FieldSpec::levi_civita(Rational(1)), input_error);  // b > 1
}

TEST_CASE("scalar parsing round-trips") {
    for (FieldSpec field : {FieldSpec::trivial(), FieldSpec::padic(5), FieldSpec::finite(3),
                            FieldSpec::levi_civita()}) {
        std::mt19937_64 rng(15);
        for (int it = 0; it < 30; ++it) {
            Scalar a = random_scalar(rng, field, true);
            CHECK(parse_scalar(field, scalar_str(field, a)) == a);
        }
    }
}
