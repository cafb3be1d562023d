#include <doctest.h>

#include "polyflow/errors.hpp"
#include "polyflow/rational.hpp"

using namespace polyflow;

TEST_CASE("rational parsing accepts fractions, integers and decimals") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("+7") == Rational(7));
    CHECK(parse_rational("0") == Rational(0));
    CHECK(parse_rational(" 42 ") == Rational(42));
    // decimals convert exactly, never through binary floating point
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5") == Rational(-3, 2));
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("2.") == Rational(2));
    CHECK(parse_rational("2/4") == Rational(1, 2));  // canonicalized
}

TEST_CASE("rational parsing rejects junk") {
    CHECK_THROWS_AS(parse_rational(""), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("1/-2"), Error);
    CHECK_THROWS_AS(parse_rational("1.2.3"), Error);
    CHECK_THROWS_AS(parse_rational("-"), Error);
}

TEST_CASE("canonical rendering round-trips") {
    for (const char* text : {"3/4", "-3/4", "7", "0", "-12/7"}) {
        const Rational q = parse_rational(text);
        CHECK(to_string(q) == text);
        CHECK(parse_rational(to_string(q)) == q);
    }
    CHECK(to_string(parse_rational("0.25")) == "1/4");
}

TEST_CASE("canonical form invariants") {
    const Rational q = Rational(6) / Rational(-8);
    CHECK(numerator(q) == -3);
    CHECK(denominator(q) == 4);  // denominator kept positive, gcd reduced
    CHECK(q == Rational(-3, 4));
    CHECK(parse_rational("007") == Rational(7));
    CHECK(parse_rational("0.050") == Rational(1, 20));
}

TEST_CASE("ceil helpers") {
    CHECK(rational_ceil(Rational(7, 2)) == 4);
    CHECK(rational_ceil(Rational(-7, 2)) == -3);
    CHECK(rational_ceil(Rational(4)) == 4);
    CHECK(ceil_sqrt(Rational(16)) == 4);
    CHECK(ceil_sqrt(Rational(17)) == 5);
    CHECK(ceil_sqrt(Rational(1, 4)) == 1);
    CHECK(ceil_sqrt(Rational(0)) == 0);
}

TEST_CASE("double conversion is exact for binary rationals") {
    CHECK(rational_from_double(0.5) == Rational(1, 2));
    CHECK(rational_from_double(-0.75) == Rational(-3, 4));
    CHECK(to_double(Rational(1, 2)) == 0.5);
    CHECK(to_decimal_string(Rational(1)) == "1");
    CHECK(to_decimal_string(Rational(1, 3)) == "0.33333333333333331");
}

TEST_CASE("sampler is deterministic and respects bounds") {
    Sampler a(7);
    Sampler b(7);
    for (int i = 0; i < 100; ++i) {
        const std::int64_t x = a.int_in(-5, 5);
        CHECK(x == b.int_in(-5, 5));
        CHECK(x >= -5);
        CHECK(x <= 5);
    }
    Sampler c(1);
    for (int i = 0; i < 50; ++i) {
        const Rational q = c.rational_in(-1, 1);
        CHECK(q >= -1);
        CHECK(q <= 1);
    }
    Sampler d(3);
    const RVector p = d.point_in_box(3, 100);
    CHECK(p.size() == 3);
}
