#include <doctest.h>

#include <limits>
#include <stdexcept>

#include "ecgroups/rational.hpp"

using ecg::Rational;

TEST_SUITE("rational") {
    TEST_CASE("normal form") {
        CHECK(Rational(2, 4) == Rational(1, 2));
        CHECK(Rational(3, -6) == Rational(-1, 2));
        CHECK(Rational(-3, -6).den() == 2);
        CHECK(Rational(0, 5) == Rational(0));
        CHECK(Rational(0, -7).den() == 1);
        CHECK_THROWS(Rational(1, 0));
    }

    TEST_CASE("printing") {
        CHECK(Rational(5, 12).str() == "5/12");
        CHECK(Rational(-7, 12).str() == "-7/12");
        CHECK(Rational(4, 2).str() == "2");
        CHECK(ecg::to_string(static_cast<ecg::i128>(-1234567890123456789LL) * 100) == "-123456789012345678900");
    }

    TEST_CASE("field operations") {
        const Rational a(1, 4), b(1, 6);
        CHECK(a + b == Rational(5, 12));
        CHECK(a - b == Rational(1, 12));
        CHECK(a * b == Rational(1, 24));
        CHECK(a / b == Rational(3, 2));
        CHECK(-a == Rational(-1, 4));
        CHECK_THROWS(a / Rational(0));
        CHECK(Rational(1, 3) < Rational(1, 2));
        CHECK(Rational(-1, 2) < Rational(1, 3));
    }

    TEST_CASE("wide intermediates and overflow") {
        const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 3;
        // cross terms overflow 64 bits but the reduced result fits
        CHECK(Rational(big, 7) * Rational(7, big) == Rational(1));
        CHECK_THROWS_AS(Rational(big) * Rational(big), std::overflow_error);
        CHECK(Rational::from_wide(static_cast<ecg::i128>(big) * 6, 6) == Rational(big));
    }
}
