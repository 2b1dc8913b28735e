#include <doctest.h>

#include "ecgroups/arith.hpp"
#include "ecgroups/curves.hpp"
#include "ecgroups/oracle.hpp"

using namespace ecg;

namespace {

// #E(F_p) for y^2 = x^3 + ax + b from the quadratic character.
std::int64_t count_by_character(int p, int a, int b) {
    std::int64_t n = p + 1;
    for (std::int64_t x = 0; x < p; ++x) n += kronecker((x * x * x + a * x + b) % p, p);
    return n;
}

ExactCount entry(const CurveTally& t, GroupShape s) {
    auto it = t.entries.find(s);
    return it == t.entries.end() ? ExactCount{} : it->second;
}

}  // namespace

TEST_SUITE("oracle") {
    TEST_CASE("group law on a small curve") {
        const WeierstrassCurve e(5, 0, 0, 0, 4, 0);  // y^2 = x^3 - x
        CHECK_FALSE(e.is_singular());
        const auto pts = e.affine_points();
        CHECK(pts.size() == 7);
        CHECK(e.group_shape() == GroupShape{2, 2});
        const WeierstrassCurve::Point o;
        for (const auto& p : pts) {
            CHECK(e.contains(p));
            CHECK(e.add(p, o) == p);
            CHECK(e.add(p, e.negate(p)) == o);
            CHECK(e.multiply(8, p) == o);
            for (const auto& q : pts) {
                CHECK(e.add(p, q) == e.add(q, p));
                for (const auto& r : pts) CHECK(e.add(e.add(p, q), r) == e.add(p, e.add(q, r)));
            }
        }
    }

    TEST_CASE("singular equations are flagged") {
        CHECK(WeierstrassCurve(7, 0, 0, 0, 0, 0).is_singular());
        CHECK(WeierstrassCurve(2, 0, 0, 0, 0, 0).is_singular());
        CHECK_FALSE(WeierstrassCurve(2, 0, 0, 1, 0, 0).is_singular());
    }

    TEST_CASE("point counts match the character sum") {
        for (int p : {5, 7, 11, 13, 17}) {
            for (int a = 0; a < p; ++a) {
                for (int b = 0; b < p; ++b) {
                    const WeierstrassCurve e(p, 0, 0, 0, a, b);
                    if (e.is_singular()) continue;
                    const auto shape = e.group_shape();
                    REQUIRE(shape.order() == count_by_character(p, a, b));
                    REQUIRE(static_cast<std::int64_t>(e.affine_points().size()) + 1 == shape.order());
                }
            }
        }
    }

    TEST_CASE("tally examples") {
        const auto t2 = brute_force_tally(2);
        CHECK(entry(t2, {1, 1}) == Rational(1, 4));
        const auto t5 = brute_force_tally(5);
        CHECK(entry(t5, {1, 6}) == Rational(1));
        CHECK(entry(t5, {1, 6}) == kronecker_class_number(Discriminant(-20)));
        const auto t7 = brute_force_tally(7);
        CHECK(entry(t7, {2, 1}) == Rational(1, 6));
    }

    TEST_CASE("tally mass and the Kronecker-Hurwitz total") {
        for (std::int64_t p : primes_up_to(31)) {
            const auto t = brute_force_tally(p);
            CAPTURE(p);
            REQUIRE(t.total == t.expected_mass());
            // every class counted once with weight 1/|Aut|: the total is p
            REQUIRE(t.total == Rational(p));
            if (p > 3) {
                REQUIRE(t.equations == p * p);
                REQUIRE(t.orbit_size == p - 1);
            } else {
                REQUIRE(t.equations == p * p * p * p * p);
            }
        }
    }

    TEST_CASE("tally matches the class number formula") {
        for (std::int64_t p : primes_up_to(23)) {
            const auto t = brute_force_tally(p);
            for (std::int64_t n = 1; n <= 2 * (p + 1); ++n) {
                if (!in_hasse_window(n, p)) continue;
                for (const auto& s : shapes_of_order(n)) {
                    CAPTURE(p);
                    CAPTURE(s.m);
                    CAPTURE(s.k);
                    REQUIRE(entry(t, s) == m_p_of_group(s, p));
                }
            }
        }
    }

    TEST_CASE("parallel and serial tallies agree") {
        for (std::int64_t p : primes_up_to(13)) {
            const auto a = brute_force_tally(p);
            const auto b = brute_force_tally_serial(p);
            CHECK(a.entries == b.entries);
            CHECK(a.total == b.total);
            CHECK(a.singular == b.singular);
        }
    }

    TEST_CASE("argument checks") {
        CHECK_THROWS(brute_force_tally(4));
        CHECK_THROWS(brute_force_tally(67));
        CHECK_NOTHROW(brute_force_tally(67, 67));
    }
}
