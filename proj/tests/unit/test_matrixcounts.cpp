#include <doctest.h>

#include "ecgroups/arith.hpp"
#include "ecgroups/localfactors.hpp"
#include "ecgroups/matrixcounts.hpp"

using namespace ecg;

namespace {

// Direct scan of GL_2(Z/ell^e) for #C_{N,n}(ell^e).
std::int64_t count_c_scan(std::int64_t order, std::int64_t n, std::int64_t ell, int e) {
    const std::int64_t q = ipow(ell, e);
    const std::int64_t level = ipow(ell, std::min(valuation(ell, n), e));
    const std::int64_t target = mod(order, q);
    std::int64_t count = 0;
    for (std::int64_t a = 0; a < q; ++a) {
        if ((a - 1) % level) continue;
        for (std::int64_t b = 0; b < q; b += level) {
            for (std::int64_t c = 0; c < q; c += level) {
                for (std::int64_t d = 0; d < q; ++d) {
                    if ((d - 1) % level) continue;
                    const std::int64_t det = mod(a * d - b * c, q);
                    if (det % ell == 0) continue;
                    count += mod(det + 1 - a - d, q) == target;
                }
            }
        }
    }
    return count;
}

std::int64_t gl2_scan(std::int64_t ell, int e) {
    const std::int64_t q = ipow(ell, e);
    std::int64_t count = 0;
    for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < q; ++b)
            for (std::int64_t c = 0; c < q; ++c)
                for (std::int64_t d = 0; d < q; ++d) count += mod(a * d - b * c, q) % ell != 0;
    return count;
}

std::int64_t det_scan(std::int64_t target, std::int64_t ell, int e) {
    const std::int64_t q = ipow(ell, e);
    std::int64_t count = 0;
    for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < q; ++b)
            for (std::int64_t c = 0; c < q; ++c)
                for (std::int64_t d = 0; d < q; ++d) count += mod(a * d - b * c, q) == mod(target, q);
    return count;
}

}  // namespace

TEST_SUITE("matrixcounts") {
    TEST_CASE("GL_2 orders") {
        CHECK(gl2_order(2, 1) == 6);
        CHECK(gl2_order(3, 1) == 48);
        CHECK(gl2_order(2, 2) == 96);
        for (auto [ell, e] : std::vector<std::pair<std::int64_t, int>>{
                 {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 1}, {3, 4}}) {
            CAPTURE(ell);
            CAPTURE(e);
            REQUIRE(gl2_order(ell, e) == gl2_scan(ell, e));
        }
        CHECK_THROWS(gl2_order(4, 1));
    }

    TEST_CASE("count examples") {
        CHECK(count_c_brute({1, 1, 3, 1}) == 15);
        CHECK(count_c_brute({2, 1, 2, 1}) == 4);
        CHECK(count_c_brute({4, 2, 2, 3}) == count_c_closed({4, 2, 2, 3}));
        CHECK(count_c_closed({1, 1, 3, 2}) == 405);
        CHECK(count_c_closed({2, 1, 2, 2}) == 24);
        CHECK(count_c_closed({4, 4, 2, 3}) == 0);
        CHECK_THROWS(count_c_closed({4, 1, 2, 2}));  // e must exceed nu_2(4)
        CHECK_THROWS((MatrixCountQuery{0, 1, 2, 1}.validate()));
        CHECK_THROWS((MatrixCountQuery{1, 1, 6, 1}.validate()));
    }

    TEST_CASE("closed counts match a direct scan") {
        for (std::int64_t ell : {2, 3}) {
            for (int e = 1; e <= 3; ++e) {
                for (std::int64_t order = 1; order <= 36; ++order) {
                    if (valuation(ell, order) >= e) continue;
                    for (std::int64_t n = 1; n * n <= order; ++n) {
                        if (order % (n * n)) continue;
                        CAPTURE(ell);
                        CAPTURE(e);
                        CAPTURE(order);
                        CAPTURE(n);
                        REQUIRE(count_c_closed({order, n, ell, e}) == count_c_scan(order, n, ell, e));
                    }
                }
            }
        }
        // n^2 need not divide N for the closed form
        for (std::int64_t order = 1; order <= 20; ++order) {
            for (std::int64_t n : {2, 4, 8}) {
                const int e = valuation(2, order) + 1;
                REQUIRE(count_c_closed({order, n, 2, e}) == count_c_scan(order, n, 2, e));
            }
        }
    }

    TEST_CASE("fibres partition GL_2") {
        for (std::int64_t ell : {2, 3, 5}) {
            for (int e = 1; ipow(ell, e) <= 27; ++e) {
                std::int64_t total = 0;
                for (std::int64_t c : fiber_histogram(ell, e, 0)) total += c;
                REQUIRE(total == gl2_order(ell, e));
                i128 closed_total = 0;
                for (std::int64_t r = 0; r < ipow(ell, e); ++r) {
                    // residues with nu_ell(r) < e have closed forms; r = 0 is read from the scan
                    if (r == 0) closed_total += count_c_scan(0, 1, ell, e);
                    else if (valuation(ell, r) < e) closed_total += count_c_closed({r, 1, ell, e});
                }
                REQUIRE(closed_total == gl2_order(ell, e));
            }
        }
    }

    TEST_CASE("parallel and serial histograms agree") {
        for (std::int64_t ell : {2, 3}) {
            for (int e = 1; e <= 3; ++e) {
                for (int u = 0; u <= e; ++u) REQUIRE(fiber_histogram(ell, e, u) == fiber_histogram_serial(ell, e, u));
            }
        }
    }

    TEST_CASE("enumeration budget") {
        CHECK_THROWS_AS(fiber_histogram(3, 5, 0), std::invalid_argument);
        CHECK_THROWS_AS(fiber_histogram(2, 3, 0, 100), std::invalid_argument);
        CHECK_NOTHROW(fiber_histogram(2, 4, 0, 65536));
    }

    TEST_CASE("determinant fibres") {
        CHECK(det_count_closed(1, 2, 1) == 6);
        CHECK(det_count_closed(2, 2, 1) == 10);
        CHECK(det_count_closed(4, 2, 3) == 672);
        CHECK_THROWS(det_count_closed(8, 2, 2));
        for (std::int64_t ell : {2, 3, 5}) {
            for (int e = 1; ipow(ell, e) <= 27; ++e) {
                const auto hist = det_histogram(ell, e);
                const std::int64_t q = ipow(ell, e);
                for (std::int64_t M = 1; M <= 3 * q; ++M) {
                    if (valuation(ell, M) > e) continue;
                    CAPTURE(M);
                    REQUIRE(det_count_closed(M, ell, e) == hist[static_cast<std::size_t>(M % q)]);
                    REQUIRE(det_count_recurrence(M, ell, e) == hist[static_cast<std::size_t>(M % q)]);
                }
                REQUIRE(hist[1] == det_scan(1, ell, e));
            }
        }
    }

    TEST_CASE("densities") {
        CHECK(euler_density(2, 1, 3) == Rational(3, 4));
        CHECK(euler_density(2, 1, 2) == Rational(1));
        CHECK(euler_density(4, 2, 2) == Rational(1, 2));
        // constant beyond the stabilization level
        for (std::int64_t order = 1; order <= 36; ++order) {
            for (std::int64_t ell : {2, 3, 5}) {
                const int v = valuation(ell, order);
                const Rational d = euler_density(order, 1, ell);
                for (int e = v + 1; e <= v + 4; ++e) {
                    REQUIRE(Rational::from_wide(ipow_wide(ell, e) * count_c_closed({order, 1, ell, e}),
                                                gl2_order(ell, e)) == d);
                }
            }
        }
    }

    TEST_CASE("K(N) interpretation") {
        const auto r1 = verify_kn_interpretation(1, 13);
        CHECK(r1.mismatches() == 0);
        CHECK(r1.rows.size() == 6);
        CHECK(r1.rows[2].ell == 5);
        CHECK(r1.rows[2].euler_side == Rational(95, 96));
        CHECK(r1.rows[2].density_side == Rational(95, 96));
        const auto r4 = verify_kn_interpretation(4, 13);
        CHECK(r4.rows[0].euler_side == Rational(3, 2));
        CHECK(r4.rows[0].density_side == Rational(3, 2));
        for (std::int64_t order = 1; order <= 36; ++order) REQUIRE(verify_kn_interpretation(order, 13).mismatches() == 0);
    }

    TEST_CASE("K(G) interpretation") {
        const auto r = verify_kg_interpretation({2, 1}, 13);
        CHECK(r.rows[0].density_side == Rational(1, 2));
        CHECK(r.rows[0].euler_side == Rational(1, 2));
        CHECK(verify_kg_interpretation({1, 2}, 13).rows[2].match);
        for (std::int64_t m = 1; m <= 4; ++m) {
            for (std::int64_t k = 1; k <= 9; ++k) {
                CAPTURE(m);
                CAPTURE(k);
                REQUIRE(verify_kg_interpretation({m, k}, 13).mismatches() == 0);
            }
        }
    }

    TEST_CASE("automorphism ratio factors multiply out") {
        for (std::int64_t m = 1; m <= 12; ++m) {
            for (std::int64_t k = 1; k <= 12; ++k) {
                const GroupShape s{m, k};
                Rational product(1);
                for (std::int64_t ell : primes_up_to(150)) product *= aut_ratio_local_factor(s, ell);
                REQUIRE(product == Rational(aut_order(s), s.order()));
            }
        }
    }
}
