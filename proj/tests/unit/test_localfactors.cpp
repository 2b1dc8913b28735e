#include <doctest.h>

#include <cmath>
#include <set>

#include "ecgroups/arith.hpp"
#include "ecgroups/localfactors.hpp"

using namespace ecg;

namespace {

// |Aut(Z/m x Z/mk)| by listing generator images (x, y) that induce a bijection.
std::int64_t aut_order_brute(std::int64_t m, std::int64_t k) {
    const std::int64_t n1 = m, n2 = m * k;
    const std::int64_t size = n1 * n2;
    std::int64_t count = 0;
    for (std::int64_t x = 0; x < size; ++x) {
        const std::int64_t x1 = x / n2, x2 = x % n2;
        if ((m * x2) % n2 != 0) continue;  // m x = 0 (the first coordinate is automatic)
        for (std::int64_t y = 0; y < size; ++y) {
            const std::int64_t y1 = y / n2, y2 = y % n2;
            std::set<std::int64_t> image;
            for (std::int64_t a = 0; a < n1; ++a) {
                for (std::int64_t b = 0; b < n2; ++b) {
                    image.insert(((a * x1 + b * y1) % n1) * n2 + (a * x2 + b * y2) % n2);
                }
            }
            count += static_cast<std::int64_t>(image.size()) == size;
        }
    }
    return count;
}

Rational literal_generic_factor(std::int64_t order, std::int64_t ell) {
    const int s = kronecker(mod(order - 1, ell), ell);
    return Rational(1) - Rational(s * s * ell + 1, (ell - 1) * (ell - 1) * (ell + 1));
}

}  // namespace

TEST_SUITE("localfactors") {
    TEST_CASE("automorphism group orders") {
        CHECK(aut_order({2, 1}) == 6);
        CHECK(aut_order({2, 2}) == 8);
        for (std::int64_t k = 1; k <= 200; ++k) CHECK(aut_order({1, k}) == euler_phi(k));
        for (std::int64_t m = 1; m <= 6; ++m) {
            for (std::int64_t k = 1; m * m * k <= 48; ++k) {
                CAPTURE(m);
                CAPTURE(k);
                REQUIRE(aut_order({m, k}) == aut_order_brute(m, k));
            }
        }
    }

    TEST_CASE("Euler factor examples") {
        // 3 does not divide N, N = 1 mod 3
        CHECK(k_of_group_factor({1, 4}, 3) == Rational(15, 16));
        // 3 divides neither N nor N - 1
        CHECK(k_of_group_factor({1, 2}, 3) == Rational(3, 4));
        CHECK(k_of_group_factor({2, 1}, 2) == Rational(3, 4));
        CHECK(k_of_group_factor({1, 6}, 3) == Rational(5, 6));
        CHECK(k_of_order_factor(4, 2) == Rational(3, 4));
        CHECK(k_of_order_factor(3, 3) == Rational(5, 6));
        CHECK(k_of_order_factor(1, 5) == Rational(95, 96));
    }

    TEST_CASE("generic factor matches the literal expression") {
        for (std::int64_t ell : primes_up_to(200)) {
            for (std::int64_t n = 1; n <= 300; ++n) {
                if (n % ell == 0) continue;
                REQUIRE(generic_euler_factor(n, ell) == literal_generic_factor(n, ell));
                REQUIRE(k_of_order_factor(n, ell) == generic_euler_factor(n, ell));
            }
        }
    }

    TEST_CASE("omitted factors lie in the tail bracket") {
        for (std::int64_t ell : primes_up_to(20000)) {
            if (ell < 3) continue;
            const double floor = std::exp(-4.0 / static_cast<double>(ell * ell));
            for (std::int64_t n : {std::int64_t{1}, std::int64_t{2}, ell + 1, ell + 2}) {
                const double f = generic_euler_factor(n, ell).to_double();
                REQUIRE(f <= 1.0);
                REQUIRE(f >= floor);
            }
        }
    }

    TEST_CASE("truncated products") {
        const auto t = k_of_group({3, 5}, 1000);
        CHECK(t.cutoff == 1000);
        CHECK(t.tail_bound == doctest::Approx(std::expm1(0.004)));
        CHECK(t.factor_at(3) == Rational(8, 9));
        CHECK_FALSE(t.factor_at(1009).has_value());
        // primes dividing N are kept above the cutoff
        const auto big = k_of_order(2 * 1009, 100);
        CHECK(big.factor_at(1009).has_value());
        CHECK_THROWS(k_of_order(5, 99));

        for (std::int64_t m = 1; m <= 4; ++m) {
            for (std::int64_t k = 1; k <= 30; ++k) {
                const auto coarse = k_of_group({m, k}, 1000);
                const auto fine = k_of_group({m, k}, 10000);
                REQUIRE(std::abs(fine.truncated_value - coarse.truncated_value) <=
                        coarse.truncated_value * coarse.tail_bound);
                REQUIRE(fine.truncated_value > 0.0);
                REQUIRE(fine.truncated_value < 3.0);
            }
        }
        for (std::int64_t n = 1; n <= 100; ++n) {
            const auto coarse = k_of_order(n, 1000);
            const auto fine = k_of_order(n, 10000);
            REQUIRE(std::abs(fine.truncated_value - coarse.truncated_value) <=
                    coarse.truncated_value * coarse.tail_bound);
        }
    }

    TEST_CASE("main terms") {
        const auto mt = conjectural_main_term({2, 1}, 1000);
        const double k = k_of_group({2, 1}, 1000).truncated_value;
        CHECK(mt.value == doctest::Approx(k * 16 / (6 * std::log(4.0))));
        CHECK(mt.tail_bound == doctest::Approx(mt.value * std::expm1(0.004)));
        const auto mn = conjectural_main_term_of_order(4, 1000);
        CHECK(mn.value == doctest::Approx(k_of_order(4, 1000).truncated_value * 16 / (2 * std::log(4.0))));
        CHECK_THROWS(conjectural_main_term({1, 1}));
        CHECK_THROWS(conjectural_main_term_of_order(1));
    }

    TEST_CASE("character sums T") {
        CHECK(t_of_n(1, 1, 1) == 1);
        CHECK(t_of_n(5, 1, 1) == -1);
        CHECK(t_of_n(25, 1, 3) == 20);
        CHECK(t_closed_form(5, 1, 1, 1) == -1);
        CHECK(t_closed_form(5, 2, 1, 3) == 20);
        CHECK(t_closed_form(3, 1, 1, 2) == -2);
        CHECK(t_of_n(3, 1, 2) == -2);
        CHECK_THROWS(t_closed_form(3, 1, 1, 3));
        CHECK_THROWS(t_closed_form(2, 1, 1, 1));
    }

    TEST_CASE("T closed form on all residue classes") {
        for (std::int64_t ell : {3, 5, 7}) {
            for (int w = 1; w <= 3; ++w) {
                const std::int64_t n = ipow(ell, w);
                for (std::int64_t m = 1; m <= ell * ell; ++m) {
                    for (std::int64_t k = 1; k <= ell * ell; ++k) {
                        if (k % ell == 0) continue;
                        CAPTURE(ell);
                        CAPTURE(w);
                        CAPTURE(m);
                        CAPTURE(k);
                        REQUIRE(t_of_n(n, m, k) == t_closed_form(ell, w, m, k));
                    }
                }
            }
        }
    }

    TEST_CASE("T is multiplicative and bounded by the divisor count") {
        for (std::int64_t m = 1; m <= 5; ++m) {
            for (std::int64_t k = 1; k <= 7; ++k) {
                for (std::int64_t a = 1; a <= 45; a += 2) {
                    for (std::int64_t b = 1; b <= 45; b += 2) {
                        if (gcd(a, b) != 1) continue;
                        REQUIRE(t_of_n(a * b, m, k) == t_of_n(a, m, k) * t_of_n(b, m, k));
                    }
                }
                for (std::int64_t a = 1; a <= 255; a += 2) {
                    if (!is_squarefree(a) || gcd(a, k) != 1) continue;
                    REQUIRE(std::abs(t_of_n(a, m, k)) <= num_divisors(a));
                }
            }
        }
    }

    TEST_CASE("odd-prime factors P") {
        CHECK(p_of_ell(3, 1, 1) == Rational(7, 8));
        CHECK(p_of_ell(5, 1, 1) == Rational(47, 48));
        CHECK(p_of_ell(3, 3, 1) == Rational(11, 12));
        for (std::int64_t ell : {3, 5, 7, 11, 13}) {
            for (std::int64_t m = 1; m <= 2 * ell; ++m) {
                for (std::int64_t k = 1; k <= 2 * ell; ++k) {
                    if (k % ell == 0) continue;
                    const double tol = 2 * std::pow(static_cast<double>(ell), -12);
                    REQUIRE(std::abs(p_of_ell(ell, m, k).to_double() - p_of_ell_series(ell, m, k, 12)) <= tol);
                }
            }
        }
    }

    TEST_CASE("2-adic counts") {
        CHECK(j_r_v(5, 0, 1, 1) == 4);
        CHECK(j_r_v(1, 0, 1, 1) == 0);
        CHECK(j_r_v(0, 0, 2, 2) == 2);
        CHECK_THROWS(j_r_v(2, 0, 1, 1));
        for (std::int64_t m = 2; m <= 16; m += 2) {
            for (std::int64_t k = 1; k <= 41; k += 8) {
                for (int v = 3; v <= 7; ++v) REQUIRE(j_of_v(v, m, k) == Rational(14, 3));
            }
        }
    }

    TEST_CASE("the 2-adic factor J") {
        CHECK(script_j(1, 1) == Rational(2, 3));
        CHECK(script_j(2, 2) == Rational(3, 2));
        CHECK(script_j(1, 2) == Rational(1));
        for (std::int64_t m = 1; m <= 16; ++m) {
            for (std::int64_t k = 1; k <= 16; ++k) {
                const Rational j = script_j_enumerated(m, k);
                REQUIRE(j == script_j_closed(m, k));
                REQUIRE((j == Rational(2, 3) || j == Rational(1) || j == Rational(3, 2)));
            }
        }
    }
}
