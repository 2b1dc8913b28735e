#pragma once

// Explicit constants of the census asymptotics and the local sums behind them:
// |Aut(G)|, the Euler products K(G) and K(N), the conjectural main term,
// the character sums T(n), the odd-prime factors P(ell), and the 2-adic
// quantities J_r(v), J(v) and J.

#include <cstdint>
#include <optional>
#include <vector>

#include "ecgroups/curves.hpp"
#include "ecgroups/rational.hpp"

namespace ecg {

inline constexpr std::int64_t kDefaultEulerCutoff = 100'000;

struct LocalFactor {
    std::int64_t ell = 0;
    Rational factor;
};

/// Exact Euler factors of a constant, truncated at `cutoff` for primes not
/// dividing N. Every factor at a prime dividing N is included regardless of
/// the cutoff.
///
/// Every omitted factor lies in [exp(-4/ell^2), 1], so the exact constant
/// lies in [truncated_value * exp(-4/cutoff), truncated_value]; tail_bound is
/// the relative bound exp(4/cutoff) - 1.
struct LocalFactorTable {
    std::int64_t order = 1;
    std::optional<GroupShape> shape;
    std::vector<LocalFactor> factors;  // ascending in ell
    double truncated_value = 1.0;
    std::int64_t cutoff = 0;
    double tail_bound = 0.0;

    /// Factor at ell, or nullopt if ell was not tabulated.
    std::optional<Rational> factor_at(std::int64_t ell) const;
};

/// |Aut(Z/m x Z/mk)|, exact.
std::int64_t aut_order(const GroupShape& shape);

/// The generic factor 1 - ((N-1/ell)^2 ell + 1) / ((ell-1)^2 (ell+1)) for ell not dividing N.
Rational generic_euler_factor(std::int64_t order, std::int64_t ell);

/// Euler factor of K(G) at any prime ell.
Rational k_of_group_factor(const GroupShape& shape, std::int64_t ell);
/// Euler factor of K(N) at any prime ell.
Rational k_of_order_factor(std::int64_t order, std::int64_t ell);

LocalFactorTable k_of_group(const GroupShape& shape, std::int64_t cutoff = kDefaultEulerCutoff);
LocalFactorTable k_of_order(std::int64_t order, std::int64_t cutoff = kDefaultEulerCutoff);

struct MainTerm {
    double value = 0.0;
    double tail_bound = 0.0;  // absolute
};

/// K(G) N^2 / (|Aut(G)| log N) with K truncated at `cutoff`. Requires N >= 2.
MainTerm conjectural_main_term(const GroupShape& shape, std::int64_t cutoff = kDefaultEulerCutoff);

/// K(N) N^2 / (phi(N) log N) with K truncated at `cutoff`. Requires N >= 2.
MainTerm conjectural_main_term_of_order(std::int64_t order, std::int64_t cutoff = kDefaultEulerCutoff);

/// T(n) = sum_{d mod n} ((d-4k)/n) #{j mod n : j^2 = d, gcd(N+1+jm, n) = 1}, N = m^2 k,
/// by enumeration.
std::int64_t t_of_n(std::int64_t n, std::int64_t m, std::int64_t k);

/// Closed form of T(ell^w) for a prime ell not dividing 2k.
std::int64_t t_closed_form(std::int64_t ell, int w, std::int64_t m, std::int64_t k);

/// P(ell) in closed form, ell prime not dividing 2k.
Rational p_of_ell(std::int64_t ell, std::int64_t m, std::int64_t k);

/// 1 + sum_{w <= terms} T(ell^w) / (ell^(2w-1) (ell - (m/ell)^2)), using the closed form of T.
double p_of_ell_series(std::int64_t ell, std::int64_t m, std::int64_t k, int terms);

/// |J_r(v)|: j in [1, 2^(2v+3)] with (j-mk)^2 = 4k + 4^v r (mod 2^(2v+3)) and jm even.
std::int64_t j_r_v(int r, int v, std::int64_t m, std::int64_t k);

/// J(v) = 2^(1-v0) sum_{r in {0,1,4,5}} |J_r(v)| / (2 - (r/2)), v0 = 2 (m odd) or 3 (m even).
Rational j_of_v(int v, std::int64_t m, std::int64_t k);

/// J = sum over v >= 0 with (2^v, k) = 1 of J(v) / 8^v, by enumerating J(v) until
/// it is constant and summing the constant tail geometrically.
Rational script_j_enumerated(std::int64_t m, std::int64_t k);

/// Closed form: 2/3 if mk odd, 3/2 if m and k even, 1 otherwise.
Rational script_j_closed(std::int64_t m, std::int64_t k);

/// Both routes; throws std::logic_error if they disagree.
Rational script_j(std::int64_t m, std::int64_t k);

}  // namespace ecg
