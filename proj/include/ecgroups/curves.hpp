#pragma once

// Census of elliptic curves over prime fields by group of points.
//
// For G = Z/m x Z/mk (order N = m^2 k) the weighted count of curves over F_p
// with E(F_p) = G is H_k(d(p)), where d(p) = ((p-1)/m - mk)^2 - 4k, whenever
// p lies strictly inside the Hasse window of N and p = 1 (mod m); it is zero
// otherwise. M(G) and M(N) sum these over all primes.

#include <compare>
#include <cstdint>
#include <vector>

#include "ecgroups/quadforms.hpp"
#include "ecgroups/rational.hpp"

namespace ecg {

/// The group Z/mZ x Z/mkZ.
struct GroupShape {
    std::int64_t m = 1;
    std::int64_t k = 1;

    std::int64_t order() const { return m * m * k; }
    /// Throws std::invalid_argument unless m, k >= 1 and m^2 k fits comfortably.
    void validate() const;

    friend auto operator<=>(const GroupShape&, const GroupShape&) = default;
};

struct HasseWindow {
    std::int64_t order = 1;
    std::vector<std::int64_t> primes;  // (p - 1 - N)^2 < 4N, ascending
};

struct CensusLimits {
    std::int64_t max_order = std::int64_t{1} << 40;
};

/// Strict integer test (p - 1 - N)^2 < 4N.
bool in_hasse_window(std::int64_t order, std::int64_t p);

HasseWindow hasse_window(std::int64_t order);

/// d_{m,k}(p). Throws unless p = 1 (mod m) and p is in the window of m^2 k.
Discriminant trace_discriminant(const GroupShape& shape, std::int64_t p);

/// M_p(G_{m,k}) for prime p.
ExactCount m_p_of_group(const GroupShape& shape, std::int64_t p);

/// M(G): sum of M_p(G) over the window primes p = 1 (mod m); per-prime terms in parallel.
ExactCount m_of_group(const GroupShape& shape, const CensusLimits& limits = {});
ExactCount m_of_group_serial(const GroupShape& shape, const CensusLimits& limits = {});

struct PrimeTerm {
    std::int64_t p = 0;
    std::int64_t discriminant = 0;
    ExactCount value;
};

/// The nonzero-eligible primes of M(G) with their discriminants and terms, ascending in p.
std::vector<PrimeTerm> m_of_group_terms(const GroupShape& shape, const CensusLimits& limits = {});

/// M_p(N; n): weighted curves with N points and full rational n-torsion. Requires n^2 | N.
ExactCount m_p_of_order(std::int64_t order, std::int64_t n, std::int64_t p);

/// Sum over window primes of M_p(N; 1).
ExactCount m_of_order_by_primes(std::int64_t order, const CensusLimits& limits = {});
/// Sum over m^2 | N of M(G_{m, N/m^2}).
ExactCount m_of_order_by_groups(std::int64_t order, const CensusLimits& limits = {});

/// M(N) by both routes; throws std::logic_error if they differ.
ExactCount m_of_order(std::int64_t order, const CensusLimits& limits = {});

/// The groups G_{m,k} of order N (m^2 | N), ascending in m.
std::vector<GroupShape> shapes_of_order(std::int64_t order);

/// Right-hand side of M_p(G) = sum_{r^2 | k} mu(r) M_p(N; rm).
ExactCount inclusion_exclusion_check(const GroupShape& shape, std::int64_t p);

/// (phi(m) log(2N) / N) * sum over window primes p = 1 (mod m) of sqrt(4N - (p-1-N)^2).
double delta_statistic(const GroupShape& shape);

/// (log(2N) / N) * sum over all window primes of sqrt(4N - (p-1-N)^2).
double eta_statistic(std::int64_t order);

/// `count` shapes drawn from std::mt19937_64(seed): for each, m uniform in
/// [1, m_max] and then k uniform in [k_lo, k_hi].
std::vector<GroupShape> sample_shapes(std::uint64_t seed, int count, std::int64_t m_max, std::int64_t k_lo,
                                      std::int64_t k_hi);

}  // namespace ecg
