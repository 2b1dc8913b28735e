#include "ecgroups/curves.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "ecgroups/arith.hpp"
#include "ecgroups/parallel.hpp"

namespace ecg {

namespace {

constexpr std::int64_t kMaxRepresentableOrder = std::int64_t{1} << 62;

i128 window_gap(std::int64_t order, std::int64_t p) {
    const i128 t = static_cast<i128>(p) - 1 - order;
    return 4 * static_cast<i128>(order) - t * t;
}

void check_limits(std::int64_t order, const CensusLimits& limits) {
    if (order > limits.max_order) {
        throw std::out_of_range("group order " + std::to_string(order) +
                                " exceeds the census bound " + std::to_string(limits.max_order));
    }
}

std::vector<std::int64_t> eligible_primes(const GroupShape& shape) {
    std::vector<std::int64_t> out;
    for (std::int64_t p : hasse_window(shape.order()).primes) {
        if ((p - 1) % shape.m == 0) out.push_back(p);
    }
    return out;
}

ExactCount sum_terms(const std::vector<ExactCount>& terms) {
    ExactCount total;
    for (const auto& t : terms) total += t;
    return total;
}

}  // namespace

void GroupShape::validate() const {
    if (m < 1 || k < 1) throw std::invalid_argument("group shape needs m >= 1 and k >= 1");
    if (static_cast<i128>(m) * m * k > kMaxRepresentableOrder) {
        throw std::invalid_argument("group order m^2 k too large");
    }
}

bool in_hasse_window(std::int64_t order, std::int64_t p) { return window_gap(order, p) > 0; }

HasseWindow hasse_window(std::int64_t order) {
    if (order < 1) throw std::invalid_argument("hasse_window: N must be >= 1");
    HasseWindow w;
    w.order = order;
    const std::int64_t s = isqrt(4 * static_cast<i128>(order));
    for (std::int64_t p = std::max<std::int64_t>(2, order + 1 - s); p <= order + 1 + s; ++p) {
        if (in_hasse_window(order, p) && is_prime(p)) w.primes.push_back(p);
    }
    return w;
}

Discriminant trace_discriminant(const GroupShape& shape, std::int64_t p) {
    shape.validate();
    if ((p - 1) % shape.m != 0) {
        throw std::invalid_argument("trace_discriminant: p != 1 mod m");
    }
    if (!in_hasse_window(shape.order(), p)) {
        throw std::invalid_argument("trace_discriminant: p outside the Hasse window");
    }
    const i128 t = static_cast<i128>((p - 1) / shape.m) - static_cast<i128>(shape.m) * shape.k;
    const i128 d = t * t - 4 * static_cast<i128>(shape.k);
    return Discriminant(static_cast<std::int64_t>(d));
}

ExactCount m_p_of_group(const GroupShape& shape, std::int64_t p) {
    shape.validate();
    if (p < 2 || (p - 1) % shape.m != 0 || !in_hasse_window(shape.order(), p)) return {};
    return kronecker_class_number_restricted(trace_discriminant(shape, p), shape.k);
}

std::vector<PrimeTerm> m_of_group_terms(const GroupShape& shape, const CensusLimits& limits) {
    shape.validate();
    check_limits(shape.order(), limits);
    const auto primes = eligible_primes(shape);
    return parallel_map<PrimeTerm>(static_cast<std::int64_t>(primes.size()), [&](std::int64_t i) {
        const std::int64_t p = primes[static_cast<std::size_t>(i)];
        const Discriminant d = trace_discriminant(shape, p);
        return PrimeTerm{p, d.value(), kronecker_class_number_restricted(d, shape.k)};
    });
}

ExactCount m_of_group(const GroupShape& shape, const CensusLimits& limits) {
    ExactCount total;
    for (const auto& term : m_of_group_terms(shape, limits)) total += term.value;
    return total;
}

ExactCount m_of_group_serial(const GroupShape& shape, const CensusLimits& limits) {
    shape.validate();
    check_limits(shape.order(), limits);
    ExactCount total;
    for (std::int64_t p : eligible_primes(shape)) total += m_p_of_group(shape, p);
    return total;
}

ExactCount m_p_of_order(std::int64_t order, std::int64_t n, std::int64_t p) {
    if (order < 1 || n < 1) throw std::invalid_argument("m_p_of_order: N and n must be >= 1");
    if (order % (n * n) != 0) throw std::invalid_argument("m_p_of_order: n^2 must divide N");
    if (p < 2 || !in_hasse_window(order, p) || (p - 1) % n != 0) return {};
    const i128 t = static_cast<i128>(p) - 1 - order;
    const i128 D = t * t - 4 * static_cast<i128>(order);
    return kronecker_class_number(Discriminant(static_cast<std::int64_t>(D / (static_cast<i128>(n) * n))));
}

ExactCount m_of_order_by_primes(std::int64_t order, const CensusLimits& limits) {
    check_limits(order, limits);
    const auto primes = hasse_window(order).primes;
    return sum_terms(parallel_map<ExactCount>(static_cast<std::int64_t>(primes.size()),
                                              [&](std::int64_t i) {
                                                  return m_p_of_order(order, 1, primes[static_cast<std::size_t>(i)]);
                                              }));
}

std::vector<GroupShape> shapes_of_order(std::int64_t order) {
    if (order < 1) throw std::invalid_argument("shapes_of_order: N must be >= 1");
    std::vector<GroupShape> out;
    for (std::int64_t m = 1; m * m <= order; ++m) {
        if (order % (m * m) == 0) out.push_back({m, order / (m * m)});
    }
    return out;
}

ExactCount m_of_order_by_groups(std::int64_t order, const CensusLimits& limits) {
    check_limits(order, limits);
    ExactCount total;
    for (const auto& shape : shapes_of_order(order)) total += m_of_group(shape, limits);
    return total;
}

ExactCount m_of_order(std::int64_t order, const CensusLimits& limits) {
    const ExactCount by_primes = m_of_order_by_primes(order, limits);
    const ExactCount by_groups = m_of_order_by_groups(order, limits);
    if (by_primes != by_groups) {
        throw std::logic_error("M(" + std::to_string(order) + ") routes disagree: " + by_primes.str() +
                               " vs " + by_groups.str());
    }
    return by_primes;
}

ExactCount inclusion_exclusion_check(const GroupShape& shape, std::int64_t p) {
    shape.validate();
    const std::int64_t order = shape.order();
    ExactCount total;
    for (std::int64_t r = 1; r * r <= shape.k; ++r) {
        if (shape.k % (r * r) != 0) continue;
        const int mu = mobius(r);
        if (mu == 0) continue;
        const ExactCount term = m_p_of_order(order, r * shape.m, p);
        if (mu > 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

double delta_statistic(const GroupShape& shape) {
    shape.validate();
    const std::int64_t order = shape.order();
    double sum = 0.0;
    for (std::int64_t p : eligible_primes(shape)) {
        sum += std::sqrt(static_cast<double>(window_gap(order, p)));
    }
    const double n = static_cast<double>(order);
    return static_cast<double>(euler_phi(shape.m)) * std::log(2.0 * n) / n * sum;
}

double eta_statistic(std::int64_t order) {
    if (order < 1) throw std::invalid_argument("eta_statistic: N must be >= 1");
    double sum = 0.0;
    for (std::int64_t p : hasse_window(order).primes) {
        sum += std::sqrt(static_cast<double>(window_gap(order, p)));
    }
    const double n = static_cast<double>(order);
    return std::log(2.0 * n) / n * sum;
}

std::vector<GroupShape> sample_shapes(std::uint64_t seed, int count, std::int64_t m_max, std::int64_t k_lo,
                                      std::int64_t k_hi) {
    if (count < 0 || m_max < 1 || k_lo < 1 || k_hi < k_lo) throw std::invalid_argument("sample_shapes: bad ranges");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> m_dist(1, m_max), k_dist(k_lo, k_hi);
    std::vector<GroupShape> out;
    for (int i = 0; i < count; ++i) {
        const std::int64_t m = m_dist(rng);
        const std::int64_t k = k_dist(rng);
        out.push_back({m, k});
    }
    return out;
}

}  // namespace ecg
