#include "ecgroups/matrixcounts.hpp"

#include <algorithm>
#include <stdexcept>

#include "ecgroups/arith.hpp"
#include "ecgroups/localfactors.hpp"

namespace ecg {

namespace {

void check_budget(std::int64_t ell, int e, std::int64_t budget) {
    if (ipow_wide(ell, 4 * e) > budget) {
        throw std::invalid_argument("matrix enumeration over Z/" + std::to_string(ell) + "^" +
                                    std::to_string(e) + " exceeds the budget of " +
                                    std::to_string(budget) + " matrices");
    }
}

void check_prime_power(std::int64_t ell, int e) {
    if (!is_prime(ell)) throw std::invalid_argument("ell must be prime");
    if (e < 1 || e > 30) throw std::invalid_argument("level e out of range");
}

// Scans the slice of matrices with top-left entry index `ia`.
struct FiberScan {
    std::int64_t modulus;
    std::int64_t ell;
    std::int64_t step;   // ell^u
    std::int64_t count;  // residues per entry: modulus / step

    void scan(std::int64_t ia, std::vector<std::int64_t>& hist) const {
        const std::int64_t a = (1 + ia * step) % modulus;
        for (std::int64_t ib = 0; ib < count; ++ib) {
            const std::int64_t b = ib * step;
            for (std::int64_t ic = 0; ic < count; ++ic) {
                const std::int64_t bc = b * (ic * step) % modulus;
                for (std::int64_t id = 0; id < count; ++id) {
                    const std::int64_t d = (1 + id * step) % modulus;
                    const std::int64_t det = ((a * d - bc) % modulus + modulus) % modulus;
                    if (det % ell == 0) continue;
                    const std::int64_t x = ((det + 1 - a - d) % modulus + 2 * modulus) % modulus;
                    ++hist[static_cast<std::size_t>(x)];
                }
            }
        }
    }
};

FiberScan make_scan(std::int64_t ell, int e, int u) {
    check_prime_power(ell, e);
    if (u < 0) throw std::invalid_argument("identity level u must be >= 0");
    const std::int64_t modulus = ipow(ell, e);
    const std::int64_t step = ipow(ell, std::min(u, e));
    return {modulus, ell, step, modulus / step};
}

i128 checked_pow(std::int64_t ell, int exp) {
    if (exp < 0) throw std::logic_error("negative exponent in closed form");
    return ipow_wide(ell, exp);
}

}  // namespace

void MatrixCountQuery::validate() const {
    if (order < 1 || n < 1) throw std::invalid_argument("matrix query needs N >= 1 and n >= 1");
    check_prime_power(ell, e);
}

i128 gl2_order(std::int64_t ell, int e) {
    check_prime_power(ell, e);
    return ipow_wide(ell, 4 * (e - 1) + 1) * (ell + 1) * (ell - 1) * (ell - 1);
}

std::vector<std::int64_t> fiber_histogram_serial(std::int64_t ell, int e, int u, std::int64_t budget) {
    const FiberScan scan = make_scan(ell, e, u);
    check_budget(ell, e, budget);
    std::vector<std::int64_t> hist(static_cast<std::size_t>(scan.modulus), 0);
    for (std::int64_t ia = 0; ia < scan.count; ++ia) scan.scan(ia, hist);
    return hist;
}

std::vector<std::int64_t> fiber_histogram(std::int64_t ell, int e, int u, std::int64_t budget) {
    const FiberScan scan = make_scan(ell, e, u);
    check_budget(ell, e, budget);
    std::vector<std::int64_t> hist(static_cast<std::size_t>(scan.modulus), 0);
#pragma omp parallel
    {
        std::vector<std::int64_t> local(hist.size(), 0);
#pragma omp for schedule(dynamic)
        for (std::int64_t ia = 0; ia < scan.count; ++ia) scan.scan(ia, local);
#pragma omp critical(ecg_fiber_merge)
        for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += local[i];
    }
    return hist;
}

std::int64_t count_c_brute(const MatrixCountQuery& q, std::int64_t budget) {
    q.validate();
    const auto hist = fiber_histogram(q.ell, q.e, valuation(q.ell, q.n), budget);
    return hist[static_cast<std::size_t>(mod(q.order, ipow(q.ell, q.e)))];
}

i128 count_c_closed(const MatrixCountQuery& q) {
    q.validate();
    const std::int64_t ell = q.ell;
    const int e = q.e;
    const int u = valuation(ell, q.n);
    const int v = valuation(ell, q.order);
    if (e <= v) throw std::invalid_argument("count_c_closed: needs e > nu_ell(N)");
    if (u == 0 && v == 0) {
        const int s = kronecker(mod(static_cast<i128>(q.order) - 1, ell), ell);
        return checked_pow(ell, 3 * (e - 1) + 1) * (ell * ell - ell - 1 - s * s);
    }
    if (u == 0) {
        return checked_pow(ell, 3 * e - v - 2) * (ell + 1) *
               (ipow_wide(ell, v + 1) - ipow_wide(ell, v) - 1);
    }
    if (2 * u <= v) {
        return checked_pow(ell, 3 * e - v - 2) * (ell + 1) * (ipow_wide(ell, v - 2 * u + 1) - 1);
    }
    return 0;
}

std::vector<std::int64_t> det_histogram(std::int64_t ell, int e, std::int64_t budget) {
    check_prime_power(ell, e);
    check_budget(ell, e, budget);
    const std::int64_t q = ipow(ell, e);
    std::vector<std::int64_t> hist(static_cast<std::size_t>(q), 0);
    for (std::int64_t a = 0; a < q; ++a) {
        for (std::int64_t b = 0; b < q; ++b) {
            for (std::int64_t c = 0; c < q; ++c) {
                for (std::int64_t d = 0; d < q; ++d) {
                    ++hist[static_cast<std::size_t>(((a * d - b * c) % q + q) % q)];
                }
            }
        }
    }
    return hist;
}

i128 det_count_closed(std::int64_t M, std::int64_t ell, int e) {
    if (M < 1) throw std::invalid_argument("det_count_closed: M must be >= 1");
    if (!is_prime(ell) || e < 0) throw std::invalid_argument("det_count_closed: bad modulus");
    const int r = valuation(ell, M);
    if (r > e) throw std::invalid_argument("det_count_closed: nu_ell(M) exceeds the level e");
    const int s = e - r;
    const i128 inner = ipow_wide(ell, 3 * s) * (ell + 1) * (ipow_wide(ell, r + 1) - 1) + (s == 0 ? 1 : 0);
    if (r >= 1) return ipow_wide(ell, 2 * (r - 1)) * inner;
    const i128 ell2 = static_cast<i128>(ell) * ell;
    if (inner % ell2 != 0) throw std::logic_error("det_count_closed: non-integral count");
    return inner / ell2;
}

namespace {

i128 f_recurrence(std::int64_t ell, int r, int s) {
    const i128 gl_core = static_cast<i128>(ell + 1) * (static_cast<i128>(ell) * ell - 1);
    if (r == 0) {
        if (s == 0) return 1;
        return ipow_wide(ell, 3 * s - 2) * (static_cast<i128>(ell) * ell - 1);
    }
    if (r == 1) return ipow_wide(ell, 3 * s) * gl_core + (s == 0 ? 1 : 0);
    return ipow_wide(ell, 3 * (r + s - 1)) * gl_core + ipow_wide(ell, 4) * f_recurrence(ell, r - 2, s);
}

}  // namespace

i128 det_count_recurrence(std::int64_t M, std::int64_t ell, int e) {
    if (M < 1) throw std::invalid_argument("det_count_recurrence: M must be >= 1");
    if (!is_prime(ell) || e < 0) throw std::invalid_argument("det_count_recurrence: bad modulus");
    const int r = valuation(ell, M);
    if (r > e) throw std::invalid_argument("det_count_recurrence: nu_ell(M) exceeds the level e");
    return f_recurrence(ell, r, e - r);
}

Rational euler_density_level(std::int64_t order, int u, std::int64_t ell) {
    if (u < 0) throw std::invalid_argument("euler_density: u must be >= 0");
    const int v = valuation(ell, order);
    const std::int64_t n = ipow(ell, u);
    auto at_level = [&](int e) {
        const i128 count = count_c_closed({order, n, ell, e});
        return Rational::from_wide(ipow_wide(ell, e) * count, gl2_order(ell, e));
    };
    const Rational density = at_level(v + 1);
    if (at_level(v + 2) != density) {
        throw std::logic_error("euler_density did not stabilize for N=" + std::to_string(order) +
                               ", ell=" + std::to_string(ell));
    }
    return density;
}

Rational euler_density(std::int64_t order, std::int64_t n, std::int64_t ell) {
    if (order < 1 || n < 1) throw std::invalid_argument("euler_density: N and n must be >= 1");
    if (!is_prime(ell)) throw std::invalid_argument("euler_density: ell must be prime");
    return euler_density_level(order, valuation(ell, n), ell);
}

std::size_t InterpretationReport::mismatches() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.match; }));
}

InterpretationReport verify_kn_interpretation(std::int64_t order, std::int64_t cutoff) {
    if (order < 1) throw std::invalid_argument("verify_kn_interpretation: N must be >= 1");
    InterpretationReport report;
    report.subject = "N=" + std::to_string(order);
    for (std::int64_t ell : primes_up_to(cutoff)) {
        InterpretationRow row;
        row.ell = ell;
        row.euler_side = k_of_order_factor(order, ell);
        if (order % ell == 0) row.euler_side *= Rational(ell, ell - 1);
        row.density_side = euler_density(order, 1, ell);
        row.match = row.euler_side == row.density_side;
        report.rows.push_back(row);
    }
    return report;
}

Rational aut_ratio_local_factor(const GroupShape& shape, std::int64_t ell) {
    const int a = valuation(ell, shape.m);
    const int b = valuation(ell, shape.k);
    Rational out(1);
    if (a > 0) out *= Rational(ipow(ell, a)) * Rational(ipow(ell, a - 1) * (ell - 1));
    if (b > 0) out *= Rational(ell - 1, ell);
    if (a > 0 && b == 0) out *= Rational(ell * ell - 1, ell * ell);
    return out;
}

InterpretationReport verify_kg_interpretation(const GroupShape& shape, std::int64_t cutoff) {
    shape.validate();
    InterpretationReport report;
    report.subject = "m=" + std::to_string(shape.m) + ",k=" + std::to_string(shape.k);
    const std::int64_t order = shape.order();
    for (std::int64_t ell : primes_up_to(cutoff)) {
        InterpretationRow row;
        row.ell = ell;
        row.euler_side = k_of_group_factor(shape, ell) / aut_ratio_local_factor(shape, ell);
        const int u = valuation(ell, shape.m);
        row.density_side = euler_density_level(order, u, ell) - euler_density_level(order, u + 1, ell);
        row.match = row.euler_side == row.density_side;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace ecg
