#include "ecgroups/localfactors.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "ecgroups/arith.hpp"

namespace ecg {

namespace {

void require_cutoff(std::int64_t cutoff) {
    if (cutoff < 100) throw std::invalid_argument("Euler-product cutoff must be >= 100");
}

// (a/ell)^2 with a given as a wide value
int symbol_squared(i128 a, std::int64_t ell) {
    const int s = kronecker(mod(a, ell), ell);
    return s * s;
}

void require_odd_prime_not_dividing_k(std::int64_t ell, std::int64_t k) {
    if (!is_prime(ell)) throw std::invalid_argument("ell must be prime");
    if (ell == 2 || k % ell == 0) throw std::invalid_argument("ell must not divide 2k");
}

// T(ell^w) / ell^(w-1)
std::int64_t t_bracket(std::int64_t ell, int w, std::int64_t m, std::int64_t k) {
    const i128 order = static_cast<i128>(m) * m * k;
    const int lead = symbol_squared(static_cast<i128>(m) * mod(order - 1, ell), ell);
    const std::int64_t tail = (w % 2 == 0) ? ell - 1 - kronecker(k, ell) : -1;
    return tail - lead;
}

LocalFactorTable build_table(std::int64_t order, std::int64_t cutoff,
                             const std::function<Rational(std::int64_t)>& factor_at) {
    require_cutoff(cutoff);
    LocalFactorTable table;
    table.order = order;
    table.cutoff = cutoff;
    for (std::int64_t ell : primes_up_to(cutoff)) table.factors.push_back({ell, factor_at(ell)});
    for (const auto& [ell, e] : factorize(order).factors) {
        if (ell > cutoff) table.factors.push_back({ell, factor_at(ell)});
    }
    double value = 1.0;
    for (const auto& f : table.factors) value *= f.factor.to_double();
    table.truncated_value = value;
    table.tail_bound = std::expm1(4.0 / static_cast<double>(cutoff));
    return table;
}

}  // namespace

std::optional<Rational> LocalFactorTable::factor_at(std::int64_t ell) const {
    for (const auto& f : factors) {
        if (f.ell == ell) return f.factor;
    }
    return std::nullopt;
}

std::int64_t aut_order(const GroupShape& shape) {
    shape.validate();
    const std::int64_t m = shape.m, k = shape.k;
    Rational ratio = Rational(m * euler_phi(m)) * Rational(euler_phi(k), k);
    for (const auto& [ell, e] : factorize(m).factors) {
        if (k % ell != 0) ratio *= Rational(ell * ell - 1, ell * ell);
    }
    const Rational aut = ratio * Rational(shape.order());
    if (!aut.is_integer()) throw std::logic_error("|Aut(G)| came out non-integral: " + aut.str());
    return aut.num();
}

Rational generic_euler_factor(std::int64_t order, std::int64_t ell) {
    const int s = symbol_squared(static_cast<i128>(order) - 1, ell);
    return Rational(1) - Rational(s * ell + 1, (ell - 1) * (ell - 1) * (ell + 1));
}

Rational k_of_group_factor(const GroupShape& shape, std::int64_t ell) {
    if (shape.m % ell == 0) return Rational(1) - Rational(1, ell * ell);
    if (shape.k % ell == 0) return Rational(1) - Rational(1, ell * (ell - 1));
    return generic_euler_factor(shape.order(), ell);
}

Rational k_of_order_factor(std::int64_t order, std::int64_t ell) {
    if (order % ell == 0) {
        return Rational(1) - Rational(1, ipow(ell, valuation(ell, order)) * (ell - 1));
    }
    return generic_euler_factor(order, ell);
}

LocalFactorTable k_of_group(const GroupShape& shape, std::int64_t cutoff) {
    shape.validate();
    auto table = build_table(shape.order(), cutoff,
                             [&](std::int64_t ell) { return k_of_group_factor(shape, ell); });
    table.shape = shape;
    return table;
}

LocalFactorTable k_of_order(std::int64_t order, std::int64_t cutoff) {
    if (order < 1) throw std::invalid_argument("k_of_order: N must be >= 1");
    return build_table(order, cutoff, [&](std::int64_t ell) { return k_of_order_factor(order, ell); });
}

MainTerm conjectural_main_term(const GroupShape& shape, std::int64_t cutoff) {
    shape.validate();
    const std::int64_t order = shape.order();
    if (order < 2) throw std::invalid_argument("main term needs |G| >= 2");
    const auto table = k_of_group(shape, cutoff);
    const double n = static_cast<double>(order);
    MainTerm out;
    out.value = table.truncated_value * n * n / (static_cast<double>(aut_order(shape)) * std::log(n));
    out.tail_bound = out.value * table.tail_bound;
    return out;
}

MainTerm conjectural_main_term_of_order(std::int64_t order, std::int64_t cutoff) {
    if (order < 2) throw std::invalid_argument("main term needs N >= 2");
    const auto table = k_of_order(order, cutoff);
    const double n = static_cast<double>(order);
    MainTerm out;
    out.value = table.truncated_value * n * n / (static_cast<double>(euler_phi(order)) * std::log(n));
    out.tail_bound = out.value * table.tail_bound;
    return out;
}

std::int64_t t_of_n(std::int64_t n, std::int64_t m, std::int64_t k) {
    if (n < 1) throw std::invalid_argument("t_of_n: n must be >= 1");
    const i128 order = static_cast<i128>(m) * m * k;
    // first pass: for each square class d, the admissible roots j
    std::vector<std::int64_t> roots(static_cast<std::size_t>(n), 0);
    for (std::int64_t j = 0; j < n; ++j) {
        const std::int64_t unit_test = mod(order + 1 + static_cast<i128>(j) * m, n);
        if (gcd(unit_test, n) != 1) continue;
        ++roots[static_cast<std::size_t>(mod(static_cast<i128>(j) * j, n))];
    }
    std::int64_t total = 0;
    for (std::int64_t d = 0; d < n; ++d) {
        const std::int64_t count = roots[static_cast<std::size_t>(d)];
        if (count == 0) continue;
        total += kronecker(mod(static_cast<i128>(d) - 4 * static_cast<i128>(k), n), n) * count;
    }
    return total;
}

std::int64_t t_closed_form(std::int64_t ell, int w, std::int64_t m, std::int64_t k) {
    require_odd_prime_not_dividing_k(ell, k);
    if (w < 1) throw std::invalid_argument("t_closed_form: w must be >= 1");
    const i128 value = ipow_wide(ell, w - 1) * t_bracket(ell, w, m, k);
    if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("t_closed_form: value exceeds 64 bits");
    }
    return static_cast<std::int64_t>(value);
}

Rational p_of_ell(std::int64_t ell, std::int64_t m, std::int64_t k) {
    require_odd_prime_not_dividing_k(ell, k);
    const i128 order = static_cast<i128>(m) * m * k;
    const std::int64_t sm = symbol_squared(m, ell);
    const std::int64_t sn = symbol_squared(order - 1, ell);
    const std::int64_t kk = kronecker(k, ell);
    const std::int64_t num = ell * ell * ell - sm * ell * ell - (1 + sm * sn) * ell - 1 - sn * kk;
    const std::int64_t den = (ell * ell - 1) * (ell - sm);
    return Rational(num, den);
}

double p_of_ell_series(std::int64_t ell, std::int64_t m, std::int64_t k, int terms) {
    require_odd_prime_not_dividing_k(ell, k);
    const double sm = symbol_squared(m, ell);
    const double l = static_cast<double>(ell);
    double sum = 1.0;
    double ell_pow = 1.0;
    for (int w = 1; w <= terms; ++w) {
        ell_pow *= l;
        // T(ell^w) / (ell^(2w-1) (ell - sm)) = bracket / (ell^w (ell - sm))
        sum += static_cast<double>(t_bracket(ell, w, m, k)) / (ell_pow * (l - sm));
    }
    return sum;
}

std::int64_t j_r_v(int r, int v, std::int64_t m, std::int64_t k) {
    if (r != 0 && r != 1 && r != 4 && r != 5) throw std::invalid_argument("j_r_v: r must be 0, 1, 4 or 5");
    if (v < 0 || v > 28) throw std::invalid_argument("j_r_v: v out of range");
    const std::int64_t modulus = std::int64_t{1} << (2 * v + 3);
    const i128 mk = static_cast<i128>(m) * k;
    const std::int64_t target = mod(4 * static_cast<i128>(k) + (static_cast<i128>(1) << (2 * v)) * r, modulus);
    std::int64_t count = 0;
    for (std::int64_t j = 1; j <= modulus; ++j) {
        if ((static_cast<i128>(j) * m) % 2 != 0) continue;
        const i128 t = mod(static_cast<i128>(j) - mk, modulus);
        if (mod(t * t, modulus) == target) ++count;
    }
    return count;
}

Rational j_of_v(int v, std::int64_t m, std::int64_t k) {
    const int v0 = (m % 2 == 0) ? 3 : 2;
    Rational sum;
    for (int r : {0, 1, 4, 5}) {
        sum += Rational(j_r_v(r, v, m, k), 2 - kronecker(r, 2));
    }
    return sum / Rational(std::int64_t{1} << (v0 - 1));
}

Rational script_j_enumerated(std::int64_t m, std::int64_t k) {
    if (k % 2 == 0) return j_of_v(0, m, k);  // only v = 0 has (2^v, k) = 1
    constexpr int kFirstCheck = 4;
    constexpr int kLastCheck = 8;
    Rational partial;
    Rational previous = j_of_v(0, m, k);
    partial += previous;
    Rational scale(1);
    for (int v = 1; v <= kLastCheck; ++v) {
        scale /= Rational(8);
        const Rational current = j_of_v(v, m, k);
        if (v >= kFirstCheck && current == previous) {
            // J(u) = current for all u >= v - 1: add the geometric tail from v on
            return partial + current * scale * Rational(8, 7);
        }
        partial += current * scale;
        previous = current;
    }
    throw std::logic_error("script_j: J(v) did not stabilize");
}

Rational script_j_closed(std::int64_t m, std::int64_t k) {
    const bool m_even = m % 2 == 0, k_even = k % 2 == 0;
    if (!m_even && !k_even) return Rational(2, 3);
    if (m_even && k_even) return Rational(3, 2);
    return Rational(1);
}

Rational script_j(std::int64_t m, std::int64_t k) {
    const Rational enumerated = script_j_enumerated(m, k);
    const Rational closed = script_j_closed(m, k);
    if (enumerated != closed) {
        throw std::logic_error("script_j routes disagree for (m,k) = (" + std::to_string(m) + "," +
                               std::to_string(k) + "): " + enumerated.str() + " vs " + closed.str());
    }
    return closed;
}

}  // namespace ecg
