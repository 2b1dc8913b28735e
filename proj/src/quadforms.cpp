#include "ecgroups/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecgroups/arith.hpp"

namespace ecg {

Discriminant::Discriminant(std::int64_t value) : value_(value) {
    if (!is_valid(value)) {
        throw std::invalid_argument("not a negative discriminant: " + std::to_string(value));
    }
}

bool Discriminant::is_valid(std::int64_t value) {
    if (value >= 0) return false;
    std::int64_t r = mod(value, 4);
    return r == 0 || r == 1;
}

namespace {

// Calls visit(a, b, c) for every reduced form of discriminant d, primitive or
// not: -a < b <= a <= c, b >= 0 when a == c.
template <typename Visit>
void for_each_reduced_form(std::int64_t d, Visit&& visit) {
    const std::int64_t amax = isqrt(static_cast<i128>(-d) / 3);
    const std::int64_t parity = mod(d, 2);
    for (std::int64_t a = 1; a <= amax; ++a) {
        const std::int64_t four_a = 4 * a;
        std::int64_t b = -a + 1;
        if (mod(b, 2) != parity) ++b;
        for (; b <= a; b += 2) {
            const std::int64_t num = b * b - d;
            if (num % four_a != 0) continue;
            const std::int64_t c = num / four_a;
            if (c < a) continue;
            if (a == c && b < 0) continue;
            visit(a, b, c);
        }
    }
}

int unit_count(std::int64_t d) {
    if (d == -3) return 6;
    if (d == -4) return 4;
    return 2;
}

}  // namespace

ClassData compute_class_data(Discriminant disc) {
    ClassData out;
    out.w = unit_count(disc.value());
    for_each_reduced_form(disc.value(), [&](std::int64_t a, std::int64_t b, std::int64_t c) {
        if (gcd(gcd(a, b), c) == 1) ++out.h;
    });
    return out;
}

ClassData ClassNumberCache::get(Discriminant d) {
    {
        std::shared_lock lock(mutex_);
        auto it = table_.find(d.value());
        if (it != table_.end()) return it->second;
    }
    ClassData data = compute_class_data(d);
    std::unique_lock lock(mutex_);
    table_.emplace(d.value(), data);
    return data;
}

std::size_t ClassNumberCache::size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
}

void ClassNumberCache::clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
}

std::size_t ClassNumberCache::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open class-number cache: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "discriminant,h,w") {
        throw std::runtime_error("class-number cache: bad header in " + path.string());
    }
    std::vector<std::pair<std::int64_t, ClassData>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string d_s, h_s, w_s;
        if (!std::getline(fields, d_s, ',') || !std::getline(fields, h_s, ',') ||
            !std::getline(fields, w_s)) {
            throw std::runtime_error("class-number cache: malformed row: " + line);
        }
        std::int64_t d = std::stoll(d_s);
        if (!Discriminant::is_valid(d)) {
            throw std::runtime_error("class-number cache: invalid discriminant: " + d_s);
        }
        rows.emplace_back(d, ClassData{std::stoll(h_s), std::stoi(w_s)});
    }
    std::unique_lock lock(mutex_);
    for (auto& [d, data] : rows) table_[d] = data;
    return rows.size();
}

void ClassNumberCache::save_csv(const std::filesystem::path& path) const {
    std::vector<std::pair<std::int64_t, ClassData>> rows;
    {
        std::shared_lock lock(mutex_);
        rows.assign(table_.begin(), table_.end());
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write class-number cache: " + tmp.string());
        out << "discriminant,h,w\n";
        for (const auto& [d, data] : rows) out << d << ',' << data.h << ',' << data.w << '\n';
    }
    std::filesystem::rename(tmp, path);
}

ClassNumberCache& ClassNumberCache::global() {
    static ClassNumberCache cache;
    return cache;
}

ClassData class_data(Discriminant d) { return ClassNumberCache::global().get(d); }

ExactCount kronecker_class_number(Discriminant d) { return kronecker_class_number_restricted(d, 1); }

ExactCount kronecker_class_number_restricted(Discriminant d, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("H_k: k must be >= 1");
    const std::int64_t D = d.value();
    ExactCount total;
    for (std::int64_t f = 1; f * f <= -D; ++f) {
        if (D % (f * f) != 0 || gcd(f, k) != 1) continue;
        const std::int64_t reduced = D / (f * f);
        if (!Discriminant::is_valid(reduced)) continue;
        ClassData cd = class_data(Discriminant(reduced));
        total += ExactCount(cd.h, cd.w);
    }
    return total;
}

ExactCount kronecker_class_number_by_forms(Discriminant d, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("H_k: k must be >= 1");
    // tally in twelfths: 1/2 = 6, 1/4 = 3, 1/6 = 2
    std::int64_t twelfths = 0;
    for_each_reduced_form(d.value(), [&](std::int64_t a, std::int64_t b, std::int64_t c) {
        const std::int64_t f = gcd(gcd(a, b), c);
        if (gcd(f, k) != 1) return;
        const std::int64_t pa = a / f, pb = b / f, pc = c / f;
        if (pa == 1 && pb == 0 && pc == 1) {
            twelfths += 3;
        } else if (pa == 1 && pb == 1 && pc == 1) {
            twelfths += 2;
        } else {
            twelfths += 6;
        }
    });
    return ExactCount(twelfths, 12);
}

double l_value_exact(Discriminant d) {
    ClassData cd = class_data(d);
    return 2.0 * std::numbers::pi * static_cast<double>(cd.h) /
           (static_cast<double>(cd.w) * std::sqrt(static_cast<double>(d.magnitude())));
}

SeriesValue l_value_series(Discriminant d, std::int64_t cutoff) {
    const std::int64_t q = d.magnitude();
    if (cutoff < q) throw std::invalid_argument("l_value_series: cutoff must be >= |d|");
    // (d/.) has period |d| for a discriminant d
    std::vector<int> chi(static_cast<std::size_t>(q));
    for (std::int64_t n = 0; n < q; ++n) chi[static_cast<std::size_t>(n)] = kronecker(d.value(), n == 0 ? q : n);
    double sum = 0.0;
    std::int64_t r = 1;
    for (std::int64_t n = 1; n <= cutoff; ++n) {
        const int c = chi[static_cast<std::size_t>(r)];
        if (c != 0) sum += c / static_cast<double>(n);
        if (++r == q) r = 0;
    }
    SeriesValue out;
    out.value = sum;
    const double qd = static_cast<double>(q);
    out.tail_bound = 2.0 * std::sqrt(qd) * std::log(qd) / static_cast<double>(cutoff);
    return out;
}

std::int64_t max_character_interval_sum(Discriminant d) {
    const std::int64_t q = d.magnitude();
    std::int64_t s = 0, lo = 0, hi = 0;
    for (std::int64_t n = 1; n <= q; ++n) {
        s += kronecker(d.value(), n);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return hi - lo;
}

double l_value_truncated(Discriminant d, std::int64_t z) {
    if (z < 2) throw std::invalid_argument("l_value_truncated: z must be >= 2");
    double prod = 1.0;
    for (std::int64_t ell : primes_up_to(z)) {
        prod /= 1.0 - kronecker(d.value(), ell) / static_cast<double>(ell);
    }
    return prod;
}

}  // namespace ecg
