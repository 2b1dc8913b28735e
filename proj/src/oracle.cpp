#include "ecgroups/oracle.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "ecgroups/arith.hpp"

namespace ecg {

WeierstrassCurve::WeierstrassCurve(int p, int a1, int a2, int a3, int a4, int a6)
    : p_(p), a1_(0), a2_(0), a3_(0), a4_(0), a6_(0) {
    a1_ = reduce(a1);
    a2_ = reduce(a2);
    a3_ = reduce(a3);
    a4_ = reduce(a4);
    a6_ = reduce(a6);
}

int WeierstrassCurve::reduce(std::int64_t v) const { return static_cast<int>(mod(v, p_)); }

int WeierstrassCurve::inverse(int v) const {
    return static_cast<int>(powmod(static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(p_ - 2),
                                   static_cast<std::uint64_t>(p_)));
}

bool WeierstrassCurve::is_singular() const {
    const std::int64_t b2 = std::int64_t{a1_} * a1_ + 4 * a2_;
    const std::int64_t b4 = 2 * std::int64_t{a4_} + std::int64_t{a1_} * a3_;
    const std::int64_t b6 = std::int64_t{a3_} * a3_ + 4 * std::int64_t{a6_};
    const std::int64_t b8 = std::int64_t{a1_} * a1_ * a6_ + 4 * std::int64_t{a2_} * a6_ -
                            std::int64_t{a1_} * a3_ * a4_ + std::int64_t{a2_} * a3_ * a3_ -
                            std::int64_t{a4_} * a4_;
    const i128 disc = -static_cast<i128>(b2) * b2 * b8 - 8 * static_cast<i128>(b4) * b4 * b4 -
                      27 * static_cast<i128>(b6) * b6 + 9 * static_cast<i128>(b2) * b4 * b6;
    return mod(disc, p_) == 0;
}

bool WeierstrassCurve::contains(const Point& pt) const {
    if (pt.infinity) return true;
    const std::int64_t x = pt.x, y = pt.y;
    const std::int64_t lhs = y * y + a1_ * x * y + a3_ * y;
    const std::int64_t rhs = x * x * x + a2_ * x * x + a4_ * x + a6_;
    return mod(lhs - rhs, p_) == 0;
}

WeierstrassCurve::Point WeierstrassCurve::negate(const Point& a) const {
    if (a.infinity) return a;
    return {a.x, reduce(-std::int64_t{a.y} - std::int64_t{a1_} * a.x - a3_), false};
}

WeierstrassCurve::Point WeierstrassCurve::add(const Point& a, const Point& b) const {
    if (a.infinity) return b;
    if (b.infinity) return a;
    std::int64_t lambda, nu;
    if (a.x == b.x) {
        if (reduce(std::int64_t{a.y} + b.y + std::int64_t{a1_} * b.x + a3_) == 0) return Point{};
        const std::int64_t den = reduce(2 * std::int64_t{a.y} + std::int64_t{a1_} * a.x + a3_);
        const std::int64_t inv = inverse(static_cast<int>(den));
        const std::int64_t x = a.x;
        lambda = reduce(reduce(3 * x * x + 2 * a2_ * x + a4_ - std::int64_t{a1_} * a.y) * inv);
        nu = reduce(reduce(-x * x * x + a4_ * x + 2 * std::int64_t{a6_} - std::int64_t{a3_} * a.y) * inv);
    } else {
        const std::int64_t inv = inverse(reduce(std::int64_t{b.x} - a.x));
        lambda = reduce(reduce(std::int64_t{b.y} - a.y) * inv);
        nu = reduce(reduce(std::int64_t{a.y} * b.x - std::int64_t{b.y} * a.x) * inv);
    }
    const int x3 = reduce(lambda * lambda + a1_ * lambda - a2_ - a.x - b.x);
    const int y3 = reduce(-(lambda + a1_) * x3 - nu - a3_);
    return {x3, y3, false};
}

WeierstrassCurve::Point WeierstrassCurve::multiply(std::int64_t n, Point a) const {
    if (n < 0) {
        n = -n;
        a = negate(a);
    }
    Point acc;
    while (n > 0) {
        if (n & 1) acc = add(acc, a);
        a = add(a, a);
        n >>= 1;
    }
    return acc;
}

std::vector<WeierstrassCurve::Point> WeierstrassCurve::affine_points() const {
    std::vector<Point> out;
    for (int x = 0; x < p_; ++x) {
        for (int y = 0; y < p_; ++y) {
            Point pt{x, y, false};
            if (contains(pt)) out.push_back(pt);
        }
    }
    return out;
}

namespace {

GroupShape shape_from_points(const WeierstrassCurve& curve,
                             const std::vector<WeierstrassCurve::Point>& affine) {
    const std::int64_t order = static_cast<std::int64_t>(affine.size()) + 1;
    const auto factors = factorize(order).factors;
    std::int64_t exponent = 1;
    for (const auto& pt : affine) {
        std::int64_t ord = order;
        for (const auto& [q, e] : factors) {
            while (ord % q == 0 && curve.multiply(ord / q, pt).infinity) ord /= q;
        }
        exponent = lcm(exponent, ord);
        if (exponent == order) break;
    }
    const std::int64_t m = order / exponent;
    if (m * exponent != order || exponent % m != 0) {
        throw std::logic_error("point group is not of the form Z/m x Z/mk");
    }
    return {m, exponent / m};
}

}  // namespace

GroupShape WeierstrassCurve::group_shape() const { return shape_from_points(*this, affine_points()); }

ExactCount CurveTally::expected_mass() const { return ExactCount(equations - singular, orbit_size); }

namespace {

void check_oracle_prime(std::int64_t p, std::int64_t cap) {
    if (p > cap) {
        throw std::invalid_argument("brute_force_tally: p = " + std::to_string(p) + " exceeds cap " +
                                    std::to_string(cap));
    }
    if (!is_prime(p)) throw std::invalid_argument("brute_force_tally: p must be prime");
}

using ShapeCounts = std::map<GroupShape, std::int64_t>;

struct ScanResult {
    ShapeCounts counts;
    std::int64_t singular = 0;
};

// Scans the coefficient tuple with index `index`, adding to `out`.
class TupleScanner {
public:
    explicit TupleScanner(int p) : p_(p), roots_(static_cast<std::size_t>(p)) {
        for (int y = 0; y < p; ++y) roots_[static_cast<std::size_t>(y * y % p)].push_back(y);
    }

    std::int64_t tuple_count() const {
        return p_ > 3 ? std::int64_t{p_} * p_ : ipow(p_, 5);
    }

    std::int64_t orbit_size() const {
        return p_ > 3 ? p_ - 1 : (p_ - 1) * ipow(p_, 3);
    }

    void scan(std::int64_t index, ScanResult& out) const {
        if (p_ > 3) {
            const int a = static_cast<int>(index / p_);
            const int b = static_cast<int>(index % p_);
            WeierstrassCurve curve(p_, 0, 0, 0, a, b);
            if (curve.is_singular()) {
                ++out.singular;
                return;
            }
            std::vector<WeierstrassCurve::Point> pts;
            for (int x = 0; x < p_; ++x) {
                const int rhs = static_cast<int>((std::int64_t{x} * x % p_ * x + std::int64_t{a} * x + b) % p_);
                for (int y : roots_[static_cast<std::size_t>(rhs)]) pts.push_back({x, y, false});
            }
            ++out.counts[shape_from_points(curve, pts)];
        } else {
            int c[5];
            std::int64_t rest = index;
            for (int& ci : c) {
                ci = static_cast<int>(rest % p_);
                rest /= p_;
            }
            WeierstrassCurve curve(p_, c[0], c[1], c[2], c[3], c[4]);
            if (curve.is_singular()) {
                ++out.singular;
                return;
            }
            ++out.counts[curve.group_shape()];
        }
    }

private:
    int p_;
    std::vector<std::vector<int>> roots_;
};

CurveTally finish(std::int64_t p, const TupleScanner& scanner, const ScanResult& scan) {
    CurveTally tally;
    tally.p = p;
    tally.equations = scanner.tuple_count();
    tally.singular = scan.singular;
    tally.orbit_size = scanner.orbit_size();
    for (const auto& [shape, count] : scan.counts) {
        ExactCount weight(count, tally.orbit_size);
        tally.entries[shape] = weight;
        tally.total += weight;
    }
    return tally;
}

}  // namespace

CurveTally brute_force_tally_serial(std::int64_t p, std::int64_t cap) {
    check_oracle_prime(p, cap);
    const TupleScanner scanner(static_cast<int>(p));
    ScanResult scan;
    for (std::int64_t i = 0; i < scanner.tuple_count(); ++i) scanner.scan(i, scan);
    return finish(p, scanner, scan);
}

CurveTally brute_force_tally(std::int64_t p, std::int64_t cap) {
    check_oracle_prime(p, cap);
    const TupleScanner scanner(static_cast<int>(p));
    const std::int64_t n = scanner.tuple_count();
    ScanResult merged;
#pragma omp parallel
    {
        ScanResult local;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) scanner.scan(i, local);
        // integer counts: merge order is irrelevant
#pragma omp critical(ecg_tally_merge)
        {
            merged.singular += local.singular;
            for (const auto& [shape, count] : local.counts) merged.counts[shape] += count;
        }
    }
    return finish(p, scanner, merged);
}

}  // namespace ecg
