#pragma once

// Positive definite binary quadratic forms: class numbers h(d), unit counts
// w(d), Kronecker class numbers H(D) and their coprime-content restriction
// H_k(D), together with L(1, (d/.)) evaluated three ways.

#include <cstdint>
#include <filesystem>
#include <shared_mutex>
#include <unordered_map>

#include "ecgroups/rational.hpp"

namespace ecg {

/// A negative integer congruent to 0 or 1 mod 4.
class Discriminant {
public:
    /// Throws std::invalid_argument unless value < 0 and value = 0, 1 (mod 4).
    explicit Discriminant(std::int64_t value);

    static bool is_valid(std::int64_t value);

    std::int64_t value() const { return value_; }
    std::int64_t magnitude() const { return -value_; }

    friend bool operator==(const Discriminant&, const Discriminant&) = default;

private:
    std::int64_t value_;
};

struct ClassData {
    std::int64_t h = 0;  // number of primitive reduced forms
    int w = 2;           // 6 for -3, 4 for -4, else 2

    friend bool operator==(const ClassData&, const ClassData&) = default;
};

/// Counts primitive reduced forms directly; no caching.
ClassData compute_class_data(Discriminant d);

/// Memoized class data. Concurrent readers, serialized writers.
class ClassNumberCache {
public:
    ClassData get(Discriminant d);

    std::size_t size() const;
    void clear();

    /// Reads a `discriminant,h,w` CSV; rows merge into the cache. Returns rows read.
    std::size_t load_csv(const std::filesystem::path& path);
    /// Rewrites the file atomically (temp file + rename), sorted by |discriminant|.
    void save_csv(const std::filesystem::path& path) const;

    static ClassNumberCache& global();

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::int64_t, ClassData> table_;
};

/// Class data through the global cache.
ClassData class_data(Discriminant d);

/// H(D) = sum over f^2 | D with D/f^2 = 0,1 (mod 4) of h(D/f^2)/w(D/f^2).
ExactCount kronecker_class_number(Discriminant d);

/// H_k(D): the same sum restricted to gcd(f, k) = 1.
ExactCount kronecker_class_number_restricted(Discriminant d, std::int64_t k);

/// H_k(D) by one pass over all reduced forms of discriminant D, primitive or
/// not. A form of content f with gcd(f, k) = 1 weighs 1/4 when proportional
/// to x^2+y^2, 1/6 when proportional to x^2+xy+y^2, and 1/2 otherwise.
ExactCount kronecker_class_number_by_forms(Discriminant d, std::int64_t k);

/// L(1, (d/.)) from the class number formula 2*pi*h / (w*sqrt|d|).
double l_value_exact(Discriminant d);

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

/// Partial sum of (d/n)/n over n <= cutoff. The tail bound is
/// 2*sqrt|d|*log|d|/cutoff: partial summation against the Polya-Vinogradov
/// bound sqrt(q)*log(q) on character sums over any interval. Requires
/// cutoff >= |d|.
SeriesValue l_value_series(Discriminant d, std::int64_t cutoff);

/// Largest |sum of (d/n) over a <= n <= b| over all intervals, computed
/// exactly from one period of prefix sums.
std::int64_t max_character_interval_sum(Discriminant d);

/// Truncated Euler product over primes ell <= z of (1 - (d/ell)/ell)^(-1).
double l_value_truncated(Discriminant d, std::int64_t z);

}  // namespace ecg
