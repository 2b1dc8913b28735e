#pragma once

// Exact rational numbers for weighted curve counts and local densities.
//
// Values are kept in lowest terms with a positive denominator. All arithmetic
// goes through 128-bit intermediates and throws std::overflow_error when the
// reduced result does not fit in 64 bits.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace ecg {

using i128 = __int128;
using u128 = unsigned __int128;

std::string to_string(i128 value);

class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num) : num_(num), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);

    /// Builds a reduced rational from wide parts; throws if it does not fit.
    static Rational from_wide(i128 num, i128 den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "num/den", or just "num" when the denominator is 1.
    std::string str() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return from_wide(-static_cast<i128>(num_), den_); }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// The weighted-count type used throughout the census code.
using ExactCount = Rational;

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace ecg
