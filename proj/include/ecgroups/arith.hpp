#pragma once

// Integer substrate: Kronecker symbols, primality, factorization and the
// usual multiplicative functions.

#include <cstdint>
#include <utility>
#include <vector>

#include "ecgroups/rational.hpp"

namespace ecg {

struct PrimePower {
    std::int64_t prime;
    int exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::int64_t value = 1;
    std::vector<PrimePower> factors;  // primes strictly increasing

    /// Multiplies the factors back out.
    std::int64_t product() const;
};

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

/// floor(sqrt(n)) for n >= 0.
std::int64_t isqrt(i128 n);

std::int64_t ipow(std::int64_t base, int exp);
i128 ipow_wide(std::int64_t base, int exp);

/// a mod m in [0, m), m >= 1.
std::int64_t mod(i128 a, std::int64_t m);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Kronecker symbol (a/n) for n >= 1. Throws std::invalid_argument for n == 0.
int kronecker(std::int64_t a, std::int64_t n);

/// Deterministic for all 64-bit inputs.
bool is_prime(std::int64_t n);

Factorization factorize(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);
int mobius(std::int64_t n);
/// nu_ell(n) for prime ell and n >= 1.
int valuation(std::int64_t ell, std::int64_t n);
std::int64_t num_divisors(std::int64_t n);
bool is_squarefree(std::int64_t n);

/// Primes p with lo < p < hi and p = a (mod m), ascending.
std::vector<std::int64_t> primes_in_ap(std::int64_t lo, std::int64_t hi, std::int64_t m,
                                       std::int64_t a);

/// Sieve of Eratosthenes: all primes <= n.
std::vector<std::int64_t> primes_up_to(std::int64_t n);

}  // namespace ecg
