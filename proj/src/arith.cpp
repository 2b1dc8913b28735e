#include "ecgroups/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ecg {

std::int64_t Factorization::product() const {
    std::int64_t out = 1;
    for (const auto& f : factors) out *= ipow(f.prime, f.exponent);
    return out;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

std::int64_t isqrt(i128 n) {
    if (n < 0) throw std::domain_error("isqrt of negative value");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<i128>(r) * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

i128 ipow_wide(std::int64_t base, int exp) {
    i128 out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

std::int64_t mod(i128 a, std::int64_t m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace {

// Jacobi symbol for odd n > 0 and 0 <= a < n.
int jacobi(std::uint64_t a, std::uint64_t n) {
    int t = 1;
    while (a != 0) {
        int z = std::countr_zero(a);
        a >>= z;
        if ((z & 1) && ((n & 7) == 3 || (n & 7) == 5)) t = -t;
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? t : 0;
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    a %= n;
    if (a == 0) return false;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

std::uint64_t pollard_rho(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    // Brent's variant; seeds c = 1, 2, ... for reproducibility
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        const std::uint64_t block = 128;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += block) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(static_cast<std::int64_t>(n))) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

int kronecker(std::int64_t a, std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("kronecker: n must be >= 1");
    int sign = 1;
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        int v = std::countr_zero(static_cast<std::uint64_t>(n));
        n >>= v;
        int a8 = static_cast<int>(a & 7);
        if ((v & 1) && (a8 == 3 || a8 == 5)) sign = -1;
    }
    auto un = static_cast<std::uint64_t>(n);
    auto ua = static_cast<std::uint64_t>(mod(a, n));
    return sign * jacobi(ua, un);
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    static constexpr std::int64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    auto un = static_cast<std::uint64_t>(n);
    std::uint64_t d = un - 1;
    int s = std::countr_zero(d);
    d >>= s;
    // witness set valid for every n < 2^64
    static constexpr std::uint64_t bases[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
    for (auto a : bases) {
        if (miller_rabin_witness(un, a, d, s)) return false;
    }
    return true;
}

Factorization factorize(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization f;
    f.value = n;
    std::int64_t rest = n;
    constexpr std::int64_t trial_limit = 1'000'000;
    for (std::int64_t p = 2; p <= trial_limit && p * p <= rest; p += (p == 2 ? 1 : 2)) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    if (rest > 1) {
        std::vector<std::uint64_t> big;
        factor_into(static_cast<std::uint64_t>(rest), big);
        std::sort(big.begin(), big.end());
        for (auto p : big) {
            auto sp = static_cast<std::int64_t>(p);
            if (!f.factors.empty() && f.factors.back().prime == sp) {
                ++f.factors.back().exponent;
            } else {
                f.factors.push_back({sp, 1});
            }
        }
    }
    return f;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t out = n;
    for (const auto& [p, e] : factorize(n).factors) out = out / p * (p - 1);
    return out;
}

int mobius(std::int64_t n) {
    int out = 1;
    for (const auto& [p, e] : factorize(n).factors) {
        if (e > 1) return 0;
        out = -out;
    }
    return out;
}

int valuation(std::int64_t ell, std::int64_t n) {
    if (ell < 2 || n == 0) throw std::invalid_argument("valuation: need ell >= 2 and n != 0");
    int v = 0;
    while (n % ell == 0) {
        n /= ell;
        ++v;
    }
    return v;
}

std::int64_t num_divisors(std::int64_t n) {
    std::int64_t out = 1;
    for (const auto& [p, e] : factorize(n).factors) out *= e + 1;
    return out;
}

bool is_squarefree(std::int64_t n) { return mobius(n) != 0; }

std::vector<std::int64_t> primes_in_ap(std::int64_t lo, std::int64_t hi, std::int64_t m,
                                       std::int64_t a) {
    if (m < 1) throw std::invalid_argument("primes_in_ap: modulus must be >= 1");
    std::vector<std::int64_t> out;
    if (hi <= lo + 1) return out;
    std::int64_t start = lo + 1;
    std::int64_t shift = mod(static_cast<i128>(a) - start, m);
    for (std::int64_t p = start + shift; p < hi; p += m) {
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

}  // namespace ecg
