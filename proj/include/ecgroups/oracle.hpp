#pragma once

// Brute-force census of elliptic curves over small prime fields.
//
// Every Weierstrass equation is enumerated, its points counted and its group
// structure read off from the exponent. Weighting each equation by the
// inverse order of the coordinate-change group turns equation counts into
// sums of 1/|Aut_p(E)| over isomorphism classes:
//   p > 3:  y^2 = x^3 + ax + b,        weight 1/(p-1)
//   p <= 3: general (a1,a2,a3,a4,a6),  weight 1/((p-1)p^3)

#include <cstdint>
#include <map>

#include "ecgroups/curves.hpp"
#include "ecgroups/rational.hpp"

namespace ecg {

struct CurveTally {
    std::int64_t p = 0;
    std::map<GroupShape, ExactCount> entries;
    ExactCount total;
    std::int64_t equations = 0;  // all coefficient tuples scanned
    std::int64_t singular = 0;   // tuples with zero discriminant
    std::int64_t orbit_size = 1; // order of the coordinate-change group

    /// (equations - singular) / orbit_size, counted independently of the group tally.
    ExactCount expected_mass() const;
};

inline constexpr std::int64_t kDefaultOraclePrimeCap = 61;

/// OpenMP scan over coefficient tuples. Throws for non-primes or p > cap.
CurveTally brute_force_tally(std::int64_t p, std::int64_t cap = kDefaultOraclePrimeCap);
/// Reference single-threaded scan.
CurveTally brute_force_tally_serial(std::int64_t p, std::int64_t cap = kDefaultOraclePrimeCap);

/// Weierstrass curve over F_p with a point-group toolkit; public for tests.
class WeierstrassCurve {
public:
    struct Point {
        int x = 0;
        int y = 0;
        bool infinity = true;

        friend bool operator==(const Point&, const Point&) = default;
    };

    WeierstrassCurve(int p, int a1, int a2, int a3, int a4, int a6);

    int prime() const { return p_; }
    bool is_singular() const;
    bool contains(const Point& pt) const;
    Point add(const Point& a, const Point& b) const;
    Point negate(const Point& a) const;
    Point multiply(std::int64_t n, Point a) const;

    /// Brute-force list of affine points (point at infinity excluded).
    std::vector<Point> affine_points() const;

    /// (m, k) with E(F_p) = Z/m x Z/mk, from #E and the group exponent.
    GroupShape group_shape() const;

private:
    int reduce(std::int64_t v) const;
    int inverse(int v) const;

    int p_;
    int a1_, a2_, a3_, a4_, a6_;
};

}  // namespace ecg
