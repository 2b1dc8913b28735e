#pragma once

// Matrix counts over Z/ell^e: the fibres of det + 1 - tr on GL_2, with and
// without a congruence-to-identity condition, determinant fibres on Mat_2,
// and the local densities they stabilize to. The densities reproduce the
// Euler factors of K(N) N/phi(N) and K(G) |G|/|Aut(G)|.

#include <cstdint>
#include <string>
#include <vector>

#include "ecgroups/curves.hpp"
#include "ecgroups/rational.hpp"

namespace ecg {

inline constexpr std::int64_t kDefaultEnumerationBudget = 100'000'000;

/// C_{N,n}(ell^e) = {s in GL_2(Z/ell^e) : det s + 1 - tr s = N, s = I mod ell^nu_ell(n)}.
///
/// The closed forms also cover n with n^2 not dividing N (the count is then
/// zero beyond the stabilization level), which the K(G) comparison needs.
struct MatrixCountQuery {
    std::int64_t order = 1;  // N
    std::int64_t n = 1;
    std::int64_t ell = 2;
    int e = 1;

    /// Throws std::invalid_argument on N, n < 1, composite ell, or e < 1.
    void validate() const;
};

/// #GL_2(Z/ell^e) = ell^(4(e-1)+1) (ell+1) (ell-1)^2.
i128 gl2_order(std::int64_t ell, int e);

/// counts[x] = #{s in GL_2(Z/ell^e) : s = I mod ell^u, det s + 1 - tr s = x}, x in [0, ell^e).
/// Full enumeration; throws if ell^(4e) exceeds the budget.
std::vector<std::int64_t> fiber_histogram(std::int64_t ell, int e, int u,
                                          std::int64_t budget = kDefaultEnumerationBudget);
std::vector<std::int64_t> fiber_histogram_serial(std::int64_t ell, int e, int u,
                                                 std::int64_t budget = kDefaultEnumerationBudget);

/// #C_{N,n}(ell^e) by full enumeration.
std::int64_t count_c_brute(const MatrixCountQuery& q, std::int64_t budget = kDefaultEnumerationBudget);

/// #C_{N,n}(ell^e) in closed form; requires e > nu_ell(N).
i128 count_c_closed(const MatrixCountQuery& q);

/// counts[x] = #{s in Mat_2(Z/ell^e) : det s = x}, by enumeration.
std::vector<std::int64_t> det_histogram(std::int64_t ell, int e,
                                        std::int64_t budget = kDefaultEnumerationBudget);

/// #{s in Mat_2(Z/ell^e) : det s = M} in closed form, with r = nu_ell(M) <= e and s = e - r.
i128 det_count_closed(std::int64_t M, std::int64_t ell, int e);
/// The same count through the f(r, s) recurrences.
i128 det_count_recurrence(std::int64_t M, std::int64_t ell, int e);

/// ell^e #C / #GL_2 at e = nu_ell(N) + 1; checked against e = nu_ell(N) + 2.
Rational euler_density(std::int64_t order, std::int64_t n, std::int64_t ell);

/// The density with the identity condition given directly as an exponent u.
Rational euler_density_level(std::int64_t order, int u, std::int64_t ell);

struct InterpretationRow {
    std::int64_t ell = 0;
    Rational euler_side;    // from the K constant and its normalization
    Rational density_side;  // from matrix counts
    bool match = false;
};

struct InterpretationReport {
    std::string subject;  // "N=..." or "m=...,k=..."
    std::vector<InterpretationRow> rows;

    std::size_t mismatches() const;
};

/// Compares the ell-factor of K(N) N/phi(N) with the density of C_{N,1}, for ell <= cutoff.
InterpretationReport verify_kn_interpretation(std::int64_t order, std::int64_t cutoff);

/// Compares the ell-factor of K(G) |G|/|Aut(G)| with the density difference
/// v(N, ell^u) - v(N, ell^(u+1)), u = nu_ell(m), for ell <= cutoff.
InterpretationReport verify_kg_interpretation(const GroupShape& shape, std::int64_t cutoff);

/// The ell-part of |Aut(G)| / |G|.
Rational aut_ratio_local_factor(const GroupShape& shape, std::int64_t ell);

}  // namespace ecg
