#pragma once

#include "gaussline/gaussian_int.hpp"
#include "gaussline/line.hpp"
#include "gaussline/primality.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaussline {

/// Arithmetic progression value + modulus*Z with 0 <= value < modulus.
struct IntCongruence {
    Int value;
    Int modulus;
};

/// Solve a*x = b (mod m), m >= 1. Empty when gcd(a, m) does not divide b;
/// otherwise the full solution set as a congruence mod m/gcd(a, m).
std::optional<IntCongruence> solve_linear_congruence(const Int& a, const Int& b, const Int& m);

/// Intersect two arithmetic progressions (moduli need not be coprime).
/// Empty when they are incompatible; otherwise a congruence mod lcm.
std::optional<IntCongruence> crt_merge(const IntCongruence& x, const IntCongruence& y);

struct GaussianCongruence {
    GaussianInt residue;
    GaussianInt modulus;
};

struct CrtSolution {
    GaussianInt value;    // divmod-reduced against the modulus
    GaussianInt modulus;  // product of the input moduli
};

/// Chinese Remainder Theorem over Z[i]: moduli must be pairwise relatively
/// prime, none zero or unit. Throws std::invalid_argument naming the
/// offending pair otherwise.
CrtSolution crt_gaussian(const std::vector<GaussianCongruence>& congruences);

/// One divisibility constraint: mu must divide the point at index t + b.
struct LineConstraint {
    GaussianInt mu;
    Int b;
};

/// Parse "mu@b,mu@b,..." (GaussianInt syntax for mu, decimal b).
std::vector<LineConstraint> parse_constraints(const std::string& text);

struct LineCrtResult {
    Int t;        // least nonnegative solution
    Int modulus;  // product of nu(mu_j)
};

/// Chinese Remainder Theorem for Gaussian lines: the unique t modulo
/// prod nu(mu_j) with mu_j | point_at(t + b_j) for all j. Requires each
/// mu_j in the divisor set of L and the nu(mu_j) pairwise relatively prime.
LineCrtResult crt_line(const GaussianLine& line, const std::vector<LineConstraint>& constraints,
                       const FactorBudget& budget = {});

/// Intermediate values of the constructive line synthesis, kept for audit.
struct ConstructionPlan {
    std::vector<GaussianInt> gammas;  // gamma_j = gcd(mu_j, b_j)
    GaussianInt lambda;
    std::vector<GaussianInt> omegas;  // omega_j = mu_j / gamma_j
    GaussianInt beta;                 // primes of alpha0 outside prod omega_j, or 1
    GaussianInt tau;                  // Z[i]-CRT solution r+si
    Int big_m;                        // M = N(beta * prod omega_j)
};

struct ConstructOptions {
    /// Base-point multiplier; must be nonzero and relatively prime to every
    /// mu_j and every nonzero b_j. Overridden when randomize_seed is set.
    GaussianInt lambda{1};
    /// When set, lambda is drawn deterministically from this seed instead.
    std::optional<unsigned long> randomize_seed;
    /// Candidates examined per prime search before giving up.
    unsigned long prime_candidate_budget = 1'000'000;
    FactorBudget factor_budget{};
};

struct ConstructionResult {
    GaussianLine line;
    ConstructionPlan plan;
};

/// Build a canonical primitive Gaussian line with mu_j | point_at(b_j) for
/// all j. The mu_j must be pairwise relatively prime, none zero or unit.
/// Deterministic for fixed options.
ConstructionResult construct_line(const std::vector<LineConstraint>& constraints,
                                  const ConstructOptions& options = {});

}  // namespace gaussline
