#pragma once

#include "gaussline/gaussian_int.hpp"
#include "gaussline/line.hpp"
#include "gaussline/primality.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace gaussline {

/// Answer to "does beta divide some point of L, and where?". Divisibility by
/// beta along a line is periodic with period nu(beta); a member's witness
/// indices are exactly residue + modulus*Z.
struct DivisorWitness {
    bool member = false;
    std::optional<Int> residue;        // t with 0 <= t < nu(beta)
    std::optional<Int> modulus;        // nu(beta)
    std::optional<Int> witness_index;  // least nonnegative index, == residue
};

/// Periodicity-based divisor query: reduces beta | alpha0 + t*delta to two
/// linear congruences mod N(beta) via conjugate multiplication, intersects
/// them, and reduces to mod nu(beta). Requires L primitive and beta neither
/// zero nor a unit.
DivisorWitness divisor_index(const GaussianLine& line, const GaussianInt& beta);

/// Testing oracle with the identical contract: scans n in [0, nu(beta))
/// testing divisibility directly. Throws budget_error when nu(beta) exceeds
/// scan_budget.
DivisorWitness brute_force_divisor_index(const GaussianLine& line, const GaussianInt& beta,
                                         unsigned long scan_budget = 10'000'000);

/// The rational integers dividing some point of L are exactly the divisors
/// of the line invariant; infinite only on the real and imaginary lines.
struct RationalSet {
    bool infinite = false;
    std::vector<Int> divisors;  // positive divisors of |invariant|, ascending
};
RationalSet rational_set(const GaussianLine& line, const FactorBudget& budget = {});

/// r divides some point of L iff r divides the line invariant.
bool rational_set_contains(const GaussianLine& line, const Int& r);

/// A non-rational Gaussian prime divides some point of L iff it does not
/// divide delta. Throws for associates of rational primes (query
/// rational_set_contains for those).
bool gp_set_contains(const GaussianLine& line, const GaussianInt& pi);

/// Exact (1+i)-power divisibility pattern of a line with 2^s the exact power
/// of 2 in the invariant: exponents t with (1+i)^t exactly dividing some
/// point are {0, 2, ..., 2s} and 2s+1; only t = 0 when 1+i divides delta.
struct TwoAdicProfile {
    Int s;
    Int max_t;                // 2s+1, or 0 when 1+i divides delta
    std::vector<Int> exact_ts;
};

/// p = 1 (mod 4): for each prime over p, every power exactly divides some
/// point iff the prime does not divide delta.
struct SplitPowerProfile {
    GaussianInt pi;
    GaussianInt pi_conj;
    bool pi_all_powers;
    bool pi_conj_all_powers;
};

/// p = 3 (mod 4): p^k exactly divides some point iff k <= s, where p^s is
/// the exact power of p in the invariant.
struct InertPowerProfile {
    Int s;
};

using ExactPowerProfile = std::variant<SplitPowerProfile, TwoAdicProfile, InertPowerProfile>;

/// Exact prime-power division profile for the rational prime p on a
/// primitive line with nonzero invariant.
ExactPowerProfile exact_power_profile(const GaussianLine& line, const Int& p);

/// Full divisor-set membership for beta != 0, non-unit, on a primitive line
/// with nonzero invariant. Decides prime-wise from the factorization of
/// beta; on membership the witness residue is the CRT combination of the
/// per-prime-power divisor_index results.
DivisorWitness divisor_set_contains(const GaussianLine& line, const GaussianInt& beta,
                                    const FactorBudget& budget = {});

}  // namespace gaussline
