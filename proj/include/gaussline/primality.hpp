#pragma once

#include "gaussline/gaussian_int.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace gaussline {

/// Work limits for integer factorization. Exceeding them raises budget_error,
/// never a wrong answer.
struct FactorBudget {
    unsigned long trial_division_bound = 1'000'000;  // largest trial divisor
    unsigned long rho_iterations = 50'000'000;       // total Pollard-rho steps
};

/// True iff |n| is a rational prime. Deterministic Miller-Rabin for
/// |n| < 2^64; Baillie-PSW (strong base-2 + strong Lucas) above, for which
/// no counterexample is known.
bool is_rational_prime(const Int& n);

enum class PrimeClassTag { Ramified, Split, Inert };

struct PrimeClass {
    PrimeClassTag tag;
    // Prime over p for Ramified (1+i) and Split (norm p); absent for Inert.
    std::optional<GaussianInt> witness;
};

/// Factorization type of the rational prime p in Z[i]. Split witnesses are
/// normalized to the canonical associate with re >= im. Throws if p is not
/// prime.
PrimeClass classify_prime(const Int& p);

/// True iff beta is a Gaussian prime: N(beta) = 2, N(beta) a rational prime
/// (necessarily 2 or 1 mod 4), or beta an associate of an inert rational
/// prime q = 3 mod 4.
bool is_gaussian_prime(const GaussianInt& beta);

struct GaussianFactorization {
    GaussianInt unit;  // one of 1, -1, i, -i
    // (canonical-associate prime, exponent), sorted by (norm, re, im).
    std::vector<std::pair<GaussianInt, unsigned long>> factors;

    /// Multiplies the unit and prime powers back out.
    GaussianInt value() const;
};

/// Unique factorization of beta != 0, obtained by factoring N(beta) over Z
/// and splitting each rational prime.
GaussianFactorization factor_gaussian(const GaussianInt& beta,
                                      const FactorBudget& budget = {});

/// Prime factorization of n >= 1 as (prime, exponent) sorted by prime.
/// Trial division up to the budget bound, then Pollard rho (Brent).
std::vector<std::pair<Int, unsigned long>> factor_int(Int n, const FactorBudget& budget = {});

/// All positive divisors of |n| (n != 0), sorted ascending.
std::vector<Int> divisors_of(const Int& n, const FactorBudget& budget = {});

/// Least x in (0, p/2) with x^2 = -1 (mod p); requires p prime, p = 1 mod 4.
Int sqrt_minus_one_mod(const Int& p);

/// uint64 variant used by sieving code; q prime, q = 1 mod 4.
std::uint64_t sqrt_minus_one_mod_u64(std::uint64_t q);

}  // namespace gaussline
