#include "gaussline/divisibility.hpp"

#include "gaussline/crt.hpp"

#include <algorithm>

namespace gaussline {

namespace {

void require_primitive(const GaussianLine& line) {
    if (!line.primitive()) {
        throw std::invalid_argument("line " + line.str() + " is not primitive");
    }
}

void require_usable_beta(const GaussianInt& beta) {
    if (beta.is_zero()) throw std::invalid_argument("beta must be nonzero");
    if (beta.is_unit()) throw std::invalid_argument("beta must not be a unit");
}

Int valuation(Int n, const Int& p) {
    // exact power of p dividing n != 0
    Int v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

Int mod_reduce(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace

DivisorWitness divisor_index(const GaussianLine& line, const GaussianInt& beta) {
    require_primitive(line);
    require_usable_beta(beta);

    // beta | alpha0 + t*delta  iff  N(beta) | conj(beta)*(alpha0 + t*delta),
    // giving one linear congruence per coordinate.
    Int n = beta.norm();
    GaussianInt w = beta.conj() * line.alpha0();
    GaussianInt z = beta.conj() * line.delta();
    auto c1 = solve_linear_congruence(z.re(), -w.re(), n);
    auto c2 = solve_linear_congruence(z.im(), -w.im(), n);
    if (!c1 || !c2) return {};
    auto merged = crt_merge(*c1, *c2);
    if (!merged) return {};

    Int period = nu(beta);
    if (merged->modulus != period) {
        throw std::logic_error("divisor_index: solution period != nu(beta)");
    }
    Int t = mod_reduce(merged->value, period);
    return {true, t, period, t};
}

DivisorWitness brute_force_divisor_index(const GaussianLine& line, const GaussianInt& beta,
                                         unsigned long scan_budget) {
    require_primitive(line);
    require_usable_beta(beta);
    Int period = nu(beta);
    if (period > scan_budget) {
        throw budget_error("brute_force_divisor_index: nu(beta) = " + period.get_str() +
                           " exceeds scan budget");
    }
    for (Int t = 0; t < period; ++t) {
        if (divides(beta, line.point_at(t))) {
            return {true, t, period, t};
        }
    }
    return {};
}

RationalSet rational_set(const GaussianLine& line, const FactorBudget& budget) {
    require_primitive(line);
    if (line.invariant() == 0) return {true, {}};
    return {false, divisors_of(line.invariant(), budget)};
}

bool rational_set_contains(const GaussianLine& line, const Int& r) {
    require_primitive(line);
    return mpz_divisible_p(line.invariant().get_mpz_t(), r.get_mpz_t());
}

bool gp_set_contains(const GaussianLine& line, const GaussianInt& pi) {
    require_primitive(line);
    if (!is_gaussian_prime(pi)) {
        throw std::invalid_argument(pi.str() + " is not a Gaussian prime");
    }
    if (pi.re() == 0 || pi.im() == 0) {
        throw std::invalid_argument(pi.str() +
                                    " is an associate of a rational prime; query rational_set_contains");
    }
    return !divides(pi, line.delta());
}

ExactPowerProfile exact_power_profile(const GaussianLine& line, const Int& p) {
    require_primitive(line);
    if (line.invariant() == 0) {
        throw std::invalid_argument("exact_power_profile requires a nonzero line invariant");
    }
    PrimeClass cls = classify_prime(p);
    switch (cls.tag) {
        case PrimeClassTag::Split: {
            GaussianInt pi = *cls.witness;
            GaussianInt pi_conj = canonical_associate(pi.conj());
            return SplitPowerProfile{pi, pi_conj, !divides(pi, line.delta()),
                                     !divides(pi_conj, line.delta())};
        }
        case PrimeClassTag::Ramified: {
            TwoAdicProfile profile;
            if (divides(GaussianInt{1, 1}, line.delta())) {
                profile.s = 0;
                profile.max_t = 0;
                profile.exact_ts = {Int(0)};
            } else {
                profile.s = valuation(abs(line.invariant()), 2);
                profile.max_t = 2 * profile.s + 1;
                for (Int t = 0; t <= 2 * profile.s; t += 2) profile.exact_ts.push_back(t);
                profile.exact_ts.push_back(profile.max_t);
            }
            return profile;
        }
        case PrimeClassTag::Inert:
            return InertPowerProfile{valuation(abs(line.invariant()), abs(p))};
    }
    throw std::logic_error("exact_power_profile: unreachable");
}

DivisorWitness divisor_set_contains(const GaussianLine& line, const GaussianInt& beta,
                                    const FactorBudget& budget) {
    require_primitive(line);
    require_usable_beta(beta);
    if (line.invariant() == 0) {
        throw std::invalid_argument(
            "divisor_set_contains requires a nonzero line invariant "
            "(real/imaginary lines reduce to rational divisibility)");
    }

    GaussianFactorization fact = factor_gaussian(beta, budget);
    Int inv = abs(line.invariant());

    // Group the factorization: (1+i)-exponent, inert prime powers, and
    // conjugate exponent pairs over each split rational prime.
    struct SplitPair {
        GaussianInt pi_a, pi_b;
        unsigned long e_a = 0, e_b = 0;
    };
    std::vector<SplitPair> split_pairs;
    std::vector<GaussianInt> components;

    for (const auto& [prime, e] : fact.factors) {
        Int pnorm = prime.norm();
        if (pnorm == 2) {
            // w = 0 required when 1+i | delta; otherwise w <= 2s+1.
            if (divides(GaussianInt{1, 1}, line.delta())) return {};
            Int s = valuation(inv, 2);
            if (Int(e) > 2 * s + 1) return {};
            components.push_back(pow(prime, e));
        } else if (prime.im() == 0) {
            // inert q^e: need q^e | invariant
            if (valuation(inv, prime.re()) < Int(e)) return {};
            components.push_back(pow(prime, e));
        } else {
            auto it = std::find_if(split_pairs.begin(), split_pairs.end(),
                                   [&](const SplitPair& sp) { return sp.pi_a.norm() == pnorm; });
            if (it == split_pairs.end()) {
                split_pairs.push_back({prime, canonical_associate(prime.conj()), e, 0});
            } else {
                it->pi_b = prime;
                it->e_b = e;
            }
            components.push_back(pow(prime, e));
        }
    }

    for (const auto& sp : split_pairs) {
        unsigned long m = std::min(sp.e_a, sp.e_b);
        Int p = sp.pi_a.norm();
        if (valuation(inv, p) < Int(m)) return {};
        if (sp.e_a != sp.e_b) {
            const GaussianInt& excess = sp.e_a > sp.e_b ? sp.pi_a : sp.pi_b;
            if (divides(excess, line.delta())) return {};
        }
    }

    // Member: combine the per-prime-power witnesses over Z.
    IntCongruence acc{0, 1};
    for (const GaussianInt& component : components) {
        DivisorWitness w = divisor_index(line, component);
        if (!w.member) throw std::logic_error("divisor_set_contains: component unexpectedly absent");
        auto merged = crt_merge(acc, IntCongruence{*w.residue, *w.modulus});
        if (!merged) throw std::logic_error("divisor_set_contains: incompatible component residues");
        acc = *merged;
    }
    Int period = nu(beta);
    if (acc.modulus != period) {
        throw std::logic_error("divisor_set_contains: combined period != nu(beta)");
    }
    Int t = mod_reduce(acc.value, period);
    return {true, t, period, t};
}

}  // namespace gaussline
