#include "gaussline/crt.hpp"

#include "gaussline/divisibility.hpp"

#include <functional>
#include <random>

namespace gaussline {

namespace {

Int mod_reduce(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Inverse of a mod m over Z, gcd(a, m) == 1, m >= 1.
Int int_inverse(const Int& a, const Int& m) {
    if (m == 1) return 0;
    Int inv;
    if (!mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) {
        throw std::logic_error("int_inverse: not invertible");
    }
    return inv;
}

// Inverse of a mod m over Z[i]; requires gcd(a, m) a unit.
GaussianInt gaussian_inverse(const GaussianInt& a, const GaussianInt& m) {
    XgcdResult r = xgcd(a, m);
    if (!r.g.is_unit()) {
        throw std::invalid_argument("gaussian_inverse: " + a.str() + " is not invertible mod " +
                                    m.str());
    }
    // xgcd canonicalizes g, so g == 1 exactly.
    return divmod(r.x, m).remainder;
}

GaussianInt reduce_mod(const GaussianInt& a, const GaussianInt& m) {
    return divmod(a, m).remainder;
}

}  // namespace

std::optional<IntCongruence> solve_linear_congruence(const Int& a, const Int& b, const Int& m) {
    if (m < 1) throw std::invalid_argument("solve_linear_congruence: modulus must be >= 1");
    Int g = int_gcd(mod_reduce(a, m), m);
    if (g == 0) g = m;  // a == 0 (mod m)
    if (!mpz_divisible_p(b.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
    Int m2 = m / g;
    if (m2 == 1) return IntCongruence{0, 1};
    Int a2 = mod_reduce(a / g, m2);
    Int b2 = mod_reduce(b / g, m2);
    Int t = mod_reduce(int_inverse(a2, m2) * b2, m2);
    return IntCongruence{t, m2};
}

std::optional<IntCongruence> crt_merge(const IntCongruence& x, const IntCongruence& y) {
    Int g = int_gcd(x.modulus, y.modulus);
    Int diff = y.value - x.value;
    if (!mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
    Int lcm = x.modulus / g * y.modulus;
    Int step = y.modulus / g;
    Int k = mod_reduce((diff / g) * int_inverse(mod_reduce(x.modulus / g, step), step), step);
    Int value = mod_reduce(x.value + x.modulus * k, lcm);
    return IntCongruence{value, lcm};
}

CrtSolution crt_gaussian(const std::vector<GaussianCongruence>& congruences) {
    if (congruences.empty()) {
        throw std::invalid_argument("crt_gaussian: empty congruence system");
    }
    for (const auto& c : congruences) {
        if (c.modulus.is_zero() || c.modulus.is_unit()) {
            throw std::invalid_argument("crt_gaussian: modulus " + c.modulus.str() +
                                        " must be neither zero nor a unit");
        }
    }
    for (size_t i = 0; i < congruences.size(); ++i) {
        for (size_t j = i + 1; j < congruences.size(); ++j) {
            if (!gcd(congruences[i].modulus, congruences[j].modulus).is_unit()) {
                throw std::invalid_argument("crt_gaussian: moduli " + congruences[i].modulus.str() +
                                            " and " + congruences[j].modulus.str() +
                                            " are not relatively prime");
            }
        }
    }
    GaussianInt value = reduce_mod(congruences[0].residue, congruences[0].modulus);
    GaussianInt modulus = congruences[0].modulus;
    for (size_t i = 1; i < congruences.size(); ++i) {
        const GaussianInt& m2 = congruences[i].modulus;
        XgcdResult e = xgcd(modulus, m2);  // e.g == 1: modulus*x + m2*y == 1
        GaussianInt combined_mod = modulus * m2;
        // m2*y == 1 (mod modulus), == 0 (mod m2); modulus*x the reverse.
        GaussianInt combined = value * m2 * e.y + congruences[i].residue * modulus * e.x;
        value = reduce_mod(combined, combined_mod);
        modulus = combined_mod;
    }
    return {value, modulus};
}

std::vector<LineConstraint> parse_constraints(const std::string& text) {
    std::vector<LineConstraint> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        size_t at = item.find('@');
        if (at == std::string::npos) {
            throw std::invalid_argument("invalid constraint (expected \"mu@b\"): \"" + item + "\"");
        }
        GaussianInt mu = GaussianInt::parse(item.substr(0, at));
        Int b;
        try {
            b = Int(item.substr(at + 1));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("invalid constraint index: \"" + item.substr(at + 1) + "\"");
        }
        out.push_back({mu, b});
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

LineCrtResult crt_line(const GaussianLine& line, const std::vector<LineConstraint>& constraints,
                       const FactorBudget& budget) {
    if (!line.primitive()) throw std::invalid_argument("crt_line: line is not primitive");
    if (constraints.empty()) throw std::invalid_argument("crt_line: no constraints");
    std::vector<Int> periods;
    for (const auto& c : constraints) periods.push_back(nu(c.mu));
    for (size_t i = 0; i < constraints.size(); ++i) {
        for (size_t j = i + 1; j < constraints.size(); ++j) {
            if (int_gcd(periods[i], periods[j]) != 1) {
                throw std::invalid_argument("crt_line: nu(" + constraints[i].mu.str() + ") and nu(" +
                                            constraints[j].mu.str() + ") are not relatively prime");
            }
        }
    }
    IntCongruence acc{0, 1};
    for (size_t i = 0; i < constraints.size(); ++i) {
        // Membership check per Theorem-6.2 factoring on generic lines; the
        // real/imaginary lines fall back to the periodicity query.
        DivisorWitness w = line.invariant() == 0
                               ? divisor_index(line, constraints[i].mu)
                               : divisor_set_contains(line, constraints[i].mu, budget);
        if (!w.member) {
            throw std::invalid_argument("crt_line: " + constraints[i].mu.str() +
                                        " is not in the divisor set of " + line.str());
        }
        IntCongruence c{mod_reduce(*w.residue - constraints[i].b, periods[i]), periods[i]};
        auto merged = crt_merge(acc, c);
        if (!merged) throw std::logic_error("crt_line: coprime congruences failed to merge");
        acc = *merged;
    }
    return {acc.value, acc.modulus};
}

namespace {

GaussianInt pick_lambda(const std::vector<LineConstraint>& constraints,
                        const ConstructOptions& options) {
    const auto valid = [&](const GaussianInt& cand) {
        if (cand.is_zero()) return false;
        for (const auto& c : constraints) {
            if (!gcd(cand, c.mu).is_unit()) return false;
            if (c.b != 0 && !gcd(cand, GaussianInt{c.b}).is_unit()) return false;
        }
        return true;
    };
    if (!options.randomize_seed) {
        if (!valid(options.lambda)) {
            throw std::invalid_argument("construct_line: lambda " + options.lambda.str() +
                                        " must be nonzero and relatively prime to every mu_j and "
                                        "every nonzero b_j");
        }
        return options.lambda;
    }
    std::mt19937_64 rng(*options.randomize_seed);
    for (int tries = 0; tries < 4096; ++tries) {
        long x = static_cast<long>(rng() % 81) - 40;
        long y = static_cast<long>(rng() % 81) - 40;
        GaussianInt cand{x, y};
        if (valid(cand)) return cand;
    }
    throw std::logic_error("construct_line: failed to draw a valid lambda");
}

// First prime p == target (mod m) with p > floor_bound satisfying accept(p).
Int prime_in_progression(const Int& target, const Int& m, const Int& floor_bound,
                         unsigned long candidate_budget,
                         const std::function<bool(const Int&)>& accept) {
    Int t = mod_reduce(target, m);
    // Smallest value == t (mod m) strictly above max(floor_bound, 1).
    Int base = floor_bound > 1 ? floor_bound : Int(1);
    Int p = base + 1 + mod_reduce(t - (base + 1), m);
    for (unsigned long used = 0; used < candidate_budget; ++used, p += m) {
        if (is_rational_prime(p) && accept(p)) return p;
    }
    throw budget_error("construct_line: prime search budget exceeded");
}

}  // namespace

ConstructionResult construct_line(const std::vector<LineConstraint>& constraints,
                                  const ConstructOptions& options) {
    if (constraints.empty()) throw std::invalid_argument("construct_line: no constraints");
    for (const auto& c : constraints) {
        if (c.mu.is_zero() || c.mu.is_unit()) {
            throw std::invalid_argument("construct_line: modulus " + c.mu.str() +
                                        " must be neither zero nor a unit");
        }
    }
    for (size_t i = 0; i < constraints.size(); ++i) {
        for (size_t j = i + 1; j < constraints.size(); ++j) {
            if (!gcd(constraints[i].mu, constraints[j].mu).is_unit()) {
                throw std::invalid_argument("construct_line: moduli " + constraints[i].mu.str() +
                                            " and " + constraints[j].mu.str() +
                                            " are not relatively prime");
            }
        }
    }

    ConstructionPlan plan;
    plan.lambda = pick_lambda(constraints, options);

    // alpha0 = lambda * prod gamma_j with gamma_j = gcd(mu_j, b_j).
    GaussianInt alpha0 = plan.lambda;
    for (const auto& c : constraints) {
        GaussianInt gamma = c.b == 0 ? canonical_associate(c.mu) : gcd(c.mu, GaussianInt{c.b});
        plan.gammas.push_back(gamma);
        alpha0 = alpha0 * gamma;
    }

    GaussianInt omega_prod{1};
    for (size_t j = 0; j < constraints.size(); ++j) {
        GaussianInt omega = exact_div(constraints[j].mu, plan.gammas[j]);
        plan.omegas.push_back(omega);
        omega_prod = omega_prod * omega;
    }
    for (size_t i = 0; i < plan.omegas.size(); ++i) {
        for (size_t j = i + 1; j < plan.omegas.size(); ++j) {
            if (!gcd(plan.omegas[i], plan.omegas[j]).is_unit()) {
                throw std::logic_error("construct_line: omegas are not pairwise relatively prime");
            }
        }
    }

    // beta = product of the distinct primes dividing alpha0 but not prod omega.
    plan.beta = GaussianInt{1};
    if (!alpha0.is_unit()) {
        for (const auto& [prime, e] : factor_gaussian(alpha0, options.factor_budget).factors) {
            (void)e;
            if (!divides(prime, omega_prod)) plan.beta = plan.beta * prime;
        }
    }

    // The k+1 congruences: x == 1 (mod beta), x == -(alpha0/gamma_j) *
    // kappa_j^{-1} (mod omega_j); unit moduli are vacuous and skipped.
    // (omega_j is a unit exactly when mu_j | b_j, where mu_j | alpha0 holds
    // outright and the j-th congruence carries no content.)
    std::vector<GaussianCongruence> system;
    if (!plan.beta.is_unit()) system.push_back({GaussianInt{1}, plan.beta});
    for (size_t j = 0; j < constraints.size(); ++j) {
        const GaussianInt& omega = plan.omegas[j];
        if (omega.is_unit()) continue;
        GaussianInt kappa = exact_div(GaussianInt{constraints[j].b}, plan.gammas[j]);
        if (!gcd(kappa, omega).is_unit()) {
            throw std::logic_error("construct_line: kappa_j not invertible mod omega_j");
        }
        GaussianInt residue = -exact_div(alpha0, plan.gammas[j]) * gaussian_inverse(kappa, omega);
        system.push_back({residue, omega});
    }
    if (system.empty()) {
        // Only possible when alpha0 is a unit and every omega_j is one too,
        // which the non-unit mu_j rule excludes.
        throw std::logic_error("construct_line: empty congruence system");
    }

    CrtSolution sol = crt_gaussian(system);
    plan.tau = sol.value;
    GaussianInt full_modulus = plan.beta * omega_prod;
    plan.big_m = full_modulus.norm();
    if (!gcd(plan.tau, full_modulus).is_unit()) {
        throw std::logic_error("construct_line: tau not relatively prime to the modulus");
    }

    const Int& r = plan.tau.re();
    const Int& s = plan.tau.im();
    const Int& M = plan.big_m;
    const GaussianInt& a0 = alpha0;
    // Exact form of the base-point-minimality inequality: 2|ac+bd| < c^2+d^2.
    const auto vertex_ok = [&](const Int& c, const Int& d) {
        return 2 * abs(a0.re() * c + a0.im() * d) < c * c + d * d;
    };

    Int c, d;
    if (s == 0) {
        Int p = prime_in_progression(r, M, M, options.prime_candidate_budget,
                                     [&](const Int& cand) { return vertex_ok(cand, M); });
        c = p;
        d = M;
    } else if (r == 0) {
        Int p = prime_in_progression(s, M, M, options.prime_candidate_budget,
                                     [&](const Int& cand) { return vertex_ok(M, cand); });
        c = M;
        d = p;
    } else {
        // h = least positive divisor of r with gcd(r/h, M) = 1.
        Int h(0);
        for (const Int& cand : divisors_of(r, options.factor_budget)) {
            if (int_gcd(r / cand, M) == 1) {
                h = cand;
                break;
            }
        }
        if (h == 0) throw std::logic_error("construct_line: no usable divisor of r");
        Int p = prime_in_progression(r / h, M, abs(s), options.prime_candidate_budget,
                                     [&](const Int& cand) { return vertex_ok(cand * h, s); });
        c = p * h;
        d = s;
        if (int_gcd(c, d) != 1) throw std::logic_error("construct_line: gcd(ph, s) != 1");
    }

    GaussianInt delta{c, d};
    if (!divides(full_modulus, delta - plan.tau)) {
        throw std::logic_error("construct_line: delta does not match tau mod beta*prod(omega)");
    }

    GaussianLine line = GaussianLine::from_point_direction(alpha0, delta);
    if (line.alpha0() != alpha0 || line.delta() != delta || !line.primitive()) {
        throw std::logic_error("construct_line: constructed line failed canonicality check");
    }
    for (const auto& cst : constraints) {
        if (!divides(cst.mu, line.point_at(cst.b))) {
            throw std::logic_error("construct_line: divisibility postcondition failed for " +
                                   cst.mu.str());
        }
    }
    return {line, plan};
}

}  // namespace gaussline
