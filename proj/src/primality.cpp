#include "gaussline/primality.hpp"

#include <algorithm>
#include <cstdlib>

namespace gaussline {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod_u64(u64 base, u64 exp, u64 m) {
    u64 out = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) out = mulmod_u64(out, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return out;
}

bool strong_probable_prime_u64(u64 n, u64 a) {
    // n odd > 2, a reduced; a == 0 counts as a pass.
    a %= n;
    if (a == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    // Deterministic for all n < 2^64 with this base set.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!strong_probable_prime_u64(n, a)) return false;
    }
    return true;
}

bool strong_probable_prime_mpz(const Int& n, unsigned long a) {
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Int x, base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Int nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

// Strong Lucas probable prime test with Selfridge parameters (method A).
bool strong_lucas_probable_prime(const Int& n) {
    // Caller guarantees n odd, n > 2, no tiny factors, not a perfect square.
    long d_param = 5;
    while (true) {
        Int d(d_param);
        int j = mpz_jacobi(d.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0) return false;  // 1 < gcd(|D|, n) < n since |D| < n here
        d_param = d_param > 0 ? -(d_param + 2) : -(d_param - 2);
    }
    Int D(d_param);
    Int Q = (1 - D) / 4;  // P = 1
    Int odd = n + 1;
    unsigned long s = mpz_scan1(odd.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), s);

    const auto mod_n = [&](Int v) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        return r;
    };
    const auto halve = [&](const Int& v) {
        Int w = mpz_odd_p(v.get_mpz_t()) ? v + n : v;
        return mod_n(w / 2);
    };

    Int U(1), V(1), Qk = mod_n(Q);  // U_1, V_1 (P = 1), Q^1
    size_t bits = mpz_sizeinbase(odd.get_mpz_t(), 2);
    for (size_t i = bits - 1; i-- > 0;) {
        // Double the index.
        U = mod_n(U * V);
        V = mod_n(V * V - 2 * Qk);
        Qk = mod_n(Qk * Qk);
        if (mpz_tstbit(odd.get_mpz_t(), i)) {
            Int U2 = halve(U + V);          // (P*U + V)/2
            Int V2 = halve(D * U + V);      // (D*U + P*V)/2
            U = U2;
            V = V2;
            Qk = mod_n(Qk * Q);
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = mod_n(V * V - 2 * Qk);
        if (V == 0) return true;
        Qk = mod_n(Qk * Qk);
    }
    return false;
}

bool is_prime_bpsw(const Int& n) {
    // n > 2^64 here; no small factors below are assumed yet.
    static const unsigned long kSmall[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                           37, 41, 43, 47, 53, 59, 61, 67, 71, 73};
    if (mpz_even_p(n.get_mpz_t())) return false;
    for (unsigned long p : kSmall) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;
    if (!strong_probable_prime_mpz(n, 2)) return false;
    return strong_lucas_probable_prime(n);
}

void charge(unsigned long& budget, unsigned long cost, const char* what) {
    if (budget < cost) throw budget_error(std::string("factorization budget exceeded: ") + what);
    budget -= cost;
}

// Brent's cycle-finding variant of Pollard rho; returns a (possibly trivial)
// divisor of odd composite n. Deterministic for a given polynomial offset c.
Int pollard_rho_brent(const Int& n, unsigned long c, unsigned long& budget) {
    const unsigned long batch = 128;
    Int y(2), q(1), g(1), x, ys;
    unsigned long r = 1;
    while (g == 1) {
        x = y;
        charge(budget, r, "rho");
        for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long lim = std::min(batch, r - k);
            charge(budget, lim, "rho");
            for (unsigned long i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = q * abs(x - y) % n;
            }
            g = ::gcd(q, n);
            k += batch;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            charge(budget, 1, "rho");
            ys = (ys * ys + c) % n;
            g = ::gcd(Int(abs(x - ys)), n);
        } while (g == 1);
    }
    return g;
}

}  // namespace

bool is_rational_prime(const Int& n) {
    Int a = abs(n);
    if (mpz_fits_ulong_p(a.get_mpz_t()) && sizeof(unsigned long) == 8) {
        return is_prime_u64(mpz_get_ui(a.get_mpz_t()));
    }
    if (a < 2) return false;
    return is_prime_bpsw(a);
}

Int sqrt_minus_one_mod(const Int& p) {
    Int e = (p - 1) / 4;
    Int nm1 = p - 1;
    for (unsigned long a = 2;; ++a) {
        Int base(a), x;
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if (x * x % p == nm1) {
            Int other = p - x;
            return x < other ? x : other;
        }
        if (a > 10'000) throw std::logic_error("sqrt_minus_one_mod: no root found (input not prime?)");
    }
}

std::uint64_t sqrt_minus_one_mod_u64(std::uint64_t q) {
    u64 e = (q - 1) / 4;
    for (u64 a = 2;; ++a) {
        u64 x = powmod_u64(a, e, q);
        if (mulmod_u64(x, x, q) == q - 1) return std::min(x, q - x);
        if (a > 10'000) throw std::logic_error("sqrt_minus_one_mod_u64: no root found");
    }
}

PrimeClass classify_prime(const Int& p) {
    if (!is_rational_prime(p)) {
        throw std::invalid_argument("classify_prime: " + p.get_str() + " is not a rational prime");
    }
    Int q = abs(p);
    if (q == 2) return {PrimeClassTag::Ramified, GaussianInt{1, 1}};
    if (q % 4 == 3) return {PrimeClassTag::Inert, std::nullopt};
    Int x = sqrt_minus_one_mod(q);
    GaussianInt w = gcd(GaussianInt{q}, GaussianInt{x, 1});
    if (w.re() < w.im()) w = canonical_associate(w.conj());
    return {PrimeClassTag::Split, w};
}

bool is_gaussian_prime(const GaussianInt& beta) {
    Int n = beta.norm();
    if (n <= 1) return false;
    if (is_rational_prime(n)) return true;  // norm 2 or a split prime's norm
    if (beta.re() == 0 || beta.im() == 0) {
        Int q = abs(beta.re() == 0 ? beta.im() : beta.re());
        return q % 4 == 3 && is_rational_prime(q);
    }
    return false;
}

std::vector<std::pair<Int, unsigned long>> factor_int(Int n, const FactorBudget& budget) {
    if (n < 1) throw std::invalid_argument("factor_int: input must be >= 1");
    std::vector<std::pair<Int, unsigned long>> out;
    if (n == 1) return out;

    const auto strip = [&](const Int& p) {
        unsigned long e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    };

    strip(2);
    strip(3);
    for (unsigned long d = 5; d <= budget.trial_division_bound; d += 6) {
        Int dd(d);
        if (dd * dd > n) break;
        strip(dd);
        strip(dd + 2);
    }

    unsigned long rho_budget = budget.rho_iterations;
    std::vector<Int> pending;
    if (n > 1) pending.push_back(n);
    while (!pending.empty()) {
        Int m = pending.back();
        pending.pop_back();
        if (m == 1) continue;
        if (is_rational_prime(m)) {
            auto it = std::find_if(out.begin(), out.end(),
                                   [&](const auto& f) { return f.first == m; });
            if (it != out.end()) {
                ++it->second;
            } else {
                out.emplace_back(m, 1);
            }
            continue;
        }
        Int d(1);
        for (unsigned long c = 1; d == 1 || d == m; ++c) {
            d = pollard_rho_brent(m, c, rho_budget);
            if (c > 64) throw budget_error("factorization budget exceeded: rho retries");
        }
        pending.push_back(d);
        pending.push_back(m / d);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<Int> divisors_of(const Int& n, const FactorBudget& budget) {
    if (n == 0) throw std::invalid_argument("divisors_of: input must be nonzero");
    auto factors = factor_int(abs(n), budget);
    std::vector<Int> out{1};
    for (const auto& [p, e] : factors) {
        size_t base = out.size();
        Int pk(1);
        for (unsigned long k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GaussianInt GaussianFactorization::value() const {
    GaussianInt out = unit;
    for (const auto& [p, e] : factors) out = out * pow(p, e);
    return out;
}

GaussianFactorization factor_gaussian(const GaussianInt& beta, const FactorBudget& budget) {
    if (beta.is_zero()) throw std::invalid_argument("factor_gaussian: input must be nonzero");
    GaussianFactorization out;
    GaussianInt rest = beta;

    const auto strip = [&](const GaussianInt& pi) {
        unsigned long e = 0;
        while (divides(pi, rest)) {
            rest = exact_div(rest, pi);
            ++e;
        }
        if (e > 0) out.factors.emplace_back(pi, e);
    };

    for (const auto& [p, e] : factor_int(beta.norm(), budget)) {
        (void)e;
        if (p == 2) {
            strip(GaussianInt{1, 1});
        } else if (p % 4 == 3) {
            strip(GaussianInt{p});
        } else {
            GaussianInt pi = *classify_prime(p).witness;
            strip(pi);
            strip(canonical_associate(pi.conj()));
        }
    }
    if (!rest.is_unit()) throw std::logic_error("factor_gaussian: leftover non-unit");
    out.unit = rest;
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        Int na = a.first.norm(), nb = b.first.norm();
        if (na != nb) return na < nb;
        if (a.first.re() != b.first.re()) return a.first.re() < b.first.re();
        return a.first.im() < b.first.im();
    });
    if (out.value() != beta) throw std::logic_error("factor_gaussian: reconstruction mismatch");
    return out;
}

}  // namespace gaussline
