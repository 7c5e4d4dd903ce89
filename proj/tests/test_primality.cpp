#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaussline/primality.hpp"

#include <random>

using namespace gaussline;

namespace {

// Independent trial-division oracle for moderate n.
bool trial_division_is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
    }
    return true;
}

GaussianInt random_gaussian(std::mt19937_64& rng, long span) {
    long a = static_cast<long>(rng() % (2 * span + 1)) - span;
    long b = static_cast<long>(rng() % (2 * span + 1)) - span;
    return {a, b};
}

}  // namespace

TEST_CASE("is_rational_prime on small and worked values") {
    CHECK(is_rational_prime(Int(13)));
    CHECK(!is_rational_prime(Int(1)));
    CHECK(!is_rational_prime(Int(0)));
    CHECK(is_rational_prime(Int(-13)));
    CHECK(is_rational_prime(Int(2)));
    // N(4080+1397i): the oracle decides, not the eyeball.
    Int n(18598009);
    CHECK(is_rational_prime(n) == trial_division_is_prime(n));
    CHECK(is_rational_prime(n));
}

TEST_CASE("is_rational_prime agrees with trial division up to 20000") {
    for (Int n = 0; n <= 20000; ++n) {
        REQUIRE(is_rational_prime(n) == trial_division_is_prime(n));
    }
}

TEST_CASE("is_rational_prime beyond 2^64 (Baillie-PSW regime)") {
    CHECK(is_rational_prime(Int("18446744073709551629")));   // 2^64 + 13
    CHECK(!is_rational_prime(Int("18446744073709551631")));  // 2^64 + 15
    CHECK(is_rational_prime(Int("170141183460469231731687303715884105727")));  // 2^127 - 1
    CHECK(is_rational_prime(Int("618970019642690137449562111")));              // 2^89 - 1
    CHECK(is_rational_prime(Int("1000000000000000000000000000057")));
    CHECK(!is_rational_prime(Int("1000000000000000000000000000001")));
    CHECK(is_rational_prime(Int("10000000000000000000000013")));
    // product of two 21-digit primes, far beyond trial range
    CHECK(!is_rational_prime(Int("10000000000000000016800000000000000005031")));
}

TEST_CASE("classify_prime worked values") {
    PrimeClass p2 = classify_prime(Int(2));
    CHECK(p2.tag == PrimeClassTag::Ramified);
    CHECK(*p2.witness == GaussianInt{1, 1});

    PrimeClass p5 = classify_prime(Int(5));
    CHECK(p5.tag == PrimeClassTag::Split);
    CHECK(*p5.witness == GaussianInt{2, 1});

    PrimeClass p3 = classify_prime(Int(3));
    CHECK(p3.tag == PrimeClassTag::Inert);
    CHECK(!p3.witness.has_value());

    CHECK_THROWS_AS(classify_prime(Int(10)), std::invalid_argument);
}

TEST_CASE("split witnesses have norm p for all split primes below 10^4") {
    for (Int p = 2; p < 10000; ++p) {
        if (!is_rational_prime(p)) continue;
        PrimeClass cls = classify_prime(p);
        if (p == 2) {
            CHECK(cls.witness->norm() == 2);
        } else if (p % 4 == 1) {
            REQUIRE(cls.tag == PrimeClassTag::Split);
            REQUIRE(cls.witness->norm() == p);
            CHECK(cls.witness->re() >= cls.witness->im());
            CHECK(*cls.witness == canonical_associate(*cls.witness));
        } else {
            CHECK(cls.tag == PrimeClassTag::Inert);
        }
    }
}

TEST_CASE("sqrt_minus_one_mod really is a square root of -1") {
    for (Int p : {Int(5), Int(13), Int(17), Int(9973), Int("1000000000000000000000000000057")}) {
        if (p % 4 != 1) continue;
        Int x = sqrt_minus_one_mod(p);
        CHECK(x * x % p == p - 1);
        CHECK(x > 0);
        CHECK(2 * x < p);
    }
}

TEST_CASE("is_gaussian_prime worked values") {
    CHECK(is_gaussian_prime(GaussianInt{1, 1}));
    CHECK(!is_gaussian_prime(GaussianInt{5}));
    CHECK(is_gaussian_prime(GaussianInt{1, 4}));  // norm 17
    CHECK(is_gaussian_prime(GaussianInt{3}));
    CHECK(is_gaussian_prime(GaussianInt{0, -3}));
    CHECK(!is_gaussian_prime(GaussianInt{0}));
    CHECK(!is_gaussian_prime(GaussianInt{1}));
    CHECK(!is_gaussian_prime(GaussianInt{0, 1}));
    CHECK(is_gaussian_prime(GaussianInt{-1, -1}));
    CHECK(!is_gaussian_prime(GaussianInt{2}));  // 2 = -i(1+i)^2 ramifies
}

TEST_CASE("is_gaussian_prime agrees with a divisor scan for norms up to 10^4") {
    // beta is composite iff some divisor gamma has 1 < N(gamma)^2 <= N(beta);
    // scanning the quarter lattice of such gamma suffices.
    const long limit = 100;  // norm 10^4
    for (long a = -limit; a <= limit; ++a) {
        for (long b = -limit; b <= limit; ++b) {
            GaussianInt beta{a, b};
            Int n = beta.norm();
            if (n < 2 || n > 10000) continue;
            bool has_proper_divisor = false;
            for (long c = 0; c * c <= n && !has_proper_divisor; ++c) {
                for (long d = (c == 0 ? 1 : 0); c * c + d * d <= n; ++d) {
                    GaussianInt gamma{c, d};
                    Int gn = gamma.norm();
                    if (gn <= 1 || gn * gn > n) continue;
                    if (divides(gamma, beta)) {
                        has_proper_divisor = true;
                        break;
                    }
                }
            }
            REQUIRE(is_gaussian_prime(beta) == !has_proper_divisor);
        }
    }
}

TEST_CASE("factor_gaussian worked values") {
    GaussianFactorization f1 = factor_gaussian(GaussianInt{2, 6});
    CHECK(f1.unit == GaussianInt{0, -1});
    REQUIRE(f1.factors.size() == 2);
    CHECK(f1.factors[0].first == GaussianInt{1, 1});
    CHECK(f1.factors[0].second == 3);
    CHECK(f1.factors[1].first == GaussianInt{2, 1});
    CHECK(f1.factors[1].second == 1);

    GaussianFactorization f2 = factor_gaussian(GaussianInt{-1});
    CHECK(f2.unit == GaussianInt{-1});
    CHECK(f2.factors.empty());

    GaussianFactorization f3 = factor_gaussian(GaussianInt{13});
    // 13 = -i * (2+3i) * (3+2i) once both primes are canonical associates
    CHECK(f3.unit == GaussianInt{0, -1});
    REQUIRE(f3.factors.size() == 2);
    // conjugate split primes of norm 13, listed in (norm, re, im) order
    CHECK(f3.factors[0].first == GaussianInt{2, 3});
    CHECK(f3.factors[1].first == GaussianInt{3, 2});
    CHECK(f3.factors[0].second == 1);
    CHECK(f3.factors[1].second == 1);

    CHECK_THROWS_AS(factor_gaussian(GaussianInt{0}), std::invalid_argument);
}

TEST_CASE("factor_gaussian round-trips on random values") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 400; ++i) {
        GaussianInt beta = random_gaussian(rng, 700);  // norm up to ~10^6
        if (beta.is_zero()) continue;
        GaussianFactorization f = factor_gaussian(beta);
        CHECK(f.value() == beta);
        CHECK(f.unit.is_unit());
        for (size_t k = 0; k < f.factors.size(); ++k) {
            CHECK(is_gaussian_prime(f.factors[k].first));
            CHECK(f.factors[k].first == canonical_associate(f.factors[k].first));
            if (k > 0) {
                const auto& prev = f.factors[k - 1].first;
                const auto& cur = f.factors[k].first;
                bool ordered = prev.norm() < cur.norm() ||
                               (prev.norm() == cur.norm() &&
                                (prev.re() < cur.re() ||
                                 (prev.re() == cur.re() && prev.im() < cur.im())));
                CHECK(ordered);
            }
        }
    }
}

TEST_CASE("factorization budget errors instead of guessing") {
    FactorBudget tiny{100, 0};
    GaussianInt beta{Int("1000000007"), Int(0)};
    beta = beta * GaussianInt{Int("1000000021"), Int(0)};
    CHECK_THROWS_AS(factor_gaussian(beta, tiny), budget_error);
    CHECK_THROWS_AS(factor_int(Int("1000000007") * Int("1000000021") * 9, tiny), budget_error);
}

TEST_CASE("factor_int basics") {
    auto f = factor_int(Int(8234));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<Int, unsigned long>{2, 1});
    CHECK(f[1] == std::pair<Int, unsigned long>{23, 1});
    CHECK(f[2] == std::pair<Int, unsigned long>{179, 1});
    CHECK(factor_int(Int(1)).empty());

    auto d = divisors_of(Int(8234));
    std::vector<Int> expect{1, 2, 23, 46, 179, 358, 4117, 8234};
    CHECK(d == expect);

    // semiprime beyond the trial bound exercises the rho path
    Int p("1000003"), q("1000033");
    auto g = factor_int(p * q);
    REQUIRE(g.size() == 2);
    CHECK(g[0].first == p);
    CHECK(g[1].first == q);
}
