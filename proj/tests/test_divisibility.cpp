#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaussline/divisibility.hpp"

#include <random>
#include <set>

using namespace gaussline;

namespace {

GaussianInt random_gaussian(std::mt19937_64& rng, long span) {
    long a = static_cast<long>(rng() % (2 * span + 1)) - span;
    long b = static_cast<long>(rng() % (2 * span + 1)) - span;
    return {a, b};
}

// Random primitive line with coefficient magnitudes <= span; Delta != 0 when
// nonzero_invariant is set.
GaussianLine random_primitive_line(std::mt19937_64& rng, long span, bool nonzero_invariant = true) {
    while (true) {
        GaussianInt p = random_gaussian(rng, span);
        GaussianInt d = random_gaussian(rng, span);
        if (d.is_zero()) continue;
        GaussianLine line = GaussianLine::from_point_direction(p, d);
        if (!line.primitive()) continue;
        if (nonzero_invariant && line.invariant() == 0) continue;
        if (line.alpha0().re() > span || line.alpha0().re() < -span) continue;
        return line;
    }
}

// A divisor-set member built from prime factors of an actual point.
GaussianInt member_sample(const GaussianLine& line, std::mt19937_64& rng) {
    while (true) {
        Int k(static_cast<long>(rng() % 15));
        GaussianInt pt = line.point_at(k);
        if (pt.is_zero() || pt.is_unit()) continue;
        auto factors = factor_gaussian(pt).factors;
        GaussianInt out{1};
        for (const auto& [prime, e] : factors) {
            unsigned long keep = rng() % (e + 1);
            out = out * pow(prime, keep);
        }
        if (!out.is_unit()) return out;
    }
}

// Exact exponent of pi in x != 0.
long gauss_valuation(GaussianInt x, const GaussianInt& pi) {
    long v = 0;
    while (divides(pi, x)) {
        x = exact_div(x, pi);
        ++v;
    }
    return v;
}

}  // namespace

TEST_CASE("divisor_index worked values on the vertical line") {
    GaussianLine line = GaussianLine::parse("1;i");

    DivisorWitness w1 = divisor_index(line, GaussianInt{1, 2});
    REQUIRE(w1.member);
    CHECK(*w1.residue == 2);
    CHECK(*w1.modulus == 5);
    CHECK(*w1.witness_index == 2);

    DivisorWitness w2 = divisor_index(line, GaussianInt{1, -2});
    REQUIRE(w2.member);
    CHECK(*w2.residue == 3);
    CHECK(*w2.modulus == 5);

    DivisorWitness w3 = divisor_index(line, GaussianInt{5});
    CHECK(!w3.member);
    CHECK(!w3.residue.has_value());
    CHECK(!w3.witness_index.has_value());
}

TEST_CASE("divisor_index input validation") {
    GaussianLine line = GaussianLine::parse("1;i");
    CHECK_THROWS_AS(divisor_index(line, GaussianInt{0}), std::invalid_argument);
    CHECK_THROWS_AS(divisor_index(line, GaussianInt{0, 1}), std::invalid_argument);
    GaussianLine bad = GaussianLine::from_point_direction(GaussianInt{3, 4}, GaussianInt{2, 1});
    REQUIRE(!bad.primitive());
    CHECK_THROWS_AS(divisor_index(bad, GaussianInt{3}), std::invalid_argument);
}

TEST_CASE("brute_force_divisor_index worked values") {
    GaussianLine v = GaussianLine::parse("1;i");
    DivisorWitness w1 = brute_force_divisor_index(v, GaussianInt{1, 2});
    REQUIRE(w1.member);
    CHECK(*w1.residue == 2);

    GaussianLine l2 = GaussianLine::parse("1;1+2i");
    DivisorWitness w2 = brute_force_divisor_index(l2, GaussianInt{2});
    REQUIRE(w2.member);
    CHECK(*w2.residue == 1);  // alpha_1 = 2+2i
    CHECK(*w2.modulus == 2);

    CHECK(!brute_force_divisor_index(v, GaussianInt{3}).member);

    CHECK_THROWS_AS(brute_force_divisor_index(v, GaussianInt{1000, 1}, 100), budget_error);
}

TEST_CASE("divisor_index matches the brute-force oracle") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 6; ++trial) {
        GaussianLine line = random_primitive_line(rng, 20);
        for (long a = -17; a <= 17; ++a) {
            for (long b = -17; b <= 17; ++b) {
                GaussianInt beta{a, b};
                if (beta.norm() <= 1 || beta.norm() > 300) continue;
                DivisorWitness fast = divisor_index(line, beta);
                DivisorWitness slow = brute_force_divisor_index(line, beta);
                REQUIRE(fast.member == slow.member);
                if (fast.member) {
                    REQUIRE(*fast.residue == *slow.residue);
                    REQUIRE(*fast.modulus == *slow.modulus);
                    REQUIRE(divides(beta, line.point_at(*fast.witness_index)));
                }
            }
        }
    }
}

TEST_CASE("periodicity: members recur exactly every nu(beta)") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 40; ++trial) {
        GaussianLine line = random_primitive_line(rng, 12);
        GaussianInt beta = member_sample(line, rng);
        if (beta.norm() > 4000) continue;
        DivisorWitness w = divisor_index(line, beta);
        REQUIRE(w.member);
        Int period = *w.modulus;
        CHECK(period == nu(beta));
        std::set<Int> hits;
        for (Int n = 0; n < 3 * period; ++n) {
            if (divides(beta, line.point_at(n))) hits.insert(n);
        }
        std::set<Int> expect{*w.residue, *w.residue + period, *w.residue + 2 * period};
        REQUIRE(hits == expect);
    }
}

TEST_CASE("rational_set worked values") {
    RationalSet rs = rational_set(GaussianLine::parse("1;6297+8234i"));
    CHECK(!rs.infinite);
    std::vector<Int> expect{1, 2, 23, 46, 179, 358, 4117, 8234};
    CHECK(rs.divisors == expect);

    RationalSet trivial = rational_set(GaussianLine::parse("1;i"));
    CHECK(trivial.divisors == std::vector<Int>{1});

    RationalSet real_line = rational_set(GaussianLine::parse("0;1"));
    CHECK(real_line.infinite);
    CHECK(real_line.divisors.empty());
    for (long r = 1; r <= 50; ++r) {
        CHECK(rational_set_contains(GaussianLine::parse("0;1"), Int(r)));
    }
    CHECK(rational_set_contains(GaussianLine::parse("1;6297+8234i"), Int(46)));
    CHECK(!rational_set_contains(GaussianLine::parse("1;6297+8234i"), Int(7)));
}

TEST_CASE("rational_set equals the brute-force set") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 12; ++trial) {
        GaussianLine line = random_primitive_line(rng, 20);
        Int bound = abs(line.invariant());
        std::vector<Int> brute;
        for (Int r = 1; r <= bound; ++r) {
            bool hit = false;
            for (Int n = 0; n < r && !hit; ++n) {
                hit = divides(GaussianInt{r}, line.point_at(n));
            }
            if (hit) brute.push_back(r);
        }
        CHECK(rational_set(line).divisors == brute);
    }
}

TEST_CASE("gp_set_contains worked values and validation") {
    CHECK(gp_set_contains(GaussianLine::parse("1;i"), GaussianInt{1, 2}));
    CHECK(!gp_set_contains(GaussianLine::parse("1;2+i"), GaussianInt{2, 1}));
    CHECK(gp_set_contains(GaussianLine::parse("1;2+i"), GaussianInt{2, -1}));

    CHECK_THROWS_AS(gp_set_contains(GaussianLine::parse("1;i"), GaussianInt{3}),
                    std::invalid_argument);  // rational prime: different query
    CHECK_THROWS_AS(gp_set_contains(GaussianLine::parse("1;i"), GaussianInt{3, 3}),
                    std::invalid_argument);  // not prime
    CHECK(gp_set_contains(GaussianLine::parse("1;i"), GaussianInt{4, 1}));  // norm 17, prime
}

TEST_CASE("gp_set membership has a witness within one period") {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 10; ++trial) {
        GaussianLine line = random_primitive_line(rng, 15);
        for (Int q = 5; q < 200; ++q) {
            if (!is_rational_prime(q) || q % 4 != 1) continue;
            GaussianInt pi = *classify_prime(q).witness;
            GaussianInt pi_conj = canonical_associate(pi.conj());
            for (const GaussianInt& prime : {pi, pi_conj}) {
                bool member = gp_set_contains(line, prime);
                bool witnessed = false;
                for (Int n = 0; n < q && !witnessed; ++n) {
                    witnessed = divides(prime, line.point_at(n));
                }
                REQUIRE(member == witnessed);
            }
            // Corollary: at least one of the conjugates divides somewhere.
            CHECK((gp_set_contains(line, pi) || gp_set_contains(line, pi_conj)));
        }
    }
}

TEST_CASE("exact_power_profile worked values") {
    auto two_adic = std::get<TwoAdicProfile>(exact_power_profile(GaussianLine::parse("1;1+2i"), 2));
    CHECK(two_adic.s == 1);
    CHECK(two_adic.max_t == 3);
    CHECK(two_adic.exact_ts == std::vector<Int>{0, 2, 3});

    auto split = std::get<SplitPowerProfile>(exact_power_profile(GaussianLine::parse("1;i"), 5));
    CHECK(split.pi_all_powers);
    CHECK(split.pi_conj_all_powers);

    auto inert =
        std::get<InertPowerProfile>(exact_power_profile(GaussianLine::parse("1;6297+8234i"), 23));
    CHECK(inert.s == 1);

    // 1+i | delta: only the trivial exponent
    auto ramified_delta =
        std::get<TwoAdicProfile>(exact_power_profile(GaussianLine::parse("1;1+i"), 2));
    CHECK(ramified_delta.s == 0);
    CHECK(ramified_delta.max_t == 0);
    CHECK(ramified_delta.exact_ts == std::vector<Int>{0});

    CHECK_THROWS_AS(exact_power_profile(GaussianLine::parse("0;1"), 2), std::invalid_argument);
    CHECK_THROWS_AS(exact_power_profile(GaussianLine::parse("1;i"), 6), std::invalid_argument);
}

TEST_CASE("two-adic profile matches a brute-force valuation scan") {
    // engineered invariants: Delta = a on the vertical line a;i
    for (long a : {1, 2, 4, 3, 12}) {
        GaussianLine line = GaussianLine::parse(GaussianInt{a}.str() + ";i");
        auto profile = std::get<TwoAdicProfile>(exact_power_profile(line, 2));
        long s = mpz_scan1(Int(a).get_mpz_t(), 0);
        CHECK(profile.s == s);
        std::set<long> seen;
        Int span = 4 * Int(1) * (1 << (2 * (s + 1)));  // generous full period
        for (Int n = 0; n < span; ++n) {
            seen.insert(gauss_valuation(line.point_at(n), GaussianInt{1, 1}));
        }
        std::set<long> expect;
        for (const Int& t : profile.exact_ts) expect.insert(t.get_si());
        CHECK(seen == expect);
    }
}

TEST_CASE("inert profile matches a brute-force valuation scan") {
    for (long a : {1, 3, 9, 27, 5}) {  // v_3(Delta) = 0,1,2,3,0
        GaussianLine line = GaussianLine::parse(GaussianInt{a}.str() + ";i");
        auto profile = std::get<InertPowerProfile>(exact_power_profile(line, 3));
        long s = 0;
        for (long x = a; x % 3 == 0; x /= 3) ++s;
        CHECK(profile.s == s);
        std::set<long> seen;
        Int span = 4;
        for (long k = 0; k <= s; ++k) span *= 3;
        for (Int n = 0; n < span; ++n) {
            seen.insert(gauss_valuation(line.point_at(n), GaussianInt{3}));
        }
        std::set<long> expect;
        for (long k = 0; k <= s; ++k) expect.insert(k);
        CHECK(seen == expect);
    }
}

TEST_CASE("split profile: every power appears exactly when the prime misses delta") {
    GaussianLine line = GaussianLine::parse("1;i");
    GaussianInt pi{2, 1};
    // pi^r exactly divides some point with index inside [0, 5^(r+1))
    for (long r = 1; r <= 3; ++r) {
        bool found = false;
        Int span = 1;
        for (long k = 0; k <= r; ++k) span *= 5;
        for (Int n = 0; n < span && !found; ++n) {
            found = gauss_valuation(line.point_at(n), pi) == r;
        }
        CHECK(found);
    }
    // and on a line whose delta the prime divides, no power at all
    GaussianLine blocked = GaussianLine::parse("1;2+i");
    auto profile = std::get<SplitPowerProfile>(exact_power_profile(blocked, 5));
    CHECK(!profile.pi_all_powers);       // pi = 2+i divides delta
    CHECK(profile.pi_conj_all_powers);   // conjugate does not
    for (Int n = 0; n < 25; ++n) {
        CHECK(gauss_valuation(blocked.point_at(n), GaussianInt{2, 1}) == 0);
    }
}

TEST_CASE("divisor_set_contains worked values") {
    GaussianLine v = GaussianLine::parse("1;i");
    CHECK(!divisor_set_contains(v, GaussianInt{5}).member);

    DivisorWitness w = divisor_set_contains(v, GaussianInt{-3, 4});
    REQUIRE(w.member);
    CHECK(*w.witness_index == 7);
    CHECK(*w.modulus == 25);

    GaussianLine l2 = GaussianLine::parse("1;1+2i");
    DivisorWitness w2 = divisor_set_contains(l2, GaussianInt{2, 2});  // 2(1+i), w=3 <= 2s+1
    REQUIRE(w2.member);
    CHECK(*w2.witness_index == 1);

    CHECK_THROWS_AS(divisor_set_contains(GaussianLine::parse("0;1"), GaussianInt{3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(divisor_set_contains(v, GaussianInt{0, 1}), std::invalid_argument);
}

TEST_CASE("divisor_set_contains matches brute force and divisor_index") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 5; ++trial) {
        GaussianLine line = random_primitive_line(rng, 20);
        for (long a = -17; a <= 17; ++a) {
            for (long b = -17; b <= 17; ++b) {
                GaussianInt beta{a, b};
                if (beta.norm() <= 1 || beta.norm() > 300) continue;
                DivisorWitness via_factor = divisor_set_contains(line, beta);
                DivisorWitness via_index = divisor_index(line, beta);
                DivisorWitness brute = brute_force_divisor_index(line, beta);
                REQUIRE(via_factor.member == brute.member);
                REQUIRE(via_index.member == brute.member);
                if (brute.member) {
                    REQUIRE(*via_factor.residue == *brute.residue);
                    REQUIRE(*via_index.residue == *brute.residue);
                    REQUIRE(*via_factor.modulus == *brute.modulus);
                }
            }
        }
    }
}

TEST_CASE("closure under coprime-period products") {
    std::mt19937_64 rng(127);
    int done = 0;
    while (done < 40) {
        GaussianLine line = random_primitive_line(rng, 12);
        GaussianInt beta = member_sample(line, rng);
        GaussianInt gamma = member_sample(line, rng);
        Int g;
        mpz_gcd(g.get_mpz_t(), nu(beta).get_mpz_t(), nu(gamma).get_mpz_t());
        if (g != 1) continue;
        GaussianInt product = beta * gamma;
        if (product.norm() > 500'000) continue;
        ++done;
        DivisorWitness w = divisor_set_contains(line, product);
        CHECK(w.member);
        if (w.member) CHECK(divides(product, line.point_at(*w.witness_index)));
    }
}
