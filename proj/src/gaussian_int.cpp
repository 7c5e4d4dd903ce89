#include "gaussline/gaussian_int.hpp"

#include <cctype>
#include <ostream>

namespace gaussline {

namespace {

// floor((2p + q - 1) / (2q)) == round-to-nearest of p/q with ties toward
// negative infinity; requires q > 0.
Int round_half_down(const Int& p, const Int& q) {
    Int num = 2 * p + q - 1;
    Int den = 2 * q;
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

bool parse_digits(const std::string& s, size_t& pos, Int& out) {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) return false;
    out = Int(s.substr(start, pos - start));
    return true;
}

}  // namespace

GaussianInt GaussianInt::parse(const std::string& text) {
    const auto fail = [&]() -> GaussianInt {
        throw std::invalid_argument("invalid Gaussian integer: \"" + text + "\"");
    };
    size_t pos = 0;
    int sign1 = 1;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        sign1 = text[pos] == '-' ? -1 : 1;
        ++pos;
    }
    // Pure imaginary unit: "i" / "-i".
    if (pos < text.size() && text[pos] == 'i') {
        ++pos;
        if (pos != text.size()) return fail();
        return {0, sign1};
    }
    Int first;
    if (!parse_digits(text, pos, first)) return fail();
    if (pos == text.size()) return {sign1 * first, 0};
    if (text[pos] == 'i') {
        ++pos;
        if (pos != text.size()) return fail();
        return {0, sign1 * first};
    }
    if (text[pos] != '+' && text[pos] != '-') return fail();
    int sign2 = text[pos] == '-' ? -1 : 1;
    ++pos;
    Int second = 1;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        if (!parse_digits(text, pos, second)) return fail();
    }
    if (pos >= text.size() || text[pos] != 'i') return fail();
    ++pos;
    if (pos != text.size()) return fail();
    return {sign1 * first, sign2 * second};
}

std::string GaussianInt::str() const {
    if (im_ == 0) return re_.get_str();
    std::string out;
    if (re_ != 0) {
        out = re_.get_str();
        if (im_ > 0) out += '+';
    }
    if (im_ == 1) {
        out += 'i';
    } else if (im_ == -1) {
        out += "-i";
    } else {
        out += im_.get_str();
        out += 'i';
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const GaussianInt& x) { return os << x.str(); }

DivModResult divmod(const GaussianInt& num, const GaussianInt& den) {
    if (den.is_zero()) throw std::invalid_argument("divmod: division by zero");
    Int n = den.norm();
    GaussianInt prod = num * den.conj();
    GaussianInt q{round_half_down(prod.re(), n), round_half_down(prod.im(), n)};
    GaussianInt r = num - q * den;
    return {q, r};
}

bool divides(const GaussianInt& den, const GaussianInt& num) {
    if (den.is_zero()) throw std::invalid_argument("divides: zero divisor");
    Int n = den.norm();
    GaussianInt prod = num * den.conj();
    return mpz_divisible_p(prod.re().get_mpz_t(), n.get_mpz_t()) &&
           mpz_divisible_p(prod.im().get_mpz_t(), n.get_mpz_t());
}

GaussianInt exact_div(const GaussianInt& num, const GaussianInt& den) {
    auto [q, r] = divmod(num, den);
    if (!r.is_zero()) throw std::invalid_argument("exact_div: not divisible");
    return q;
}

GaussianInt times_unit_power(const GaussianInt& beta, int k) {
    GaussianInt out = beta;
    for (int j = 0; j < (k % 4 + 4) % 4; ++j) out = GaussianInt{-out.im(), out.re()};
    return out;
}

GaussianInt canonical_associate(const GaussianInt& beta) {
    if (beta.is_zero()) return beta;
    GaussianInt cand = beta;
    for (int k = 0; k < 4; ++k) {
        if (cand.re() > 0 && cand.im() >= 0) return cand;
        cand = GaussianInt{-cand.im(), cand.re()};  // multiply by i
    }
    throw std::logic_error("canonical_associate: no associate in canonical quadrant");
}

GaussianInt gcd(const GaussianInt& a, const GaussianInt& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd(0,0) is undefined");
    GaussianInt r0 = a, r1 = b;
    while (!r1.is_zero()) {
        GaussianInt r = divmod(r0, r1).remainder;
        r0 = r1;
        r1 = r;
    }
    return canonical_associate(r0);
}

XgcdResult xgcd(const GaussianInt& a, const GaussianInt& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("xgcd(0,0) is undefined");
    GaussianInt r0 = a, r1 = b;
    GaussianInt s0{1}, s1{0}, t0{0}, t1{1};
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = r1;
        r1 = r;
        GaussianInt s = s0 - q * s1;
        s0 = s1;
        s1 = s;
        GaussianInt t = t0 - q * t1;
        t0 = t1;
        t1 = t;
    }
    // Rotate so g is the canonical associate, keeping g == a*x + b*y.
    for (int k = 0; k < 4; ++k) {
        if (r0.re() > 0 && r0.im() >= 0) break;
        r0 = times_unit_power(r0, 1);
        s0 = times_unit_power(s0, 1);
        t0 = times_unit_power(t0, 1);
    }
    return {r0, s0, t0};
}

GaussianInt pow(const GaussianInt& beta, unsigned long e) {
    GaussianInt out{1};
    GaussianInt base = beta;
    while (e > 0) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

Int nu(const GaussianInt& beta) {
    if (beta.is_zero()) throw std::invalid_argument("nu(0) is undefined");
    Int g;
    mpz_gcd(g.get_mpz_t(), beta.re().get_mpz_t(), beta.im().get_mpz_t());
    return beta.norm() / g;
}

}  // namespace gaussline
