#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

namespace gaussline {

// Arbitrary-precision rational integer.
using Int = mpz_class;

// Thrown when a configurable work budget (factorization, prime search,
// brute-force scan) runs out before an answer was reached.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact Gaussian integer a+bi. Immutable value type; all operations are
/// pure and safe for concurrent use.
class GaussianInt {
public:
    GaussianInt() = default;
    GaussianInt(Int re, Int im) : re_(std::move(re)), im_(std::move(im)) {}
    GaussianInt(Int re) : re_(std::move(re)) {}
    GaussianInt(long re) : re_(re) {}
    GaussianInt(long re, long im) : re_(re), im_(im) {}
    GaussianInt(int re) : re_(re) {}

    const Int& re() const { return re_; }
    const Int& im() const { return im_; }

    Int norm() const { return re_ * re_ + im_ * im_; }
    Int trace() const { return 2 * re_; }
    GaussianInt conj() const { return {re_, -im_}; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_unit() const { return norm() == 1; }

    /// Parse "a+bi" / "a-bi" / "a" / "bi" with optional leading sign and no
    /// spaces ("i" means 0+1i). Throws std::invalid_argument on bad input.
    static GaussianInt parse(const std::string& text);

    /// Textual form; parse(str()) round-trips exactly.
    std::string str() const;

    friend GaussianInt operator+(const GaussianInt& x, const GaussianInt& y) {
        return {x.re_ + y.re_, x.im_ + y.im_};
    }
    friend GaussianInt operator-(const GaussianInt& x, const GaussianInt& y) {
        return {x.re_ - y.re_, x.im_ - y.im_};
    }
    friend GaussianInt operator-(const GaussianInt& x) { return {-x.re_, -x.im_}; }
    friend GaussianInt operator*(const GaussianInt& x, const GaussianInt& y) {
        return {x.re_ * y.re_ - x.im_ * y.im_, x.re_ * y.im_ + x.im_ * y.re_};
    }
    friend GaussianInt operator*(const GaussianInt& x, const Int& n) {
        return {x.re_ * n, x.im_ * n};
    }
    friend GaussianInt operator*(const Int& n, const GaussianInt& x) { return x * n; }
    friend bool operator==(const GaussianInt& x, const GaussianInt& y) {
        return x.re_ == y.re_ && x.im_ == y.im_;
    }
    friend bool operator!=(const GaussianInt& x, const GaussianInt& y) { return !(x == y); }

private:
    Int re_{0};
    Int im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianInt& x);

struct DivModResult {
    GaussianInt quotient;
    GaussianInt remainder;
};

/// Euclidean division: num = q*den + r with norm(r) <= norm(den)/2. Each
/// coordinate of num*conj(den)/norm(den) is rounded to the nearest integer,
/// ties toward negative infinity. Throws on den == 0.
DivModResult divmod(const GaussianInt& num, const GaussianInt& den);

/// True iff den divides num exactly (den != 0).
bool divides(const GaussianInt& den, const GaussianInt& num);

/// num / den, requiring exact divisibility.
GaussianInt exact_div(const GaussianInt& num, const GaussianInt& den);

/// beta * i^k for k in 0..3.
GaussianInt times_unit_power(const GaussianInt& beta, int k);

/// The unique associate with re > 0 and im >= 0 (0 for input 0).
GaussianInt canonical_associate(const GaussianInt& beta);

/// Canonical-associate gcd. Throws on gcd(0,0).
GaussianInt gcd(const GaussianInt& a, const GaussianInt& b);

struct XgcdResult {
    GaussianInt g;  // canonical associate
    GaussianInt x;
    GaussianInt y;  // g == a*x + b*y
};
XgcdResult xgcd(const GaussianInt& a, const GaussianInt& b);

/// beta^e by square-and-multiply.
GaussianInt pow(const GaussianInt& beta, unsigned long e);

/// nu(beta) = N(beta)/gcd(Re beta, Im beta): the smallest positive rational
/// integer divisible by beta; it divides every rational integer beta divides.
/// Throws on beta == 0.
Int nu(const GaussianInt& beta);

}  // namespace gaussline
