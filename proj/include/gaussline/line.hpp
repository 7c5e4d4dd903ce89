#pragma once

#include "gaussline/gaussian_int.hpp"

#include <string>

namespace gaussline {

/// A Gaussian line in canonical form: base point alpha0 of minimal norm
/// (ties resolved toward larger real part), step delta = c+di with
/// gcd(c,d) = 1 and c > 0, or delta = i for vertical lines. The Gaussian
/// integers on the line are exactly alpha0 + n*delta, n in Z.
///
/// Immutable value type; all queries are pure.
class GaussianLine {
public:
    /// Canonicalize the line through `point` with direction `direction` != 0.
    static GaussianLine from_point_direction(const GaussianInt& point,
                                             const GaussianInt& direction);

    /// Canonicalize the line through two distinct points.
    static GaussianLine from_two_points(const GaussianInt& p, const GaussianInt& q);

    /// Parse "alpha0;delta" (GaussianInt syntax on both sides) and
    /// canonicalize the described line.
    static GaussianLine parse(const std::string& text);

    const GaussianInt& alpha0() const { return alpha0_; }
    const GaussianInt& delta() const { return delta_; }

    /// The line invariant ad - bc. Zero exactly for the real and imaginary
    /// lines (when primitive); rational divisors on the line divide it.
    const Int& invariant() const { return invariant_; }

    /// True iff the points of the line share no common non-unit divisor,
    /// i.e. gcd(alpha0, delta) is a unit.
    bool primitive() const { return primitive_; }

    bool vertical() const { return delta_.re() == 0; }

    /// alpha0 + n*delta.
    GaussianInt point_at(const Int& n) const { return alpha0_ + delta_ * n; }

    /// Coefficients of f(n) = N(alpha0 + n*delta) = A n^2 + B n + C, with
    /// A = N(delta), B = Tr(alpha0 * conj(delta)), C = N(alpha0) and
    /// discriminant B^2 - 4AC = -4 * invariant^2.
    struct NormPoly {
        Int A, B, C;
        Int eval(const Int& n) const { return (A * n + B) * n + C; }
    };
    NormPoly norm_poly() const;

    /// N(point_at(n)).
    Int norm_at(const Int& n) const { return norm_poly().eval(n); }

    /// "alpha0;delta"; parse(str()) reproduces the line exactly.
    std::string str() const { return alpha0_.str() + ";" + delta_.str(); }

    friend bool operator==(const GaussianLine& a, const GaussianLine& b) {
        return a.alpha0_ == b.alpha0_ && a.delta_ == b.delta_;
    }
    friend bool operator!=(const GaussianLine& a, const GaussianLine& b) { return !(a == b); }

private:
    GaussianLine(GaussianInt alpha0, GaussianInt delta, Int invariant, bool primitive)
        : alpha0_(std::move(alpha0)),
          delta_(std::move(delta)),
          invariant_(std::move(invariant)),
          primitive_(primitive) {}

    GaussianInt alpha0_;
    GaussianInt delta_;
    Int invariant_;
    bool primitive_;
};

std::ostream& operator<<(std::ostream& os, const GaussianLine& line);

}  // namespace gaussline
