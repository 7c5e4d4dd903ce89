#include "gaussline/line.hpp"

#include <ostream>

namespace gaussline {

GaussianLine GaussianLine::from_point_direction(const GaussianInt& point,
                                                const GaussianInt& direction) {
    if (direction.is_zero()) {
        throw std::invalid_argument("from_point_direction: zero direction");
    }
    // Reduce the direction to the canonical step delta.
    Int g;
    mpz_gcd(g.get_mpz_t(), direction.re().get_mpz_t(), direction.im().get_mpz_t());
    Int c = direction.re() / g;
    Int d = direction.im() / g;
    if (c == 0) {
        d = 1;  // vertical: delta = i
    } else if (c < 0) {
        c = -c;
        d = -d;
    }
    GaussianInt delta{c, d};

    // alpha0 minimizes f(n) = N(point + n*delta); evaluate at the two
    // integers flanking the real vertex -B/(2A), all in exact arithmetic.
    Int A = delta.norm();
    Int B = 2 * (point.re() * c + point.im() * d);
    Int negB = -B;
    Int twoA = 2 * A;
    Int n0;
    mpz_fdiv_q(n0.get_mpz_t(), negB.get_mpz_t(), twoA.get_mpz_t());
    Int n1 = n0 + 1;
    GaussianInt p0 = point + delta * n0;
    GaussianInt p1 = point + delta * n1;
    Int f0 = p0.norm();
    Int f1 = p1.norm();
    GaussianInt alpha0;
    if (f0 < f1) {
        alpha0 = p0;
    } else if (f1 < f0) {
        alpha0 = p1;
    } else {
        // Tie: take the point with the larger real part. c > 0 here (ties
        // need a half-integer vertex, impossible for vertical lines).
        alpha0 = p1;
    }

    Int invariant = alpha0.re() * d - alpha0.im() * c;
    bool primitive = alpha0.is_zero() ? delta.is_unit() : gcd(alpha0, delta).is_unit();
    return GaussianLine{alpha0, delta, invariant, primitive};
}

GaussianLine GaussianLine::from_two_points(const GaussianInt& p, const GaussianInt& q) {
    if (p == q) throw std::invalid_argument("from_two_points: points coincide");
    return from_point_direction(p, q - p);
}

GaussianLine GaussianLine::parse(const std::string& text) {
    auto sep = text.find(';');
    if (sep == std::string::npos || text.find(';', sep + 1) != std::string::npos) {
        throw std::invalid_argument("invalid line (expected \"alpha0;delta\"): \"" + text + "\"");
    }
    GaussianInt alpha0 = GaussianInt::parse(text.substr(0, sep));
    GaussianInt delta = GaussianInt::parse(text.substr(sep + 1));
    return from_point_direction(alpha0, delta);
}

GaussianLine::NormPoly GaussianLine::norm_poly() const {
    Int A = delta_.norm();
    Int B = 2 * (alpha0_.re() * delta_.re() + alpha0_.im() * delta_.im());
    Int C = alpha0_.norm();
    return {A, B, C};
}

std::ostream& operator<<(std::ostream& os, const GaussianLine& line) {
    return os << line.str();
}

}  // namespace gaussline
