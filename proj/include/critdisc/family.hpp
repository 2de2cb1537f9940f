#ifndef CRITDISC_FAMILY_HPP
#define CRITDISC_FAMILY_HPP

// Standard-form pairs (A, B), the Wronskian and its discriminant, the
// affine conjugation action fixing infinity, family membership, centering.
//
// A pair is in standard form for (d, lambda) when A is monic of degree d
// and B has degree d-1 with leading coefficient lambda. Such a pair
// represents the rational map A(x)/B(x), which fixes infinity with
// multiplier lambda.

#include "critdisc/upoly.hpp"

namespace critdisc {

// x -> alpha x + beta with alpha != 0.
struct AffineAut {
    Rat alpha;
    Rat beta;

    static AffineAut identity() { return {Rat(1), Rat(0)}; }
    bool is_identity() const { return alpha == 1 && beta == 0; }

    friend bool operator==(const AffineAut& a, const AffineAut& b) {
        return a.alpha == b.alpha && a.beta == b.beta;
    }
};

// (sigma tau)(x) = sigma(tau(x)).
AffineAut compose(const AffineAut& sigma, const AffineAut& tau);
AffineAut inverse(const AffineAut& sigma);

class StandardPair {
  public:
    // Validates the standard-form invariants; throws std::domain_error.
    StandardPair(long d, Rat lambda, Poly a, Poly b);

    long d() const { return d_; }
    const Rat& lambda() const { return lambda_; }
    const Poly& A() const { return a_; }
    const Poly& B() const { return b_; }

    // a_j for 0 <= j <= d (a_d = 1), b_j for 0 <= j <= d-1 (b_{d-1} = lambda).
    Rat a(std::size_t j) const { return a_.coeff(j); }
    Rat b(std::size_t j) const { return b_.coeff(j); }

    friend bool operator==(const StandardPair& x, const StandardPair& y) {
        return x.d_ == y.d_ && x.lambda_ == y.lambda_ && x.a_ == y.a_ &&
               x.b_ == y.b_;
    }

  private:
    long d_;
    Rat lambda_;
    Poly a_;
    Poly b_;
};

struct MembershipReport {
    bool degree_ok = false;      // the map has degree d, i.e. res(A, B) != 0
    bool multiplier_ok = true;   // structural for a valid StandardPair
    bool f3_ok = false;          // a_{d-1} = epsilon * b_{d-2}
    bool separable_ok = false;   // critical discriminant != 0
    Rat epsilon;
    Rat delta;                   // the critical discriminant
    bool member = false;
};

// B A' - A B'. Degree is exactly 2d-2 with leading coefficient lambda.
Poly wronskian(const StandardPair& pair);

// disc of the Wronskian. Nonzero iff the map has full degree d and has
// 2d-2 distinct critical points.
Rat critical_discriminant(const StandardPair& pair);

// (d - lambda) / ((d - 1) lambda). Throws when lambda = 0.
Rat family_epsilon(long d, const Rat& lambda);

MembershipReport is_member(const StandardPair& pair);

// The conjugated pair (A^sigma, B^sigma); again standard form for the same
// (d, lambda). Its critical discriminant is alpha^((2d-2)(2d-3)) times the
// input's (checked in debug builds, skipped above a size threshold).
StandardPair conjugate(const StandardPair& pair, const AffineAut& sigma);

struct CenterResult {
    StandardPair pair;
    AffineAut sigma;
};

// Conjugates by sigma = (alpha = 1, beta = b_{d-2} / ((d-1) lambda)) so the
// result has b_{d-2} = 0; when the input satisfies the membership relation
// a_{d-1} = epsilon b_{d-2}, the result also has a_{d-1} = 0.
CenterResult center(const StandardPair& pair);

}  // namespace critdisc

#endif
