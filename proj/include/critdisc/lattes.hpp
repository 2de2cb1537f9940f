#ifndef CRITDISC_LATTES_HPP
#define CRITDISC_LATTES_HPP

// The Lattes family: degree-4 maps expressing x-coordinate doubling on an
// elliptic curve y^2 = x^3 + a x^2 + b x + c, their exact discriminant
// identities, the tangent-line group law used as a cross-check, and
// reduction-type classification at odd primes.

#include "critdisc/reduction.hpp"

namespace critdisc {

struct Cubic {
    Rat a;
    Rat b;
    Rat c;

    // x^3 + a x^2 + b x + c as a Poly.
    Poly poly() const;
};

// disc(x^3 + a x^2 + b x + c) = a^2 b^2 + 18 a b c - 4 a^3 c - 4 b^3 - 27 c^2.
Rat cubic_disc(const Cubic& f);

struct WeierstrassInvariants {
    Rat disc_f;
    Rat delta_e;  // 2^4 disc_f
    Rat c4;       // 16 a^2 - 48 b
    Rat j;        // c4^3 / delta_e
};

// The standard pair with d = 4, lambda = 4,
//   A = x^4 - 2 b x^2 - 8 c x + (b^2 - 4 a c),  B = 4 x^3 + 4 a x^2 + 4 b x + 4 c.
// Checks the exact identity A = (f')^2 - (8x + 4a) f. Requires disc(f) != 0.
StandardPair build_lattes(const Cubic& f);

WeierstrassInvariants weierstrass_invariants(const Cubic& f);

struct IdentityReport {
    Rat delta_ab;   // critical discriminant of the Lattes pair
    Rat disc_f;
    Rat delta_e;
    bool disc_identity_ok;     // delta_ab = -2^38 disc_f^5
    bool weier_identity_ok;    // delta_ab = -2^18 delta_e^5
};

// Verifies both identities exactly; a mismatch is a library defect and
// throws internal_consistency_error.
IdentityReport verify_discriminant_identities(const Cubic& f);

struct EllipticPoint {
    bool at_infinity = false;
    Rat x;
    Rat y;

    static EllipticPoint infinity() { return {true, Rat(0), Rat(0)}; }
    static EllipticPoint affine(Rat x, Rat y) {
        return {false, std::move(x), std::move(y)};
    }

    friend bool operator==(const EllipticPoint& p, const EllipticPoint& q) {
        if (p.at_infinity || q.at_infinity)
            return p.at_infinity == q.at_infinity;
        return p.x == q.x && p.y == q.y;
    }
};

bool on_curve(const EllipticPoint& pt, const Cubic& f);

// 2P by the tangent-line law on y^2 = f(x); infinity for y = 0 and for
// P = infinity. Throws std::domain_error when P is not on the curve.
EllipticPoint double_point(const EllipticPoint& pt, const Cubic& f);

struct ConjugationReport {
    StandardPair conjugated;   // conjugate(build_lattes(f), sigma)
    StandardPair rebuilt;      // build_lattes(f*) for the transported cubic
    Cubic transported;         // f*(x) = alpha^3 f(alpha^{-1}(x - beta))
    bool equal;
};

// Asserts the two pairs agree exactly; mismatch throws
// internal_consistency_error.
ConjugationReport check_lattes_conjugation(const Cubic& f,
                                           const AffineAut& sigma);

enum class ReductionType {
    good,
    multiplicative_minimal,
    additive_or_nonminimal,
};

std::string to_string(ReductionType t);

struct ReductionTypeReport {
    ReductionType type;
    long scaling_exponent;  // k where x -> p^{2k} x integralized the model
    long ord_delta_e;       // valuations on the integralized model
    std::optional<long> ord_c4;  // nullopt when c4 = 0
};

// Classification at an odd prime on the integral model (the cubic is first
// scaled by x -> u^2 x, u = p^k, if needed; the scaling is reported):
//   good                    ord_p(delta_E) = 0
//   multiplicative-minimal  ord_p(delta_E) > 0 and ord_p(c4) = 0
//   additive-or-nonminimal  everything else (no minimality claim)
// p = 2 is a stated limitation of the y^2 = f(x) shape and throws.
ReductionTypeReport reduction_type_at(const Cubic& f, const BigInt& p);

struct SzpiroLocalReport {
    BigInt p;
    ReductionType type;
    long ord_delta_e_min;  // ord_p(delta_E) of the p-minimal equation
    long delta_p;          // from local_minimize on the Lattes pair
    bool certified;
    bool holds;            // 5 * ord_delta_e_min <= delta_p
};

// Checks 5 ord_p(delta_E) <= delta_p(phi) at an odd prime where the curve
// is semistable (good or multiplicative-minimal); other classifications
// throw unsupported_case_error.
SzpiroLocalReport szpiro_local_check(const Cubic& f, const BigInt& p,
                                     long m_max = kDefaultMMax);

}  // namespace critdisc

#endif
