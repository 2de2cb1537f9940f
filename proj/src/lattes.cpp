#include "critdisc/lattes.hpp"

#include <algorithm>

namespace critdisc {

namespace {

Rat rat_pow(const Rat& base, unsigned long e) {
    Rat acc(1);
    Rat sq = base;
    for (unsigned long k = e; k != 0; k >>= 1) {
        if (k & 1) acc *= sq;
        sq *= sq;
    }
    return acc;
}

Rat power_of_prime(const BigInt& p, long e) {
    if (e >= 0) return Rat(pow_bigint(p, static_cast<unsigned long>(e)));
    return make_rat(1, pow_bigint(p, static_cast<unsigned long>(-e)));
}

// u^2-scaled cubic: the coordinate change (x, y) -> (u^2 x, u^3 y) on
// y^2 = f(x) yields y^2 = x^3 + u^2 a x^2 + u^4 b x + u^6 c.
Cubic scale_cubic(const Cubic& f, const Rat& u2) {
    return Cubic{f.a * u2, f.b * u2 * u2, f.c * u2 * u2 * u2};
}

}  // namespace

Poly Cubic::poly() const {
    return Poly::from_coeffs({c, b, a, Rat(1)});
}

Rat cubic_disc(const Cubic& f) {
    const Rat &a = f.a, &b = f.b, &c = f.c;
    return a * a * b * b + Rat(18) * a * b * c - Rat(4) * a * a * a * c -
           Rat(4) * b * b * b - Rat(27) * c * c;
}

StandardPair build_lattes(const Cubic& f) {
    if (cubic_disc(f) == 0)
        throw std::domain_error("build_lattes: disc(f) = 0 (singular curve)");
    const Rat &a = f.a, &b = f.b, &c = f.c;
    const Poly A = Poly::from_coeffs(
        {b * b - Rat(4) * a * c, Rat(-8) * c, Rat(-2) * b, Rat(0), Rat(1)});
    const Poly B = Poly::from_coeffs(
        {Rat(4) * c, Rat(4) * b, Rat(4) * a, Rat(4)});

    const Poly fp = f.poly();
    const Poly df = derivative(fp);
    const Poly tangent = Poly::from_coeffs({Rat(4) * a, Rat(8)});
    if (!(A == df * df - tangent * fp))
        throw internal_consistency_error(
            "build_lattes: A != (f')^2 - (8x + 4a) f");
    return StandardPair(4, Rat(4), A, B);
}

WeierstrassInvariants weierstrass_invariants(const Cubic& f) {
    WeierstrassInvariants inv;
    inv.disc_f = cubic_disc(f);
    if (inv.disc_f == 0)
        throw std::domain_error(
            "weierstrass_invariants: disc(f) = 0 (singular curve)");
    inv.delta_e = Rat(16) * inv.disc_f;
    inv.c4 = Rat(16) * f.a * f.a - Rat(48) * f.b;
    inv.j = rat_pow(inv.c4, 3) / inv.delta_e;
    return inv;
}

IdentityReport verify_discriminant_identities(const Cubic& f) {
    const StandardPair pair = build_lattes(f);
    const WeierstrassInvariants inv = weierstrass_invariants(f);

    IdentityReport report;
    report.delta_ab = critical_discriminant(pair);
    report.disc_f = inv.disc_f;
    report.delta_e = inv.delta_e;
    report.disc_identity_ok =
        report.delta_ab == Rat(-pow_bigint(2, 38)) * rat_pow(inv.disc_f, 5);
    report.weier_identity_ok =
        report.delta_ab == Rat(-pow_bigint(2, 18)) * rat_pow(inv.delta_e, 5);
    if (!report.disc_identity_ok || !report.weier_identity_ok)
        throw internal_consistency_error(
            "verify_discriminant_identities: identity failed");
    return report;
}

bool on_curve(const EllipticPoint& pt, const Cubic& f) {
    if (pt.at_infinity) return true;
    return pt.y * pt.y == evaluate(f.poly(), pt.x);
}

EllipticPoint double_point(const EllipticPoint& pt, const Cubic& f) {
    if (!on_curve(pt, f))
        throw std::domain_error("double_point: point is not on the curve");
    if (pt.at_infinity || pt.y == 0) return EllipticPoint::infinity();

    const Rat s = evaluate(derivative(f.poly()), pt.x) / (Rat(2) * pt.y);
    const Rat x3 = s * s - f.a - Rat(2) * pt.x;
    const Rat y3 = -(pt.y + s * (x3 - pt.x));
    EllipticPoint out = EllipticPoint::affine(x3, y3);
    if (!on_curve(out, f))
        throw internal_consistency_error("double_point: 2P left the curve");
    return out;
}

ConjugationReport check_lattes_conjugation(const Cubic& f,
                                           const AffineAut& sigma) {
    const StandardPair pair = build_lattes(f);
    StandardPair conjugated = conjugate(pair, sigma);

    const Rat inv_alpha = Rat(1) / sigma.alpha;
    const Poly moved = rat_pow(sigma.alpha, 3) *
                       affine_substitute(f.poly(), inv_alpha,
                                         -sigma.beta * inv_alpha);
    Cubic transported{moved.coeff(2), moved.coeff(1), moved.coeff(0)};
    StandardPair rebuilt = build_lattes(transported);

    const bool equal = conjugated == rebuilt;
    if (!equal)
        throw internal_consistency_error(
            "check_lattes_conjugation: conjugation does not track the curve");
    return ConjugationReport{std::move(conjugated), std::move(rebuilt),
                             std::move(transported), equal};
}

std::string to_string(ReductionType t) {
    switch (t) {
        case ReductionType::good:
            return "good";
        case ReductionType::multiplicative_minimal:
            return "multiplicative-minimal";
        case ReductionType::additive_or_nonminimal:
            return "additive-or-nonminimal";
    }
    throw internal_consistency_error("to_string: unknown reduction type");
}

ReductionTypeReport reduction_type_at(const Cubic& f, const BigInt& p) {
    if (!is_prime(p))
        throw std::domain_error("reduction_type_at: " + to_string(p) +
                                " is not prime");
    if (p == 2)
        throw std::domain_error(
            "reduction_type_at: p = 2 is outside the y^2 = f(x) theory");
    if (cubic_disc(f) == 0)
        throw std::domain_error("reduction_type_at: singular curve");

    long k = 0;
    auto widen = [&](const Rat& coeff, long weight) {
        const Valuation v = padic_valuation(coeff, p);
        if (v.is_infinity() || v.value() >= 0) return;
        const long deficit = -v.value();
        k = std::max(k, (deficit + weight - 1) / weight);
    };
    widen(f.a, 2);
    widen(f.b, 4);
    widen(f.c, 6);

    const Cubic scaled = scale_cubic(f, power_of_prime(p, 2 * k));
    const WeierstrassInvariants inv = weierstrass_invariants(scaled);

    ReductionTypeReport report;
    report.scaling_exponent = k;
    report.ord_delta_e = padic_valuation(inv.delta_e, p).value();
    const Valuation c4_val = padic_valuation(inv.c4, p);
    if (!c4_val.is_infinity()) report.ord_c4 = c4_val.value();

    if (report.ord_delta_e == 0)
        report.type = ReductionType::good;
    else if (report.ord_c4 == 0)
        report.type = ReductionType::multiplicative_minimal;
    else
        report.type = ReductionType::additive_or_nonminimal;
    return report;
}

SzpiroLocalReport szpiro_local_check(const Cubic& f, const BigInt& p,
                                     long m_max) {
    const ReductionTypeReport rt = reduction_type_at(f, p);
    if (rt.type == ReductionType::additive_or_nonminimal)
        throw unsupported_case_error(
            "szpiro_local_check: curve is not visibly semistable at p = " +
            to_string(p));

    SzpiroLocalReport report;
    report.p = p;
    report.type = rt.type;
    report.ord_delta_e_min =
        rt.type == ReductionType::good ? 0 : rt.ord_delta_e;

    const LocalMinimizationResult local =
        local_minimize(build_lattes(f), p, m_max);
    report.delta_p = local.delta;
    report.certified = local.certified;
    report.holds = 5 * report.ord_delta_e_min <= report.delta_p;
    return report;
}

}  // namespace critdisc
