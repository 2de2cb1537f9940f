#include "critdisc/family.hpp"

#include <cassert>

namespace critdisc {

AffineAut compose(const AffineAut& sigma, const AffineAut& tau) {
    return {sigma.alpha * tau.alpha, sigma.alpha * tau.beta + sigma.beta};
}

AffineAut inverse(const AffineAut& sigma) {
    return {1 / sigma.alpha, -sigma.beta / sigma.alpha};
}

StandardPair::StandardPair(long d, Rat lambda, Poly a, Poly b)
    : d_(d), lambda_(std::move(lambda)), a_(std::move(a)), b_(std::move(b)) {
    if (d_ < 2) throw std::domain_error("StandardPair: d must be >= 2");
    if (lambda_ == 0) throw std::domain_error("StandardPair: lambda = 0");
    if (!a_.degree() || *a_.degree() != d_)
        throw std::domain_error("StandardPair: A must have degree exactly d");
    if (a_.leading_coeff() != 1)
        throw std::domain_error("StandardPair: A must be monic");
    if (!b_.degree() || *b_.degree() != d_ - 1)
        throw std::domain_error(
            "StandardPair: B must have degree exactly d - 1");
    if (b_.leading_coeff() != lambda_)
        throw std::domain_error(
            "StandardPair: B must have leading coefficient lambda");
}

Poly wronskian(const StandardPair& pair) {
    Poly w = pair.B() * derivative(pair.A()) - pair.A() * derivative(pair.B());
    // Leading term is (d - (d-1)) lambda x^(2d-2), so this cannot fail.
    if (!w.degree() || *w.degree() != 2 * pair.d() - 2 ||
        w.leading_coeff() != pair.lambda())
        throw internal_consistency_error(
            "wronskian: degree or leading coefficient off");
    return w;
}

Rat critical_discriminant(const StandardPair& pair) {
    return disc(wronskian(pair));
}

Rat family_epsilon(long d, const Rat& lambda) {
    if (lambda == 0) throw std::domain_error("family_epsilon: lambda = 0");
    if (d < 2) throw std::domain_error("family_epsilon: d must be >= 2");
    return (Rat(d) - lambda) / (Rat(d - 1) * lambda);
}

MembershipReport is_member(const StandardPair& pair) {
    MembershipReport report;
    report.epsilon = family_epsilon(pair.d(), pair.lambda());
    report.degree_ok = resultant(pair.A(), pair.B()) != 0;
    report.multiplier_ok = true;
    report.f3_ok =
        pair.a(pair.d() - 1) == report.epsilon * pair.b(pair.d() - 2);
    report.delta = critical_discriminant(pair);
    report.separable_ok = report.delta != 0;
    report.member = report.degree_ok && report.multiplier_ok &&
                    report.f3_ok && report.separable_ok;
    return report;
}

namespace {

#ifndef NDEBUG
// Keeps the conjugation self-check affordable: above this many decimal
// digits in the numerator only the cheap structural checks remain.
constexpr std::size_t kConjugateCheckDigitLimit = 10000;

bool delta_small_enough(const Rat& delta) {
    return mpz_sizeinbase(delta.get_num_mpz_t(), 10) +
               mpz_sizeinbase(delta.get_den_mpz_t(), 10) <
           kConjugateCheckDigitLimit;
}
#endif

Rat rat_pow(const Rat& base, long e) {
    Rat r;
    const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), mag);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), mag);
    r.canonicalize();
    return e < 0 ? Rat(1 / r) : r;
}

}  // namespace

StandardPair conjugate(const StandardPair& pair, const AffineAut& sigma) {
    if (sigma.alpha == 0) throw std::domain_error("conjugate: alpha = 0");
    const long d = pair.d();
    const Rat inv_alpha = 1 / sigma.alpha;
    const Rat shift = -sigma.beta * inv_alpha;
    // P composed with sigma^{-1}(x) = (x - beta)/alpha
    const Poly a_of = affine_substitute(pair.A(), inv_alpha, shift);
    const Poly b_of = affine_substitute(pair.B(), inv_alpha, shift);

    const Rat ad = rat_pow(sigma.alpha, d);
    const Rat ad1 = rat_pow(sigma.alpha, d - 1);
    Poly new_a = ad * a_of + (ad1 * sigma.beta) * b_of;
    Poly new_b = ad1 * b_of;
    StandardPair result(d, pair.lambda(), std::move(new_a), std::move(new_b));

#ifndef NDEBUG
    {
        const Rat before = critical_discriminant(pair);
        if (delta_small_enough(before)) {
            const Rat after = critical_discriminant(result);
            const long e = (2 * d - 2) * (2 * d - 3);
            assert(after == rat_pow(sigma.alpha, e) * before &&
                   "conjugate: discriminant transformation law violated");
        }
    }
#endif
    return result;
}

CenterResult center(const StandardPair& pair) {
    const long d = pair.d();
    const Rat beta =
        pair.b(d - 2) / (Rat(d - 1) * pair.lambda());
    const AffineAut sigma{Rat(1), beta};
    StandardPair moved = conjugate(pair, sigma);
    if (moved.b(d - 2) != 0)
        throw internal_consistency_error("center: b_{d-2} did not vanish");
    return CenterResult{std::move(moved), sigma};
}

}  // namespace critdisc
