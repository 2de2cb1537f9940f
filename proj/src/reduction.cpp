#include "critdisc/reduction.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cassert>
#include <optional>

namespace critdisc {

namespace {

// ord_p of a nonzero rational; no primality re-check.
long ord_p_nonzero(const Rat& q, const BigInt& p) {
    BigInt scratch;
    long num_ord = static_cast<long>(mpz_remove(
        scratch.get_mpz_t(), q.get_num_mpz_t(), p.get_mpz_t()));
    if (num_ord > 0) return num_ord;
    long den_ord = static_cast<long>(mpz_remove(
        scratch.get_mpz_t(), q.get_den_mpz_t(), p.get_mpz_t()));
    return -den_ord;
}

bool coeff_p_integral(const Rat& q, const BigInt& p) {
    return !mpz_divisible_p(q.get_den_mpz_t(), p.get_mpz_t());
}

void require_prime(const BigInt& p, const char* who) {
    if (!is_prime(p))
        throw std::domain_error(std::string(who) + ": " + to_string(p) +
                                " is not prime");
}

void require_outside_s_lambda(const StandardPair& pair, const BigInt& p,
                              const char* who) {
    if (!coeff_p_integral(pair.lambda(), p))
        throw std::domain_error(std::string(who) + ": delta_p undefined at p = " +
                                to_string(p) +
                                " (p divides the denominator of lambda)");
}

Rat rat_power_of(const BigInt& p, long e) {
    if (e >= 0) return Rat(pow_bigint(p, static_cast<unsigned long>(e)));
    return make_rat(1, pow_bigint(p, static_cast<unsigned long>(-e)));
}

// Least m >= 0 such that conjugating by (p^m, 0) makes the pair integral
// at p. Coefficient j of A gains p^(m(d-j)), of B gains p^(m(d-1-j)).
long integralizing_exponent(const StandardPair& pair, const BigInt& p) {
    long m = 0;
    auto need = [&](const Rat& c, long weight) {
        if (c == 0 || coeff_p_integral(c, p)) return;
        const long deficit = -ord_p_nonzero(c, p);
        m = std::max(m, (deficit + weight - 1) / weight);
    };
    const long d = pair.d();
    for (long j = 0; j < d; ++j) need(pair.a(j), d - j);
    for (long j = 0; j <= d - 2; ++j) need(pair.b(j), d - 1 - j);
    return m;
}

// den * P as integer coefficients, den positive and coprime to p when the
// pair is p-integral.
std::vector<BigInt> scaled_integer_coeffs(const Poly& poly, const BigInt& den,
                                          std::size_t size) {
    std::vector<BigInt> out(size, BigInt(0));
    for (std::size_t i = 0; i < poly.coeffs().size(); ++i) {
        Rat scaled = poly.coeffs()[i] * Rat(den);
        out[i] = BigInt(scaled.get_num());
    }
    return out;
}

// Coefficients of P(scale * x - gamma) mod M, ascending.
std::vector<BigInt> substitute_mod(const std::vector<BigInt>& coeffs,
                                   const BigInt& scale, const BigInt& gamma,
                                   const BigInt& M) {
    std::vector<BigInt> acc;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        std::vector<BigInt> next(acc.size() + 1, BigInt(0));
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k + 1] += acc[k] * scale;
            next[k] -= acc[k] * gamma;
        }
        next[0] += coeffs[i];
        for (BigInt& c : next) {
            c %= M;
            if (c < 0) c += M;
        }
        acc = std::move(next);
    }
    return acc;
}

// Searches for a residue gamma making sigma(x) = x/p^m + gamma/p^m keep the
// model p-integral, i.e.
//   A(p^m x - gamma) + gamma B(p^m x - gamma) = 0 mod p^(m d)  and
//   B(p^m x - gamma)                          = 0 mod p^(m (d-1)).
// Success depends on gamma only modulo p^m: changing gamma by p^m t
// post-composes the integer shift x -> x + t, which preserves integrality
// in both directions. So scanning [0, p^m) loses nothing.
std::optional<BigInt> find_descent_residue(const StandardPair& work,
                                           const BigInt& p, long m) {
    const long d = work.d();
    const BigInt span = pow_bigint(p, static_cast<unsigned long>(m));
    if (span > kResidueSearchCap) return std::nullopt;  // cost cap

    const BigInt m1 = pow_bigint(p, static_cast<unsigned long>(m * d));
    const BigInt m2 = pow_bigint(p, static_cast<unsigned long>(m * (d - 1)));
    const BigInt scale = span;

    BigInt den = 1;
    for (const Rat& c : work.A().coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    for (const Rat& c : work.B().coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    // work is p-integral, so den is coprime to p and scaling by it does not
    // disturb any p-valuation.
    const auto za = scaled_integer_coeffs(work.A(), den, d + 1);
    const auto zb = scaled_integer_coeffs(work.B(), den, d);

    for (BigInt gamma = 0; gamma < span; ++gamma) {
        const auto sb = substitute_mod(zb, scale, gamma, m1);
        bool ok = true;
        for (const BigInt& c : sb) {
            if (!mpz_divisible_p(c.get_mpz_t(), m2.get_mpz_t())) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        auto sa = substitute_mod(za, scale, gamma, m1);
        for (std::size_t k = 0; k < sa.size() && ok; ++k) {
            BigInt c = sa[k] + gamma * (k < sb.size() ? sb[k] : BigInt(0));
            if (!mpz_divisible_p(c.get_mpz_t(), m1.get_mpz_t())) ok = false;
        }
        if (ok) return gamma;
    }
    return std::nullopt;
}

}  // namespace

std::vector<BigInt> lambda_denominator_primes(const Rat& lambda) {
    if (lambda == 0)
        throw std::domain_error("lambda_denominator_primes: lambda = 0");
    std::vector<BigInt> primes;
    BigInt den(lambda.get_den());
    if (den == 1) return primes;
    for (const auto& [p, e] : factorize(den).factors) primes.push_back(p);
    return primes;
}

bool is_p_integral(const StandardPair& pair, const BigInt& p) {
    require_prime(p, "is_p_integral");
    for (const Rat& c : pair.A().coeffs())
        if (!coeff_p_integral(c, p)) return false;
    for (const Rat& c : pair.B().coeffs())
        if (!coeff_p_integral(c, p)) return false;
    return true;
}

ReducedMap reduce_map(const StandardPair& pair, const BigInt& p) {
    require_prime(p, "reduce_map");
    PolyModP a = reduce_mod_p(pair.A(), p);
    PolyModP b = reduce_mod_p(pair.B(), p);

    ReductionReport report;
    report.a_degree_full = a.degree() && *a.degree() == pair.d();
    report.coprime = *modp_gcd(a, b).degree() == 0;
    const PolyModP w = modp_sub(modp_mul(b, modp_derivative(a)),
                                modp_mul(a, modp_derivative(b)));
    report.wronskian_squarefree = !w.is_zero() &&
                                  *w.degree() == 2 * pair.d() - 2 &&
                                  is_squarefree_mod_p(w);
    report.model_good =
        report.a_degree_full && report.coprime && report.wronskian_squarefree;
    return ReducedMap{std::move(a), std::move(b), report};
}

LocalMinimizationResult local_minimize(const StandardPair& pair,
                                       const BigInt& p, long m_max) {
    require_prime(p, "local_minimize");
    require_outside_s_lambda(pair, p, "local_minimize");
    if (m_max < 0)
        throw std::domain_error("local_minimize: m_max must be >= 0");
    if (critical_discriminant(pair) == 0)
        throw std::domain_error(
            "local_minimize: critical discriminant vanishes");

    AffineAut total = AffineAut::identity();
    StandardPair work = pair;
    if (!is_p_integral(work, p)) {
        const long m = integralizing_exponent(work, p);
        const AffineAut sigma{rat_power_of(p, m), Rat(0)};
        work = conjugate(work, sigma);
        total = sigma;
    }

    const long bound = descent_step_size(work.d());
    long ord = ord_p_nonzero(critical_discriminant(work), p);

    auto apply_step = [&](long m, const BigInt& gamma) {
        const BigInt pm = pow_bigint(p, static_cast<unsigned long>(m));
        const AffineAut step{make_rat(1, pm), make_rat(gamma, pm)};
        work = conjugate(work, step);
        total = compose(step, total);
        ord -= m * bound;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        while (m_max >= 1 && ord >= bound) {
            const auto gamma = find_descent_residue(work, p, 1);
            if (!gamma) break;
            apply_step(1, *gamma);
            progress = true;
        }
        for (long m = 2; m <= m_max && ord >= m * bound; ++m) {
            const auto gamma = find_descent_residue(work, p, m);
            if (gamma) {
                apply_step(m, *gamma);
                progress = true;
                break;  // resume single-level descent from the new model
            }
        }
    }

    if (!is_p_integral(work, p) ||
        ord != ord_p_nonzero(critical_discriminant(work), p) ||
        !(conjugate(pair, total) == work))
        throw internal_consistency_error(
            "local_minimize: descent bookkeeping failed");

    return LocalMinimizationResult{p, ord, ord < bound, total,
                                   std::move(work)};
}

GlobalDiscriminant minimal_critical_discriminant(const StandardPair& pair,
                                                 long m_max) {
    const MembershipReport membership = is_member(pair);
    if (!membership.member)
        throw std::domain_error(
            "minimal_critical_discriminant: not a family member");

    GlobalDiscriminant gd;
    gd.excluded_primes = lambda_denominator_primes(pair.lambda());
    auto excluded = [&](const BigInt& q) {
        return std::find(gd.excluded_primes.begin(), gd.excluded_primes.end(),
                         q) != gd.excluded_primes.end();
    };

    BigInt den = 1;
    for (const Rat& c : pair.A().coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    for (const Rat& c : pair.B().coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    BigInt n = 1;
    if (den > 1) {
        for (const auto& [q, e] : factorize(den).factors) {
            if (excluded(q)) continue;
            n *= pow_bigint(
                q, static_cast<unsigned long>(integralizing_exponent(pair, q)));
        }
    }
    const StandardPair work =
        n == 1 ? pair : conjugate(pair, AffineAut{Rat(n), Rat(0)});

    const Rat delta = critical_discriminant(work);
    BigInt num(delta.get_num());
    for (const auto& [q, e] : factorize(num).factors) {
        if (excluded(q)) continue;
        LocalMinimizationResult local = local_minimize(work, q, m_max);
        if (local.delta >= 1)
            gd.entries.push_back(
                GlobalDiscriminantEntry{q, local.delta, local.certified});
    }
    return gd;
}

namespace {

// log(norm_delta)/log(norm_radical) to 6 decimals, correctly rounded.
// Callers have already handled the only rational case (all exponents
// equal), so the quotient here is irrational and interval refinement
// terminates.
std::string irrational_ratio_6dp(const BigInt& nd, const BigInt& nr) {
    for (mpfr_prec_t prec = 128; prec <= (1 << 22); prec *= 2) {
        mpfr_t xd, xr, lo, hi;
        mpfr_inits2(prec, xd, xr, lo, hi, static_cast<mpfr_ptr>(nullptr));

        mpfr_set_z(xd, nd.get_mpz_t(), MPFR_RNDD);
        mpfr_log(xd, xd, MPFR_RNDD);
        mpfr_set_z(xr, nr.get_mpz_t(), MPFR_RNDU);
        mpfr_log(xr, xr, MPFR_RNDU);
        mpfr_div(lo, xd, xr, MPFR_RNDD);

        mpfr_set_z(xd, nd.get_mpz_t(), MPFR_RNDU);
        mpfr_log(xd, xd, MPFR_RNDU);
        mpfr_set_z(xr, nr.get_mpz_t(), MPFR_RNDD);
        mpfr_log(xr, xr, MPFR_RNDD);
        mpfr_div(hi, xd, xr, MPFR_RNDU);

        char* lo_text = nullptr;
        char* hi_text = nullptr;
        mpfr_asprintf(&lo_text, "%.6R*f", MPFR_RNDN, lo);
        mpfr_asprintf(&hi_text, "%.6R*f", MPFR_RNDN, hi);
        std::string lo_s(lo_text), hi_s(hi_text);
        mpfr_free_str(lo_text);
        mpfr_free_str(hi_text);
        mpfr_clears(xd, xr, lo, hi, static_cast<mpfr_ptr>(nullptr));

        if (lo_s == hi_s) return lo_s;
    }
    throw internal_consistency_error(
        "szpiro_report: ratio did not stabilize");
}

}  // namespace

SzpiroReport szpiro_report(const GlobalDiscriminant& gd, long d) {
    SzpiroReport report;
    report.exponent_bound = descent_step_size(d);
    report.norm_delta = 1;
    report.norm_radical = 1;
    report.all_certified = true;
    for (const auto& entry : gd.entries) {
        if (entry.delta < 1)
            throw std::domain_error("szpiro_report: entry with delta < 1");
        report.norm_delta *=
            pow_bigint(entry.p, static_cast<unsigned long>(entry.delta));
        report.norm_radical *= entry.p;
        report.all_certified = report.all_certified && entry.certified;
    }

    if (report.norm_radical == 1) {
        report.ratio_defined = false;
        report.ratio.clear();
        return report;
    }
    report.ratio_defined = true;
    // The quotient is rational only when all exponents coincide (unique
    // factorization), and then it is that common integer exactly.
    const long first = gd.entries.front().delta;
    const bool all_equal =
        std::all_of(gd.entries.begin(), gd.entries.end(),
                    [&](const auto& e) { return e.delta == first; });
    if (all_equal)
        report.ratio = std::to_string(first) + ".000000";
    else
        report.ratio =
            irrational_ratio_6dp(report.norm_delta, report.norm_radical);
    return report;
}

QuadraticModelResult quadratic_minimal_model(const StandardPair& pair,
                                             const BigInt& p, long m_max) {
    if (pair.d() != 2)
        throw std::domain_error("quadratic_minimal_model: d must be 2");
    require_prime(p, "quadratic_minimal_model");
    require_outside_s_lambda(pair, p, "quadratic_minimal_model");
    if (!is_member(pair).member)
        throw std::domain_error("quadratic_minimal_model: not a family member");

    const CenterResult centered = center(pair);
    if (centered.pair.a(1) != 0)
        throw internal_consistency_error(
            "quadratic_minimal_model: centering left a linear term");
    const Rat a = centered.pair.a(0);
    const Rat lambda = pair.lambda();

    const long v = ord_p_nonzero(a, p);
    const long r = ((v % 2) + 2) % 2;
    const long m = (r - v) / 2;

    const AffineAut sigma{rat_power_of(p, m), Rat(0)};
    StandardPair model = conjugate(centered.pair, sigma);

    const Rat expected =
        Rat(4) * lambda * lambda * rat_power_of(p, 2 * m) * a;
    const Rat actual = critical_discriminant(model);
    if (actual != expected)
        throw internal_consistency_error(
            "quadratic_minimal_model: closed form mismatch");

    QuadraticModelResult result{std::move(model), m, 0, 0, 0, false};
    result.ord_delta_model = ord_p_nonzero(actual, p);
    result.bound = ord_p_nonzero(Rat(4) * lambda * lambda, p) + 1;
    result.minimize_delta = local_minimize(pair, p, m_max).delta;
    result.bound_ok = result.ord_delta_model <= result.bound &&
                      result.minimize_delta <= result.bound;
    if (!result.bound_ok)
        throw internal_consistency_error(
            "quadratic_minimal_model: valuation bound violated");
    return result;
}

}  // namespace critdisc
