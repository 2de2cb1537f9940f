#include "critdisc/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace critdisc {

namespace {

constexpr unsigned long kTrialDivisionBound = 1000000;

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char ch) { return std::isdigit(ch); });
}

// Splits off one nontrivial factor of an odd composite n with no prime
// factor below the trial-division bound. Pollard rho (Floyd cycle) with a
// fixed starting point and incrementing polynomial constant, so the result
// is deterministic.
BigInt rho_split(const BigInt& n) {
    for (unsigned long c = 1;; ++c) {
        BigInt x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            BigInt diff = x > y ? x - y : y - x;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
    }
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned long>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    // Perfect powers would make the rho cycle degenerate; peel them first.
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2;; ++k) {
            BigInt root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
                std::map<BigInt, unsigned long> base;
                factor_into(root, base);
                for (const auto& [p, e] : base) out[p] += e * k;
                return;
            }
        }
    }
    BigInt d = rho_split(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Rat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

BigInt PrimeFactorization::value() const {
    BigInt v = sign;
    for (const auto& [p, e] : factors) v *= pow_bigint(p, e);
    return v;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

Valuation padic_valuation(const Rat& q, const BigInt& p) {
    if (!is_prime(p))
        throw std::domain_error("padic_valuation: " + to_string(p) +
                                " is not prime");
    if (q == 0) return Valuation::infinity();
    BigInt reduced;
    long num_ord = static_cast<long>(mpz_remove(
        reduced.get_mpz_t(), q.get_num_mpz_t(), p.get_mpz_t()));
    long den_ord = static_cast<long>(mpz_remove(
        reduced.get_mpz_t(), q.get_den_mpz_t(), p.get_mpz_t()));
    return Valuation::of(num_ord - den_ord);
}

bool is_p_integral(const Rat& q, const BigInt& p) {
    return padic_valuation(q, p).is_nonnegative();
}

PrimeFactorization factorize(const BigInt& n) {
    if (n == 0) throw std::domain_error("factorize: zero has no factorization");
    PrimeFactorization result;
    result.sign = n < 0 ? -1 : 1;
    BigInt m = abs(n);

    std::map<BigInt, unsigned long> found;
    for (unsigned long p = 2; p <= kTrialDivisionBound && m > 1;
         p = (p == 2 ? 3 : p + 2)) {
        if (mpz_cmp_ui(m.get_mpz_t(), p * p) < 0) break;  // m is prime now
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            found[BigInt(p)] += 1;
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        }
    }
    if (m > 1) factor_into(m, found);

    result.factors.assign(found.begin(), found.end());
    return result;
}

std::string to_string(const BigInt& n) { return n.get_str(); }

std::string to_string(const Rat& q) { return q.get_str(); }

BigInt parse_bigint(const std::string& s) {
    std::string body = s;
    bool neg = false;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        neg = body[0] == '-';
        body = body.substr(1);
    }
    if (!all_digits(body))
        throw std::domain_error("parse_bigint: malformed integer '" + s + "'");
    BigInt n(body, 10);
    return neg ? BigInt(-n) : n;
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_bigint(s));
    BigInt num = parse_bigint(s.substr(0, slash));
    std::string den_text = s.substr(slash + 1);
    if (!all_digits(den_text))
        throw std::domain_error("parse_rat: malformed denominator in '" + s +
                                "'");
    BigInt den(den_text, 10);
    if (den == 0) throw std::domain_error("parse_rat: zero denominator");
    return make_rat(num, den);
}

BigInt pow_bigint(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace critdisc
