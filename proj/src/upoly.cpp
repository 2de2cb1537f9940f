#include "critdisc/upoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace critdisc {

namespace {

void strip_trailing_zeros(std::vector<Rat>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// ----- integer polynomial layer for the subresultant sequence -----------
//
// Ascending coefficients, trailing entry nonzero. Divisions below are all
// exact by the theory of subresultants; exact_div enforces that, which is
// what keeps the computation fraction-free on integer inputs.

using ZPoly = std::vector<BigInt>;

long zdeg(const ZPoly& a) { return static_cast<long>(a.size()) - 1; }

void znormalize(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

BigInt exact_div(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0)
        throw internal_consistency_error(
            "subresultant sequence: division was not exact");
    return q;
}

BigInt zcontent(const ZPoly& a) {
    BigInt g = 0;
    for (const BigInt& c : a)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;  // positive since a is nonzero
}

BigInt zpow(const BigInt& b, long e) {
    if (e < 0)
        throw internal_consistency_error("zpow: negative exponent");
    return pow_bigint(b, static_cast<unsigned long>(e));
}

// Pseudo-remainder R with lc(B)^(delta+1) A = B Q + R, delta = degA - degB.
ZPoly prem(ZPoly a, const ZPoly& b) {
    const long db = zdeg(b);
    const BigInt& lb = b.back();
    long e = zdeg(a) - db + 1;
    while (!a.empty() && zdeg(a) >= db) {
        const long da = zdeg(a);
        const BigInt la = a.back();
        for (BigInt& c : a) c *= lb;
        for (long i = 0; i <= db; ++i) a[da - db + i] -= la * b[i];
        znormalize(a);
        --e;
    }
    if (e > 0) {
        const BigInt scale = zpow(lb, e);
        for (BigInt& c : a) c *= scale;
    }
    return a;
}

// Resultant of nonzero integer polynomials in the Sylvester orientation
// res(A, B) = lc(A)^deg(B) * prod_{A(r)=0} B(r), via the subresultant
// polynomial remainder sequence.
BigInt zresultant(ZPoly a, ZPoly b) {
    int sign = 1;
    if (zdeg(a) < zdeg(b)) {
        if ((zdeg(a) & 1) && (zdeg(b) & 1)) sign = -sign;
        std::swap(a, b);
    }
    const BigInt ca = zcontent(a);
    const BigInt cb = zcontent(b);
    for (BigInt& c : a) c = exact_div(c, ca);
    for (BigInt& c : b) c = exact_div(c, cb);
    BigInt t = zpow(ca, zdeg(b)) * zpow(cb, zdeg(a));

    BigInt g = 1, h = 1;
    while (zdeg(b) > 0) {
        const long delta = zdeg(a) - zdeg(b);
        if ((zdeg(a) & 1) && (zdeg(b) & 1)) sign = -sign;
        ZPoly r = prem(a, b);
        if (r.empty()) return 0;  // common factor
        a = std::move(b);
        const BigInt divisor = g * zpow(h, delta);
        for (BigInt& c : r) c = exact_div(c, divisor);
        b = std::move(r);
        g = a.back();
        if (delta >= 1) h = exact_div(zpow(g, delta), zpow(h, delta - 1));
    }
    const long da = zdeg(a);
    BigInt core = 1;
    if (da > 0) core = exact_div(zpow(b[0], da), zpow(h, da - 1));
    return BigInt(sign) * t * core;
}

// Clears denominators: returns (Z, den) with Z = den * P, den > 0.
std::pair<ZPoly, BigInt> to_integer_poly(const Poly& p) {
    BigInt den = 1;
    for (const Rat& c : p.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    ZPoly z;
    z.reserve(p.coeffs().size());
    for (const Rat& c : p.coeffs()) {
        Rat scaled = c * Rat(den);
        z.push_back(BigInt(scaled.get_num()));  // den is 1 after scaling
    }
    return {std::move(z), std::move(den)};
}

// ----- division over the rationals ---------------------------------------

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    const long db = *b.degree();
    std::vector<Rat> rem(a.coeffs());
    std::vector<Rat> quot;
    if (static_cast<long>(rem.size()) - 1 >= db)
        quot.assign(rem.size() - db, Rat(0));
    const Rat& lb = b.leading_coeff();
    while (static_cast<long>(rem.size()) - 1 >= db && !rem.empty()) {
        const long da = static_cast<long>(rem.size()) - 1;
        Rat q = rem.back() / lb;
        quot[da - db] = q;
        for (long i = 0; i <= db; ++i)
            rem[da - db + i] -= q * b.coeffs()[i];
        strip_trailing_zeros(rem);
    }
    return {Poly::from_coeffs(std::move(quot)),
            Poly::from_coeffs(std::move(rem))};
}

BigInt mod_reduce(const BigInt& x, const BigInt& p) {
    BigInt r = x % p;
    if (r < 0) r += p;
    return r;
}

BigInt mod_inverse(const BigInt& x, const BigInt& p) {
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()) == 0)
        throw internal_consistency_error("mod_inverse: not invertible");
    return inv;
}

}  // namespace

Poly Poly::constant(const Rat& c) {
    return from_coeffs({c});
}

Poly Poly::monomial(const Rat& c, std::size_t power) {
    std::vector<Rat> v(power + 1, Rat(0));
    v[power] = c;
    return from_coeffs(std::move(v));
}

Poly Poly::from_coeffs(std::vector<Rat> coeffs) {
    strip_trailing_zeros(coeffs);
    Poly p;
    p.coeffs_ = std::move(coeffs);
    return p;
}

std::optional<long> Poly::degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return static_cast<long>(coeffs_.size()) - 1;
}

Rat Poly::coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Rat(0);
}

Rat Poly::leading_coeff() const {
    if (coeffs_.empty())
        throw std::domain_error("leading_coeff of zero polynomial");
    return coeffs_.back();
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> v(std::max(a.coeffs().size(), b.coeffs().size()), Rat(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) v[i] += a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) v[i] += b.coeffs()[i];
    return Poly::from_coeffs(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rat> v(std::max(a.coeffs().size(), b.coeffs().size()), Rat(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) v[i] += a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) v[i] -= b.coeffs()[i];
    return Poly::from_coeffs(std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero();
    std::vector<Rat> v(a.coeffs().size() + b.coeffs().size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            v[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return Poly::from_coeffs(std::move(v));
}

Poly operator*(const Rat& c, const Poly& a) {
    std::vector<Rat> v;
    v.reserve(a.coeffs().size());
    for (const Rat& x : a.coeffs()) v.push_back(c * x);
    return Poly::from_coeffs(std::move(v));
}

Poly operator-(const Poly& a) { return Rat(-1) * a; }

Poly derivative(const Poly& p) {
    if (p.coeffs().size() <= 1) return Poly::zero();
    std::vector<Rat> v;
    v.reserve(p.coeffs().size() - 1);
    for (std::size_t i = 1; i < p.coeffs().size(); ++i)
        v.push_back(Rat(static_cast<long>(i)) * p.coeffs()[i]);
    return Poly::from_coeffs(std::move(v));
}

Rat evaluate(const Poly& p, const Rat& x) {
    Rat acc(0);
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Poly affine_substitute(const Poly& p, const Rat& alpha, const Rat& beta) {
    const Poly arg = Poly::from_coeffs({beta, alpha});
    Poly acc = Poly::zero();
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        acc = acc * arg + Poly::constant(*it);
    return acc;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero())
        throw std::domain_error("poly_gcd(0, 0) undefined");
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return (1 / x.leading_coeff()) * x;
}

Rat resultant(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero())
        throw std::domain_error("resultant of zero polynomial");
    auto [zp, dp] = to_integer_poly(p);
    auto [zq, dq] = to_integer_poly(q);
    // Orientation: res(x - a, x - b) = b - a, which is the Sylvester form
    // with the arguments swapped.
    BigInt zres = zresultant(std::move(zq), std::move(zp));
    BigInt scale = zpow(dq, *p.degree()) * zpow(dp, *q.degree());
    return make_rat(zres, scale);
}

Rat disc(const Poly& p) {
    const auto deg = p.degree();
    if (!deg || *deg < 1)
        throw std::domain_error("disc requires degree >= 1");
    const long n = *deg;
    Rat r = resultant(p, derivative(p)) / p.leading_coeff();
    return (n % 4 == 2 || n % 4 == 3) ? Rat(-r) : r;
}

std::optional<long> PolyModP::degree() const {
    if (coeffs.empty()) return std::nullopt;
    return static_cast<long>(coeffs.size()) - 1;
}

BigInt PolyModP::leading_coeff() const {
    if (coeffs.empty())
        throw std::domain_error("leading_coeff of zero polynomial");
    return coeffs.back();
}

PolyModP modp_from_coeffs(const BigInt& p, std::vector<BigInt> coeffs) {
    for (BigInt& c : coeffs) c = mod_reduce(c, p);
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return PolyModP{p, std::move(coeffs)};
}

PolyModP modp_add(const PolyModP& a, const PolyModP& b) {
    std::vector<BigInt> v(std::max(a.coeffs.size(), b.coeffs.size()),
                          BigInt(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) v[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) v[i] += b.coeffs[i];
    return modp_from_coeffs(a.p, std::move(v));
}

PolyModP modp_sub(const PolyModP& a, const PolyModP& b) {
    std::vector<BigInt> v(std::max(a.coeffs.size(), b.coeffs.size()),
                          BigInt(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) v[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) v[i] -= b.coeffs[i];
    return modp_from_coeffs(a.p, std::move(v));
}

PolyModP modp_mul(const PolyModP& a, const PolyModP& b) {
    if (a.is_zero() || b.is_zero()) return PolyModP{a.p, {}};
    std::vector<BigInt> v(a.coeffs.size() + b.coeffs.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            v[i + j] += a.coeffs[i] * b.coeffs[j];
    return modp_from_coeffs(a.p, std::move(v));
}

PolyModP modp_derivative(const PolyModP& a) {
    if (a.coeffs.size() <= 1) return PolyModP{a.p, {}};
    std::vector<BigInt> v;
    v.reserve(a.coeffs.size() - 1);
    for (std::size_t i = 1; i < a.coeffs.size(); ++i)
        v.push_back(BigInt(static_cast<long>(i)) * a.coeffs[i]);
    return modp_from_coeffs(a.p, std::move(v));
}

PolyModP modp_gcd(const PolyModP& a, const PolyModP& b) {
    if (a.is_zero() && b.is_zero())
        throw std::domain_error("modp_gcd(0, 0) undefined");
    PolyModP x = a, y = b;
    while (!y.is_zero()) {
        // remainder of x by y
        const long dy = *y.degree();
        const BigInt inv_ly = mod_inverse(y.leading_coeff(), y.p);
        std::vector<BigInt> rem = x.coeffs;
        while (static_cast<long>(rem.size()) - 1 >= dy && !rem.empty()) {
            const long dx = static_cast<long>(rem.size()) - 1;
            const BigInt q = mod_reduce(rem.back() * inv_ly, x.p);
            for (long i = 0; i <= dy; ++i) {
                rem[dx - dy + i] =
                    mod_reduce(rem[dx - dy + i] - q * y.coeffs[i], x.p);
            }
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
        }
        x = std::move(y);
        y = PolyModP{x.p, std::move(rem)};
    }
    // make monic
    const BigInt inv = mod_inverse(x.leading_coeff(), x.p);
    for (BigInt& c : x.coeffs) c = mod_reduce(c * inv, x.p);
    return x;
}

PolyModP reduce_mod_p(const Poly& pol, const BigInt& p) {
    if (!is_prime(p))
        throw std::domain_error("reduce_mod_p: " + to_string(p) +
                                " is not prime");
    std::vector<BigInt> v;
    v.reserve(pol.coeffs().size());
    for (std::size_t k = 0; k < pol.coeffs().size(); ++k) {
        const Rat& c = pol.coeffs()[k];
        BigInt den(c.get_den());
        if (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()))
            throw integrality_error("coefficient of x^" + std::to_string(k) +
                                    " = " + to_string(c) +
                                    " is not integral at p = " + to_string(p));
        BigInt num(c.get_num());
        v.push_back(mod_reduce(num * mod_inverse(mod_reduce(den, p), p), p));
    }
    return modp_from_coeffs(p, std::move(v));
}

bool is_squarefree_mod_p(const PolyModP& pol) {
    if (pol.is_zero())
        throw std::domain_error("is_squarefree_mod_p of zero polynomial");
    PolyModP g = modp_gcd(pol, modp_derivative(pol));
    return *g.degree() == 0;
}

// ----- text grammar -------------------------------------------------------

namespace {

struct PolyParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit PolyParser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool peek_is_digit() {
        skip_ws();
        return pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos]));
    }

    [[noreturn]] void fail(const std::string& why) {
        throw std::domain_error("parse_poly: " + why + " at position " +
                                std::to_string(pos) + " in '" + text + "'");
    }

    BigInt parse_nat() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start) fail("expected digits");
        return BigInt(text.substr(start, pos - start), 10);
    }

    // coeff := int | int "/" posint
    Rat parse_coeff(bool negative) {
        BigInt num = parse_nat();
        if (negative) num = -num;
        if (peek_is('/')) {
            ++pos;
            BigInt den = parse_nat();
            if (den == 0) fail("zero denominator");
            return make_rat(num, den);
        }
        return Rat(num);
    }

    // term := coeff "*"? "x" ("^" nat)? | coeff | "x" ("^" nat)?
    void parse_term(bool negative, std::map<unsigned long, Rat>& acc) {
        skip_ws();
        Rat coeff(1);
        bool have_coeff = false;
        if (peek_is_digit()) {
            coeff = parse_coeff(negative);
            have_coeff = true;
        } else if (negative) {
            coeff = Rat(-1);
        }
        if (peek_is('*')) {
            ++pos;
            if (!peek_is('x')) fail("expected x after '*'");
        }
        unsigned long power = 0;
        if (peek_is('x')) {
            ++pos;
            power = 1;
            if (peek_is('^')) {
                ++pos;
                BigInt e = parse_nat();
                if (!e.fits_ulong_p()) fail("exponent too large");
                power = e.get_ui();
            }
        } else if (!have_coeff) {
            fail("expected coefficient or x");
        }
        auto [it, inserted] = acc.emplace(power, coeff);
        if (!inserted) it->second += coeff;
    }
};

void format_term(std::ostringstream& out, const Rat& coeff,
                 unsigned long power, bool first) {
    Rat c = coeff;
    if (first) {
        if (c < 0) {
            out << '-';
            c = -c;
        }
    } else {
        out << (c < 0 ? '-' : '+');
        if (c < 0) c = -c;
    }
    if (power == 0) {
        out << to_string(c);
        return;
    }
    if (c != 1) out << to_string(c);
    out << 'x';
    if (power >= 2) out << '^' << power;
}

}  // namespace

Poly parse_poly(const std::string& text) {
    PolyParser parser(text);
    std::map<unsigned long, Rat> acc;

    parser.skip_ws();
    if (parser.pos == text.size()) parser.fail("empty input");

    bool negative = false;
    if (parser.peek_is('+') || parser.peek_is('-')) {
        negative = text[parser.pos] == '-';
        ++parser.pos;
    }
    parser.parse_term(negative, acc);
    while (true) {
        parser.skip_ws();
        if (parser.pos == text.size()) break;
        char op = text[parser.pos];
        if (op != '+' && op != '-') parser.fail("expected '+' or '-'");
        ++parser.pos;
        parser.parse_term(op == '-', acc);
    }

    unsigned long max_power = 0;
    for (const auto& [power, c] : acc)
        if (c != 0) max_power = std::max(max_power, power);
    std::vector<Rat> coeffs(max_power + 1, Rat(0));
    for (const auto& [power, c] : acc)
        if (c != 0) coeffs[power] = c;
    return Poly::from_coeffs(std::move(coeffs));
}

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        if (p.coeffs()[i] == 0) continue;
        format_term(out, p.coeffs()[i], static_cast<unsigned long>(i), first);
        first = false;
    }
    return out.str();
}

std::string to_string(const PolyModP& p) {
    std::vector<Rat> lifted;
    lifted.reserve(p.coeffs.size());
    for (const BigInt& c : p.coeffs) lifted.emplace_back(c);
    return to_string(Poly::from_coeffs(std::move(lifted)));
}

}  // namespace critdisc
