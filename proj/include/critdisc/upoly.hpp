#ifndef CRITDISC_UPOLY_HPP
#define CRITDISC_UPOLY_HPP

// Univariate polynomials with exact rational coefficients, plus a mod-p
// variant over prime fields. Resultants run through a fraction-free
// subresultant remainder sequence, never a naive Sylvester expansion.

#include <optional>
#include <string>
#include <vector>

#include "critdisc/exactnum.hpp"

namespace critdisc {

class Poly {
  public:
    Poly() = default;  // zero polynomial

    static Poly zero() { return Poly(); }
    static Poly constant(const Rat& c);
    static Poly monomial(const Rat& c, std::size_t power);
    // Coefficients by ascending power; trailing zeros are stripped.
    static Poly from_coeffs(std::vector<Rat> coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is "minus infinity", tagged as nullopt.
    std::optional<long> degree() const;
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    // Coefficient of x^k, zero when k exceeds the degree.
    Rat coeff(std::size_t k) const;
    Rat leading_coeff() const;  // throws on the zero polynomial

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.coeffs_ == b.coeffs_;
    }

  private:
    std::vector<Rat> coeffs_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Rat& c, const Poly& a);
Poly operator-(const Poly& a);

Poly derivative(const Poly& p);
Rat evaluate(const Poly& p, const Rat& x);

// P(alpha x + beta), exact, Horner over the polynomial ring. alpha may be
// any rational; callers needing an automorphism enforce alpha != 0.
Poly affine_substitute(const Poly& p, const Rat& alpha, const Rat& beta);

// Monic gcd over the rationals. Throws std::domain_error when both zero.
Poly poly_gcd(const Poly& a, const Poly& b);

// Resultant, oriented so that resultant(x - a, x - b) = b - a.
// Throws std::domain_error when either input is zero.
Rat resultant(const Poly& p, const Poly& q);

// disc(P) = (-1)^(N(N-1)/2) resultant(P, P') / lc(P), N = deg P >= 1.
// Zero iff P has a repeated root. Throws std::domain_error when deg < 1.
Rat disc(const Poly& p);

struct PolyModP {
    BigInt p;
    std::vector<BigInt> coeffs;  // ascending power, residues in [0, p)

    bool is_zero() const { return coeffs.empty(); }
    std::optional<long> degree() const;
    BigInt leading_coeff() const;

    friend bool operator==(const PolyModP& a, const PolyModP& b) {
        return a.p == b.p && a.coeffs == b.coeffs;
    }
};

PolyModP modp_from_coeffs(const BigInt& p, std::vector<BigInt> coeffs);
PolyModP modp_add(const PolyModP& a, const PolyModP& b);
PolyModP modp_sub(const PolyModP& a, const PolyModP& b);
PolyModP modp_mul(const PolyModP& a, const PolyModP& b);
PolyModP modp_derivative(const PolyModP& a);
// Monic gcd over F_p; gcd(a, 0) is monic a.
PolyModP modp_gcd(const PolyModP& a, const PolyModP& b);

// Coefficientwise reduction. Degree may drop; the caller interprets that.
// Throws integrality_error naming the offending coefficient.
PolyModP reduce_mod_p(const Poly& pol, const BigInt& p);

// true iff gcd(P, P') over F_p is constant. Reports squarefreeness only;
// any expected-degree check is the caller's. Throws on the zero polynomial.
bool is_squarefree_mod_p(const PolyModP& pol);

// Text grammar, round-trip exact:
//   poly  := term (("+"|"-") term)*
//   term  := coeff "*"? "x" ("^" nat)? | coeff | "x" ("^" nat)?
//   coeff := int | int "/" posint
// Whitespace is ignored. Printing uses descending powers, omits zero terms,
// and prints "0" for the zero polynomial.
Poly parse_poly(const std::string& text);
std::string to_string(const Poly& p);
std::string to_string(const PolyModP& p);

}  // namespace critdisc

#endif
