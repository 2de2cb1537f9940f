#ifndef CRITDISC_EXACTNUM_HPP
#define CRITDISC_EXACTNUM_HPP

// Exact numeric substrate: arbitrary-precision integers and rationals on
// top of GMP, p-adic valuations, and deterministic integer factorization.
//
// Rat values are canonical at every observation point: denominator
// positive, fraction reduced. All construction in this library goes through
// paths that canonicalize (make_rat, parse_rat, gmp arithmetic).

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "critdisc/errors.hpp"

namespace critdisc {

using BigInt = mpz_class;
using Rat = mpq_class;

// Builds a canonical rational. Throws std::domain_error when den = 0.
Rat make_rat(const BigInt& num, const BigInt& den);

// ord_p of a rational, or +infinity for zero. Never a sentinel integer.
class Valuation {
  public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation of(long v) { return Valuation(false, v); }

    bool is_infinity() const { return infinite_; }
    long value() const {
        if (infinite_)
            throw std::domain_error("valuation: +infinity has no finite value");
        return value_;
    }
    bool is_nonnegative() const { return infinite_ || value_ >= 0; }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ &&
               (a.infinite_ || a.value_ == b.value_);
    }

  private:
    Valuation(bool inf, long v) : infinite_(inf), value_(v) {}
    bool infinite_;
    long value_;
};

struct PrimeFactorization {
    // Primes strictly increasing, exponents >= 1. sign is +1 or -1.
    int sign = 1;
    std::vector<std::pair<BigInt, unsigned long>> factors;

    BigInt value() const;
};

// Deterministic Baillie-PSW style primality via GMP. 2 is prime.
bool is_prime(const BigInt& n);

// ord_p(q); +infinity iff q = 0. Throws std::domain_error if p is not prime.
Valuation padic_valuation(const Rat& q, const BigInt& p);

// true iff ord_p(q) >= 0. Throws std::domain_error if p is not prime.
bool is_p_integral(const Rat& q, const BigInt& p);

// Complete factorization of n != 0. Trial division below 10^6, then
// Pollard rho with a fixed seed so output is deterministic.
PrimeFactorization factorize(const BigInt& n);

// Serialization. Rationals print as "num/den" with "/den" omitted when the
// denominator is 1; integers as plain decimal. Parsing accepts exactly the
// printed forms (plus unreduced fractions, which are canonicalized).
std::string to_string(const BigInt& n);
std::string to_string(const Rat& q);
BigInt parse_bigint(const std::string& s);
Rat parse_rat(const std::string& s);

// p^e for e >= 0.
BigInt pow_bigint(const BigInt& base, unsigned long e);

}  // namespace critdisc

#endif
