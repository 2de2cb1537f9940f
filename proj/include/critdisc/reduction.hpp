#ifndef CRITDISC_REDUCTION_HPP
#define CRITDISC_REDUCTION_HPP

// Local theory at primes: integrality of models, reduction mod p, the
// descent computing the minimal local valuation delta_p of the critical
// discriminant, the global minimal critical discriminant, and Szpiro-ratio
// reports. Ideals over the rationals are positive integers, and the norm
// of prod p^e is prod p^e itself.

#include <optional>
#include <set>
#include <vector>

#include "critdisc/family.hpp"

namespace critdisc {

// Primes dividing the denominator of lambda. delta_p is undefined there.
// (The Archimedean place is implicit and unrepresented.)
std::vector<BigInt> lambda_denominator_primes(const Rat& lambda);

// true iff every a_j, b_j and lambda is p-integral.
bool is_p_integral(const StandardPair& pair, const BigInt& p);

struct ReductionReport {
    bool a_degree_full = false;        // reduced A has degree d
    bool coprime = false;              // reduced A, B coprime over F_p
    bool wronskian_squarefree = false; // reduced W squarefree of degree 2d-2
    bool model_good = false;           // conjunction of the three
};

struct ReducedMap {
    PolyModP A;
    PolyModP B;
    ReductionReport report;
};

// Reduction of a p-integral model. For pairs whose lambda stays a unit
// mod p, model_good coincides with (critical discriminant mod p != 0).
ReducedMap reduce_map(const StandardPair& pair, const BigInt& p);

struct LocalMinimizationResult {
    BigInt p;
    long delta = 0;          // ord_p of the critical discriminant reached
    bool certified = false;  // true iff delta < (2d-2)(2d-3)
    AffineAut witness;       // conjugate(input, witness) = minimal_model
    StandardPair minimal_model;
};

inline long descent_step_size(long d) { return (2 * d - 2) * (2 * d - 3); }

// Default bound on multi-level descent jumps; the CLI overrides it.
inline constexpr long kDefaultMMax = 2;
// A descent level is abandoned when its residue search would exceed this.
inline constexpr long kResidueSearchCap = 10000000;

// Descent for delta_p. Integralizes with sigma = (p^m, 0) if needed, then
// repeatedly conjugates by sigma(x) = x/p + gamma/p for residues gamma that
// keep the model p-integral; each accepted step lowers ord_p of the
// critical discriminant by exactly (2d-2)(2d-3). When single-level steps
// are exhausted and ord is still >= (2d-2)(2d-3), jumps x/p^m + gamma/p^m
// for 2 <= m <= m_max are attempted (cost-capped). certified is true
// exactly when the final ord is < (2d-2)(2d-3), which pins delta_p.
// Uncertified results are upper bounds congruent to delta_p.
//
// Throws std::domain_error when p is not prime, p divides the denominator
// of lambda, m_max < 0, or the critical discriminant vanishes.
LocalMinimizationResult local_minimize(const StandardPair& pair,
                                       const BigInt& p,
                                       long m_max = kDefaultMMax);

struct GlobalDiscriminantEntry {
    BigInt p;
    long delta;
    bool certified;
};

struct GlobalDiscriminant {
    // Ascending primes, delta >= 1 (primes with delta_p = 0 are omitted).
    std::vector<GlobalDiscriminantEntry> entries;
    // Primes where lambda is non-integral; delta_p undefined there.
    std::vector<BigInt> excluded_primes;
};

// Clears denominators with one global conjugation sigma = (N, 0), N the
// least positive integer making the pair integral at every prime outside
// the excluded set, then minimizes locally at each prime dividing the
// numerator of the resulting critical discriminant.
// Requires a family member; throws std::domain_error otherwise.
GlobalDiscriminant minimal_critical_discriminant(const StandardPair& pair,
                                                 long m_max = kDefaultMMax);

struct SzpiroReport {
    BigInt norm_delta;    // prod p^delta_p
    BigInt norm_radical;  // prod p over listed primes
    long exponent_bound;  // (2d-2)(2d-3)
    bool ratio_defined;   // false when norm_radical = 1
    std::string ratio;    // log(norm_delta)/log(norm_radical), 6 decimals,
                          // correctly rounded; empty when undefined
    bool all_certified;
};

SzpiroReport szpiro_report(const GlobalDiscriminant& gd, long d);

struct QuadraticModelResult {
    StandardPair model;      // A = x^2 + p^{2m} a, B = lambda x
    long m;                  // the unique m with 0 <= ord_p(p^{2m} a) <= 1
    long ord_delta_model;    // ord_p of the model's critical discriminant
    long bound;              // ord_p(4 lambda^2) + 1
    long minimize_delta;     // delta from local_minimize on the input
    bool bound_ok;           // ord_delta_model <= bound && delta <= bound
};

// d = 2 only. Centers the pair to the shape A = x^2 + a, B = lambda x,
// then scales by sigma(x) = p^m x so that 0 <= ord_p of the discriminant
// contribution of a is at most 1. Verifies ord_p(Delta) <= ord_p(4
// lambda^2) + 1 and that local_minimize respects the same bound.
// Throws std::domain_error when d != 2, the pair is not a member, or p
// divides the denominator of lambda.
QuadraticModelResult quadratic_minimal_model(const StandardPair& pair,
                                             const BigInt& p,
                                             long m_max = kDefaultMMax);

}  // namespace critdisc

#endif
