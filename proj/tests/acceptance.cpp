// Acceptance suite: one line per criterion, nonzero exit iff any fails.
// Deterministic seeds throughout; the scan criterion shells out to the CLI
// named by CRITDISC_CLI_PATH.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "critdisc/family.hpp"
#include "critdisc/lattes.hpp"
#include "critdisc/reduction.hpp"

using namespace critdisc;

namespace {

Rat rat_pow(const Rat& base, long e) {
    Rat acc(1);
    for (long k = 0; k < e; ++k) acc *= base;
    return acc;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }
Outcome pass() { return {true, ""}; }

// ---------------------------------------------------------------- 1
Outcome pinned_value() {
    const StandardPair pair = build_lattes(Cubic{Rat(0), Rat(1), Rat(0)});
    if (to_string(wronskian(pair)) != "4x^6+20x^4-20x^2-4")
        return fail("wronskian mismatch: " + to_string(wronskian(pair)));
    if (critical_discriminant(pair) != Rat(pow_bigint(2, 48)))
        return fail("delta mismatch: " +
                    to_string(critical_discriminant(pair)));
    return pass();
}

// ---------------------------------------------------------------- 2
Outcome identity_suite() {
    std::mt19937 rng(20260802);
    std::uniform_int_distribution<int> dist(-20, 20);
    int done = 0;
    while (done < 100) {
        const Cubic f{Rat(dist(rng)), Rat(dist(rng)), Rat(dist(rng))};
        if (cubic_disc(f) == 0) continue;
        const IdentityReport rep = verify_discriminant_identities(f);
        if (!rep.disc_identity_ok || !rep.weier_identity_ok)
            return fail("identity failed for " + to_string(f.poly()));
        ++done;
    }
    return pass();
}

// ---------------------------------------------------------------- 3
Outcome transformation_laws() {
    std::mt19937 rng(20260803);
    std::uniform_int_distribution<int> dist(-9, 9);
    std::uniform_int_distribution<int> deg_dist(2, 5);
    const auto nonzero_rat = [&](int max_den) {
        Rat r(0);
        while (r == 0) r = make_rat(dist(rng), 1 + rng() % max_den);
        return r;
    };
    const auto random_poly = [&](long n) {
        std::vector<Rat> cs(static_cast<std::size_t>(n) + 1);
        for (auto& c : cs) c = Rat(dist(rng));
        while (cs.back() == 0) cs.back() = Rat(dist(rng));
        return Poly::from_coeffs(cs);
    };

    for (int trial = 0; trial < 200; ++trial) {
        const long n = deg_dist(rng);
        const Poly p = random_poly(n);
        const Rat lam = nonzero_rat(3);
        if (disc(lam * p) != rat_pow(lam, 2 * n - 2) * disc(p))
            return fail("disc(lambda P) law failed");
    }
    for (int trial = 0; trial < 200; ++trial) {
        const long n = deg_dist(rng);
        const Poly p = random_poly(n);
        const Rat alpha = nonzero_rat(3);
        const Rat beta = make_rat(dist(rng), 1 + rng() % 3);
        if (disc(affine_substitute(p, alpha, beta)) !=
            rat_pow(alpha, n * (n - 1)) * disc(p))
            return fail("disc(P(alpha x + beta)) law failed");
    }
    for (int trial = 0; trial < 200; ++trial) {
        const long d = 2 + trial % 3;
        std::vector<Rat> acoeffs(static_cast<std::size_t>(d) + 1, Rat(0));
        acoeffs[static_cast<std::size_t>(d)] = 1;
        for (long j = 0; j < d; ++j)
            acoeffs[static_cast<std::size_t>(j)] = Rat(dist(rng));
        std::vector<Rat> bcoeffs(static_cast<std::size_t>(d), Rat(0));
        bcoeffs[static_cast<std::size_t>(d - 1)] = nonzero_rat(2);
        for (long j = 0; j + 1 < d; ++j)
            bcoeffs[static_cast<std::size_t>(j)] = Rat(dist(rng));
        const StandardPair pair(d, bcoeffs.back(),
                                Poly::from_coeffs(acoeffs),
                                Poly::from_coeffs(bcoeffs));
        const Rat alpha = nonzero_rat(3);
        const Rat beta = make_rat(dist(rng), 1 + rng() % 3);
        const StandardPair conj = conjugate(pair, AffineAut{alpha, beta});
        if (critical_discriminant(conj) !=
            rat_pow(alpha, (2 * d - 2) * (2 * d - 3)) *
                critical_discriminant(pair))
            return fail("conjugation law failed for d = " + std::to_string(d));
    }
    return pass();
}

// ---------------------------------------------------------------- 4
Outcome quadratic_closed_form() {
    std::mt19937 rng(20260804);
    std::uniform_int_distribution<int> dist(-30, 30);
    for (int trial = 0; trial < 200; ++trial) {
        const Rat a = make_rat(dist(rng), 1 + rng() % 4);
        const Rat b = make_rat(dist(rng), 1 + rng() % 4);
        const Rat c = make_rat(dist(rng), 1 + rng() % 4);
        Rat lam(0);
        while (lam == 0) lam = make_rat(dist(rng), 1 + rng() % 4);
        const StandardPair pair(2, lam, Poly::from_coeffs({b, a, Rat(1)}),
                                Poly::from_coeffs({c, lam}));
        const Rat expected = 4 * c * c - 4 * lam * (a * c - lam * b);
        if (critical_discriminant(pair) != expected)
            return fail("closed form failed at trial " +
                        std::to_string(trial));
    }
    return pass();
}

// ---------------------------------------------------------------- 5
Outcome reduction_oracle() {
    std::mt19937 rng(20260805);
    std::uniform_int_distribution<int> dist(-20, 20);
    const long primes[] = {3, 5, 7};
    for (int trial = 0; trial < 500; ++trial) {
        const BigInt p(primes[trial % 3]);
        const long d = 2 + (trial / 3) % 3;
        long lam = 0;
        while (lam % primes[trial % 3] == 0 || lam == 0) lam = dist(rng);
        std::vector<Rat> acoeffs(static_cast<std::size_t>(d) + 1, Rat(0));
        acoeffs[static_cast<std::size_t>(d)] = 1;
        for (long j = 0; j < d; ++j)
            acoeffs[static_cast<std::size_t>(j)] = Rat(dist(rng));
        std::vector<Rat> bcoeffs(static_cast<std::size_t>(d), Rat(0));
        bcoeffs[static_cast<std::size_t>(d - 1)] = Rat(lam);
        for (long j = 0; j + 1 < d; ++j)
            bcoeffs[static_cast<std::size_t>(j)] = Rat(dist(rng));
        const StandardPair pair(d, Rat(lam), Poly::from_coeffs(acoeffs),
                                Poly::from_coeffs(bcoeffs));

        const Rat delta = critical_discriminant(pair);
        const bool lhs =
            delta != 0 && padic_valuation(delta, p) == Valuation::of(0);
        const ReducedMap red = reduce_map(pair, p);
        const bool rhs = red.report.a_degree_full && red.report.coprime &&
                         red.report.wronskian_squarefree;
        if (lhs != rhs || red.report.model_good != rhs)
            return fail("oracle mismatch at trial " + std::to_string(trial) +
                        " p = " + to_string(p));
    }
    return pass();
}

// ---------------------------------------------------------------- 6
BigInt next_prime(const BigInt& n) {
    BigInt r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Outcome minimization_congruence() {
    std::mt19937 rng(20260806);
    std::uniform_int_distribution<int> dist(-12, 12);
    const long primes[] = {3, 5, 7};
    for (int trial = 0; trial < 50; ++trial) {
        const long d = 2 + trial % 3;
        std::vector<Rat> acoeffs(static_cast<std::size_t>(d) + 1, Rat(0));
        std::vector<Rat> bcoeffs(static_cast<std::size_t>(d), Rat(0));
        StandardPair pair(2, Rat(1), Poly::from_coeffs({Rat(1), Rat(0),
                                                        Rat(1)}),
                          Poly::from_coeffs({Rat(0), Rat(1)}));
        Rat delta(0);
        while (delta == 0) {
            acoeffs.assign(static_cast<std::size_t>(d) + 1, Rat(0));
            acoeffs[static_cast<std::size_t>(d)] = 1;
            for (long j = 0; j < d; ++j)
                acoeffs[static_cast<std::size_t>(j)] = Rat(dist(rng));
            bcoeffs.assign(static_cast<std::size_t>(d), Rat(0));
            long lam = 0;
            while (lam == 0) lam = dist(rng);
            bcoeffs[static_cast<std::size_t>(d - 1)] = Rat(lam);
            for (long j = 0; j + 1 < d; ++j)
                bcoeffs[static_cast<std::size_t>(j)] = Rat(dist(rng));
            pair = StandardPair(d, Rat(lam), Poly::from_coeffs(acoeffs),
                                Poly::from_coeffs(bcoeffs));
            delta = critical_discriminant(pair);
        }
        const long step = descent_step_size(d);

        // congruence: delta is ord_p of some model, so it matches the
        // input's valuation modulo the step size
        const BigInt p(primes[trial % 3]);
        const LocalMinimizationResult res = local_minimize(pair, p);
        const long ord_in = padic_valuation(delta, p).value();
        if ((ord_in - res.delta) % step != 0)
            return fail("congruence failed at trial " + std::to_string(trial));

        // round-trip: scale a good-reduction model by alpha = q, minimize
        BigInt q(3);
        while (padic_valuation(delta, q) != Valuation::of(0))
            q = next_prime(q);
        const StandardPair scaled =
            conjugate(pair, AffineAut{Rat(q), Rat(0)});
        const LocalMinimizationResult rt = local_minimize(scaled, q);
        if (rt.delta != 0 || !rt.certified)
            return fail("round-trip delta != 0 at trial " +
                        std::to_string(trial));
        if (!is_p_integral(rt.minimal_model, q))
            return fail("witness model not integral at trial " +
                        std::to_string(trial));
        if (conjugate(scaled, rt.witness) != rt.minimal_model)
            return fail("witness does not map to the model at trial " +
                        std::to_string(trial));
        if (padic_valuation(critical_discriminant(rt.minimal_model), q) !=
            Valuation::of(0))
            return fail("round-trip model not unit at trial " +
                        std::to_string(trial));
    }
    return pass();
}

// ---------------------------------------------------------------- 7
Outcome quadratic_remark() {
    std::mt19937 rng(20260807);
    std::uniform_int_distribution<int> dist(-15, 15);
    int done = 0;
    while (done < 50) {
        long lam = dist(rng);
        if (lam == 0 || std::gcd(std::abs(lam), 30L) != 1) continue;
        const Rat eps = family_epsilon(2, Rat(lam));
        const Rat c = make_rat(dist(rng), 1 + rng() % 3);
        const Rat a1 = eps * c;
        const Rat a0 = make_rat(dist(rng), 1 + rng() % 3);
        const StandardPair pair(2, Rat(lam),
                                Poly::from_coeffs({a0, a1, Rat(1)}),
                                Poly::from_coeffs({c, Rat(lam)}));
        if (!is_member(pair).member) continue;
        for (long p : {2L, 3L, 5L}) {
            const long bound = (p == 2 ? 2 : 0) + 1;  // ord_p(4 lambda^2) + 1
            const LocalMinimizationResult res = local_minimize(pair, p);
            if (res.delta > bound)
                return fail("delta " + std::to_string(res.delta) +
                            " exceeds bound at p = " + std::to_string(p));
            const QuadraticModelResult q = quadratic_minimal_model(pair, p);
            if (!q.bound_ok || q.minimize_delta != res.delta)
                return fail("quadratic model disagrees at p = " +
                            std::to_string(p));
        }
        ++done;
    }
    return pass();
}

// ---------------------------------------------------------------- 8
Outcome lattes_commutation() {
    // the hand-checkable case first
    const Cubic base{Rat(0), Rat(-1), Rat(1)};
    const EllipticPoint twice =
        double_point(EllipticPoint::affine(Rat(0), Rat(1)), base);
    const StandardPair base_pair = build_lattes(base);
    if (twice.at_infinity || twice.x != make_rat(1, 4))
        return fail("x(2P) != 1/4 on the base curve");
    if (evaluate(base_pair.A(), Rat(0)) / evaluate(base_pair.B(), Rat(0)) !=
        make_rat(1, 4))
        return fail("phi(0) != 1/4 on the base curve");

    std::mt19937 rng(20260808);
    std::uniform_int_distribution<int> dist(-10, 10);
    int done = 0;
    while (done < 50) {
        const Rat a(dist(rng)), b(dist(rng));
        const Rat x0 = make_rat(dist(rng), 1 + rng() % 3);
        Rat y0 = make_rat(dist(rng), 1 + rng() % 3);
        if (y0 == 0) y0 = 1;
        const Rat c = y0 * y0 - (x0 * x0 * x0 + a * x0 * x0 + b * x0);
        const Cubic f{a, b, c};
        if (cubic_disc(f) == 0) continue;
        const StandardPair pair = build_lattes(f);
        const EllipticPoint p2 =
            double_point(EllipticPoint::affine(x0, y0), f);
        if (p2.at_infinity) continue;
        const Rat den = evaluate(pair.B(), x0);
        if (den == 0) continue;
        if (evaluate(pair.A(), x0) / den != p2.x)
            return fail("commutation failed at trial " + std::to_string(done));
        ++done;
    }
    return pass();
}

// ---------------------------------------------------------------- 9
Outcome szpiro_local() {
    std::mt19937 rng(20260809);
    std::uniform_int_distribution<int> dist(-6, 6);
    int cubics = 0;
    long checked = 0;
    while (cubics < 20) {
        const Cubic f{Rat(dist(rng)), Rat(dist(rng)), Rat(dist(rng))};
        if (cubic_disc(f) == 0) continue;
        ++cubics;
        const BigInt delta_e = weierstrass_invariants(f).delta_e.get_num();
        for (const auto& [p, e] : factorize(delta_e).factors) {
            if (p == 2) continue;
            if (reduction_type_at(f, p).type !=
                ReductionType::multiplicative_minimal)
                continue;
            const SzpiroLocalReport rep = szpiro_local_check(f, p);
            if (!rep.certified) continue;
            if (!rep.holds)
                return fail("5 ord_p(Delta_E) > delta_p at p = " +
                            to_string(p));
            ++checked;
        }
    }
    if (checked == 0) return fail("no certified multiplicative prime seen");
    return pass();
}

// ---------------------------------------------------------------- 10
std::string run_pipe(const std::string& cmd, int& status) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return "";
    }
    std::string out;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    const int raw = pclose(pipe);
    status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::string strip_ms(const std::string& line) {
    if (!line.empty() && line[0] == '#') return line;
    const size_t pos = line.rfind(',');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

Outcome scan_determinism() {
    const char* cli = std::getenv("CRITDISC_CLI_PATH");
#ifdef CRITDISC_CLI_PATH
    if (!cli) cli = CRITDISC_CLI_PATH;
#endif
    if (!cli) return fail("CRITDISC_CLI_PATH is unset");
    const std::string base = std::string(cli) +
                             " scan --family lattes --range -2 2 -2 2 -2 2 "
                             "--jobs ";
    int st1 = -1, st4 = -1;
    const std::string serial = run_pipe(base + "1 2>/dev/null", st1);
    const std::string parallel = run_pipe(base + "4 2>/dev/null", st4);
    if (st1 != 0 || st4 != 0) return fail("scan exited nonzero");

    const std::vector<std::string> lines1 = split_lines(serial);
    const std::vector<std::string> lines4 = split_lines(parallel);
    if (lines1.size() != lines4.size()) return fail("row counts differ");
    for (std::size_t i = 0; i < lines1.size(); ++i)
        if (strip_ms(lines1[i]) != strip_ms(lines4[i]))
            return fail("row " + std::to_string(i) + " differs across jobs");

    if (lines1.empty() ||
        lines1.front() != "a,b,c,norm_delta,norm_radical,ratio,all_certified,ms")
        return fail("missing CSV header");
    if (lines1.back() != "# skipped 9 degenerate members")
        return fail("unexpected footer: " + lines1.back());
    long data = 0;
    for (std::size_t i = 1; i + 1 < lines1.size(); ++i) {
        std::vector<std::string> cells;
        std::stringstream row(lines1[i]);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() != 8)
            return fail("row " + std::to_string(i) + " malformed");
        const BigInt nd = parse_bigint(cells[3]);
        const BigInt nr = parse_bigint(cells[4]);
        if (nd < 1 || nr < 1) return fail("norms must be positive integers");
        if (cells[6] != "true" && cells[6] != "false")
            return fail("bad all_certified cell");
        ++data;
    }
    if (data != 116) return fail("expected 116 rows, saw " +
                                 std::to_string(data));
    return pass();
}

struct Criterion {
    int id;
    const char* label;
    double budget_s;  // negative: no budget
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "lattes pair of x^3+x: wronskian and delta = 2^48", 1,
         pinned_value},
        {2, "discriminant identities on 100 random cubics", 30,
         identity_suite},
        {3, "scaling, substitution, conjugation laws x200", 60,
         transformation_laws},
        {4, "quadratic closed form on 200 random pairs", 5,
         quadratic_closed_form},
        {5, "good-reduction oracle on 500 pairs at p in {3,5,7}", 60,
         reduction_oracle},
        {6, "minimization congruence and 50 scaling round-trips", 60,
         minimization_congruence},
        {7, "quadratic delta bound ord_p(4 lambda^2)+1", 30,
         quadratic_remark},
        {8, "lattes commutation phi(x(P)) = x(2P), 50 points", 10,
         lattes_commutation},
        {9, "szpiro local inequality at multiplicative primes", 120,
         szpiro_local},
        {10, "scan determinism and finite bounded output", -1,
         scan_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        const bool in_budget = c.budget_s < 0 || secs < c.budget_s;
        const bool ok = outcome.pass && in_budget;
        if (!ok) ++failures;
        std::printf("%2d %s  %7.2fs", c.id, ok ? "PASS" : "FAIL", secs);
        if (c.budget_s >= 0)
            std::printf(" (budget %gs)", c.budget_s);
        std::printf("  %s", c.label);
        if (!outcome.pass) std::printf("  [%s]", outcome.detail.c_str());
        else if (!in_budget) std::printf("  [over budget]");
        std::printf("\n");
    }
    if (failures == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d of 10 criteria failed\n", failures);
    return failures;
}
