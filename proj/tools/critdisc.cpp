// critdisc: exact critical discriminants of standard-form rational maps,
// descent-minimized local valuations, Lattes-family checks, and CSV scans.
//
// Exit codes: 0 success, 1 domain or parse error, 2 non-membership,
// 3 internal consistency failure.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "critdisc/jsonio.hpp"

namespace {

using namespace critdisc;

long resolve_m_max(const std::optional<long>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CRITDISC_M_MAX")) {
        const std::string text(env);
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(text, &used);
        } catch (const std::exception&) {
            throw std::domain_error("CRITDISC_M_MAX is not an integer: " +
                                    text);
        }
        if (used != text.size())
            throw std::domain_error("CRITDISC_M_MAX is not an integer: " +
                                    text);
        return value;
    }
    return kDefaultMMax;
}

struct PairFlags {
    long d = 0;
    std::string lambda;
    std::string a;
    std::string b;

    void attach(CLI::App* cmd) {
        cmd->add_option("--d", d, "degree d >= 2")->required();
        cmd->add_option("--lambda", lambda, "multiplier at infinity")
            ->required();
        cmd->add_option("--A", a, "monic numerator, degree d")->required();
        cmd->add_option("--B", b, "denominator, degree d-1, leading lambda")
            ->required();
    }

    StandardPair build() const {
        return StandardPair(d, parse_rat(lambda), parse_poly(a),
                            parse_poly(b));
    }
};

void emit(const json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

int run_eval(const PairFlags& flags) {
    const StandardPair pair = flags.build();
    const MembershipReport membership = is_member(pair);
    json out{{"pair", to_json(pair)},
             {"wronskian", to_string(wronskian(pair))},
             {"delta", to_string(membership.delta)},
             {"membership", to_json(membership)}};
    emit(out, std::cout);
    return 0;
}

int run_minimize(const PairFlags& flags, const std::optional<std::string>& p,
                 bool global, const std::optional<long>& m_max_flag) {
    if (p.has_value() == global) {
        std::cerr << "minimize: pass exactly one of --p or --global\n";
        return 1;
    }
    const long m_max = resolve_m_max(m_max_flag);
    const StandardPair pair = flags.build();
    if (!is_member(pair).member) {
        std::cerr << "minimize: the pair is not a family member\n";
        return 2;
    }
    if (p) {
        const LocalMinimizationResult result =
            local_minimize(pair, parse_bigint(*p), m_max);
        emit(to_json(result), std::cout);
        return 0;
    }
    const GlobalDiscriminant gd = minimal_critical_discriminant(pair, m_max);
    json out{{"global", to_json(gd)},
             {"szpiro", to_json(szpiro_report(gd, pair.d()))}};
    emit(out, std::cout);
    return 0;
}

int run_lattes(const std::string& a, const std::string& b,
               const std::string& c, bool verify,
               const std::vector<std::string>& double_args,
               const std::optional<std::string>& reduction_p) {
    const Cubic f{parse_rat(a), parse_rat(b), parse_rat(c)};
    const StandardPair pair = build_lattes(f);
    json out{{"cubic", to_json(f)},
             {"pair", to_json(pair)},
             {"invariants", to_json(weierstrass_invariants(f))}};
    if (verify) out["identities"] = to_json(verify_discriminant_identities(f));
    if (!double_args.empty()) {
        const EllipticPoint input = EllipticPoint::affine(
            parse_rat(double_args[0]), parse_rat(double_args[1]));
        out["double"] = json{{"input", to_json(input)},
                             {"result", to_json(double_point(input, f))}};
    }
    if (reduction_p)
        out["reduction_type"] =
            to_json(reduction_type_at(f, parse_bigint(*reduction_p)));
    emit(out, std::cout);
    return 0;
}

struct ScanTask {
    std::vector<Rat> frees;  // grid point, packed into the a,b,c columns
    Cubic cubic;             // lattes family only
    bool use_cubic = false;
    StandardPair pair;
};

struct ScanRowOut {
    bool skipped = false;
    std::string line;
};

std::string csv_cells(const ScanTask& task) {
    std::ostringstream cells;
    if (task.use_cubic) {
        cells << to_string(task.cubic.a) << "," << to_string(task.cubic.b)
              << "," << to_string(task.cubic.c);
        return cells.str();
    }
    if (task.frees.size() <= 3) {
        for (std::size_t k = 0; k < 3; ++k) {
            if (k) cells << ",";
            if (k < task.frees.size()) cells << to_string(task.frees[k]);
        }
        return cells.str();
    }
    cells << "\"A=" << to_string(task.pair.A())
          << ";B=" << to_string(task.pair.B()) << "\",,";
    return cells.str();
}

ScanRowOut scan_row(const ScanTask& task, long m_max) {
    const auto start = std::chrono::steady_clock::now();
    ScanRowOut out;
    try {
        const GlobalDiscriminant gd =
            minimal_critical_discriminant(task.pair, m_max);
        const SzpiroReport sz = szpiro_report(gd, task.pair.d());
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        std::ostringstream line;
        line << csv_cells(task) << "," << to_string(sz.norm_delta) << ","
             << to_string(sz.norm_radical) << ","
             << (sz.ratio_defined ? sz.ratio : "") << ","
             << (sz.all_certified ? "true" : "false") << "," << ms;
        out.line = line.str();
    } catch (const std::domain_error&) {
        out.skipped = true;  // degenerate or non-member grid point
    }
    return out;
}

int run_scan(const std::string& family, const std::vector<long>& range,
             long d, const std::string& lambda,
             const std::vector<long>& coeff_range,
             const std::optional<std::string>& out_path, long jobs,
             const std::optional<long>& m_max_flag) {
    const long m_max = resolve_m_max(m_max_flag);

    std::vector<ScanTask> tasks;
    long degenerate_upfront = 0;
    if (family == "lattes") {
        if (range.size() != 6) {
            std::cerr << "scan: --family lattes needs --range with 6 values\n";
            return 1;
        }
        for (long a = range[0]; a <= range[1]; ++a)
            for (long b = range[2]; b <= range[3]; ++b)
                for (long c = range[4]; c <= range[5]; ++c) {
                    const Cubic f{Rat(a), Rat(b), Rat(c)};
                    if (cubic_disc(f) == 0) {
                        ++degenerate_upfront;
                        continue;
                    }
                    ScanTask task{{Rat(a), Rat(b), Rat(c)},
                                  f,
                                  true,
                                  build_lattes(f)};
                    tasks.push_back(std::move(task));
                }
    } else if (family == "f") {
        if (d < 2 || lambda.empty() || coeff_range.size() != 2) {
            std::cerr << "scan: --family f needs --d, --lambda and "
                         "--coeff-range lo hi\n";
            return 1;
        }
        const Rat lam = parse_rat(lambda);
        if (lam == 0) {
            std::cerr << "scan: lambda must be nonzero\n";
            return 1;
        }
        const long lo = coeff_range[0], hi = coeff_range[1];
        const std::size_t nfree = static_cast<std::size_t>(2 * d - 3);
        const long width = hi - lo + 1;
        if (width > 0) {
            std::vector<long> idx(nfree, 0);
            bool done = false;
            while (!done) {
                std::vector<Rat> frees(nfree);
                for (std::size_t k = 0; k < nfree; ++k)
                    frees[k] = Rat(lo + idx[k]);
                // centered member: a_{d-1} = 0 and b_{d-2} = 0 structurally
                std::vector<Rat> acoeffs(d + 1, Rat(0));
                acoeffs[d] = 1;
                for (long j = 0; j <= d - 2; ++j) acoeffs[j] = frees[j];
                std::vector<Rat> bcoeffs(d, Rat(0));
                bcoeffs[d - 1] = lam;
                for (long j = 0; j <= d - 3; ++j)
                    bcoeffs[j] = frees[(d - 1) + j];
                ScanTask task{std::move(frees),
                              Cubic{},
                              false,
                              StandardPair(d, lam,
                                           Poly::from_coeffs(acoeffs),
                                           Poly::from_coeffs(bcoeffs))};
                if (!is_member(task.pair).member)
                    ++degenerate_upfront;
                else
                    tasks.push_back(std::move(task));
                // odometer over the grid, last coordinate fastest
                done = true;
                for (std::size_t k = nfree; k-- > 0;) {
                    if (++idx[k] < width) {
                        done = false;
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
    } else {
        std::cerr << "scan: unknown family " << family << "\n";
        return 1;
    }

    std::vector<ScanRowOut> rows(tasks.size());
    const long nworkers =
        std::max(1L, std::min(jobs, static_cast<long>(tasks.size())));
    if (nworkers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            rows[i] = scan_row(tasks[i], m_max);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> failures(
            static_cast<std::size_t>(nworkers));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (long w = 0; w < nworkers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next.fetch_add(1); i < tasks.size();
                         i = next.fetch_add(1))
                        rows[i] = scan_row(tasks[i], m_max);
                } catch (...) {
                    failures[static_cast<std::size_t>(w)] =
                        std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        for (const auto& failure : failures)
            if (failure) std::rethrow_exception(failure);
    }

    long skipped = degenerate_upfront;
    std::ostringstream csv;
    csv << "a,b,c,norm_delta,norm_radical,ratio,all_certified,ms\n";
    for (const auto& row : rows) {
        if (row.skipped)
            ++skipped;
        else
            csv << row.line << "\n";
    }
    if (skipped > 0)
        csv << "# skipped " << skipped << " degenerate members\n";

    if (out_path) {
        std::ofstream file(*out_path);
        if (!file) {
            std::cerr << "scan: cannot write " << *out_path << "\n";
            return 1;
        }
        file << csv.str();
        if (!file.flush()) {
            std::cerr << "scan: cannot write " << *out_path << "\n";
            return 1;
        }
    } else {
        std::cout << csv.str();
    }

    // stderr summary: maximum observed ratio over the scanned range
    std::string best_ratio;
    std::string best_cells;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].skipped) continue;
        const std::string& line = rows[i].line;
        std::size_t pos = 0;
        for (int commas = 0; commas < 5; ++commas)
            pos = line.find(',', pos) + 1;
        const std::string ratio = line.substr(pos, line.find(',', pos) - pos);
        if (ratio.empty()) continue;
        if (best_ratio.empty() ||
            std::stod(ratio) > std::stod(best_ratio)) {
            best_ratio = ratio;
            best_cells = csv_cells(tasks[i]);
        }
    }
    if (best_ratio.empty())
        std::cerr << "scan: no defined ratios over the scanned range\n";
    else
        std::cerr << "scan: max ratio " << best_ratio << " at " << best_cells
                  << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "critdisc: exact critical discriminants of standard-form rational "
        "maps over Q"};
    app.require_subcommand(1);

    PairFlags eval_flags;
    CLI::App* eval_cmd = app.add_subcommand(
        "eval", "Wronskian, critical discriminant, family membership");
    eval_flags.attach(eval_cmd);

    PairFlags min_flags;
    std::optional<std::string> min_p;
    bool min_global = false;
    std::optional<long> min_m_max;
    CLI::App* min_cmd = app.add_subcommand(
        "minimize", "descent-minimize ord_p of the critical discriminant");
    min_flags.attach(min_cmd);
    min_cmd->add_option("--p", min_p, "prime for local minimization");
    min_cmd->add_flag("--global", min_global,
                      "minimal critical discriminant over all primes");
    min_cmd->add_option("--m-max", min_m_max,
                        "deepest descent jump (default 2, env CRITDISC_M_MAX)");

    std::string lat_a, lat_b, lat_c;
    bool lat_verify = false;
    std::vector<std::string> lat_double;
    std::optional<std::string> lat_rtype;
    CLI::App* lat_cmd = app.add_subcommand(
        "lattes", "x-coordinate doubling map of y^2 = x^3 + a x^2 + b x + c");
    lat_cmd->add_option("--a", lat_a)->required();
    lat_cmd->add_option("--b", lat_b)->required();
    lat_cmd->add_option("--c", lat_c)->required();
    lat_cmd->add_flag("--verify", lat_verify,
                      "check the discriminant identities");
    lat_cmd->add_option("--double", lat_double, "double the point (x0, y0)")
        ->expected(2);
    lat_cmd->add_option("--reduction-type", lat_rtype,
                        "classify reduction at an odd prime");

    std::string scan_family;
    std::vector<long> scan_range;
    long scan_d = 0;
    std::string scan_lambda;
    std::vector<long> scan_coeff_range;
    std::optional<std::string> scan_out;
    long scan_jobs = 1;
    std::optional<long> scan_m_max;
    CLI::App* scan_cmd =
        app.add_subcommand("scan", "Szpiro-ratio survey over a family grid");
    scan_cmd->add_option("--family", scan_family, "lattes | f")->required();
    scan_cmd->add_option("--range", scan_range,
                         "amin amax bmin bmax cmin cmax (lattes)")
        ->expected(6);
    scan_cmd->add_option("--d", scan_d, "degree for --family f");
    scan_cmd->add_option("--lambda", scan_lambda, "multiplier for --family f");
    scan_cmd->add_option("--coeff-range", scan_coeff_range,
                         "lo hi for the free coefficients (--family f)")
        ->expected(2);
    scan_cmd->add_option("--out", scan_out, "CSV path (stdout if omitted)");
    scan_cmd->add_option("--jobs", scan_jobs, "worker threads")
        ->check(CLI::Range(1L, 1024L));
    scan_cmd->add_option("--m-max", scan_m_max,
                         "deepest descent jump (default 2, env CRITDISC_M_MAX)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(eval_flags);
        if (min_cmd->parsed())
            return run_minimize(min_flags, min_p, min_global, min_m_max);
        if (lat_cmd->parsed())
            return run_lattes(lat_a, lat_b, lat_c, lat_verify, lat_double,
                              lat_rtype);
        if (scan_cmd->parsed())
            return run_scan(scan_family, scan_range, scan_d, scan_lambda,
                            scan_coeff_range, scan_out, scan_jobs,
                            scan_m_max);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const critdisc::internal_consistency_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
