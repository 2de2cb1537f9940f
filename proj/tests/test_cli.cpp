#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "critdisc/jsonio.hpp"

using namespace critdisc;
using nlohmann::json;

namespace {

struct CliResult {
    int status = -1;
    std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
    const char* cli = std::getenv("CRITDISC_CLI_PATH");
#ifdef CRITDISC_CLI_PATH
    if (!cli) cli = CRITDISC_CLI_PATH;
#endif
    REQUIRE(cli != nullptr);
    const std::string cmd = env + std::string(cli) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
    const int raw = pclose(pipe);
    REQUIRE(WIFEXITED(raw));
    res.status = WEXITSTATUS(raw);
    return res;
}

const std::string kLattesPair =
    "--d 4 --lambda 4 --A \"x^4-2x^2+1\" --B \"4x^3+4x\"";

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

// scan output with the timing column removed, for determinism comparisons
std::string strip_ms(const std::string& text) {
    std::string result;
    for (const std::string& line : split_lines(text)) {
        if (!line.empty() && line[0] == '#') {
            result += line;
        } else {
            const size_t pos = line.rfind(',');
            result += (pos == std::string::npos) ? line : line.substr(0, pos);
        }
        result += '\n';
    }
    return result;
}

}  // namespace

TEST_CASE("cli eval reports the discriminant") {
    const CliResult res =
        run_cli("eval --d 2 --lambda 1 --A \"x^2+1\" --B \"x\"");
    REQUIRE(res.status == 0);
    const json doc = json::parse(res.out);
    CHECK(doc.at("delta").get<std::string>() == "4");
    CHECK(doc.at("membership").at("member").get<bool>());
    CHECK(doc.at("wronskian").get<std::string>() == "x^2-1");

    const StandardPair round_trip = standard_pair_from_json(doc.at("pair"));
    CHECK(round_trip ==
          StandardPair(2, Rat(1), parse_poly("x^2+1"), parse_poly("x")));
}

TEST_CASE("cli eval rejects bad input") {
    CHECK(run_cli("eval --d 2 --lambda 1 --A \"x^^2\" --B \"x\"").status == 1);
    CHECK(run_cli("eval --d 2 --lambda 1 --A \"2x^2+1\" --B \"x\"").status ==
          1);
    CHECK(run_cli("eval --d 2 --lambda 1 --A \"x^2+1\"").status == 1);
    CHECK(run_cli("eval --d 0 --lambda 1 --A \"1\" --B \"1\"").status == 1);
}

TEST_CASE("cli minimize at a prime") {
    const CliResult res = run_cli("minimize --p 5 " + kLattesPair);
    REQUIRE(res.status == 0);
    const json doc = json::parse(res.out);
    CHECK(doc.at("p").get<std::string>() == "5");
    CHECK(doc.at("delta").get<long>() == 0);
    CHECK(doc.at("certified").get<bool>());
    CHECK(doc.at("witness").at("alpha").get<std::string>() == "1");

    const CliResult dyadic = run_cli("minimize --p 2 " + kLattesPair);
    REQUIRE(dyadic.status == 0);
    const json doc2 = json::parse(dyadic.out);
    CHECK(doc2.at("delta").get<long>() == 48);
    CHECK_FALSE(doc2.at("certified").get<bool>());
}

TEST_CASE("cli minimize exit codes") {
    // exactly one of --p / --global
    CHECK(run_cli("minimize " + kLattesPair).status == 1);
    CHECK(run_cli("minimize --p 5 --global " + kLattesPair).status == 1);
    // non-member pair: A and B share a root
    CHECK(run_cli("minimize --p 5 --d 2 --lambda 1 --A \"x^2-1\" --B \"x-1\"")
              .status == 2);
    // prime dividing the denominator of lambda
    CHECK(run_cli("minimize --p 2 --d 2 --lambda 1/2 --A \"x^2+2\" "
                  "--B \"1/2x\"")
              .status == 1);
    CHECK(run_cli("minimize --p 4 " + kLattesPair).status == 1);
}

TEST_CASE("cli m-max flag overrides the environment") {
    // the lattes pair for x^3+x conjugated by alpha = 3
    const std::string scaled =
        "--d 4 --lambda 4 --A \"x^4-18x^2+81\" --B \"4x^3+36x\"";
    const CliResult blocked =
        run_cli("minimize --p 3 " + scaled, "CRITDISC_M_MAX=0 ");
    REQUIRE(blocked.status == 0);
    const json doc = json::parse(blocked.out);
    CHECK(doc.at("delta").get<long>() == 30);
    CHECK_FALSE(doc.at("certified").get<bool>());

    const CliResult overridden =
        run_cli("minimize --p 3 --m-max 2 " + scaled, "CRITDISC_M_MAX=0 ");
    REQUIRE(overridden.status == 0);
    const json doc2 = json::parse(overridden.out);
    CHECK(doc2.at("delta").get<long>() == 0);
    CHECK(doc2.at("certified").get<bool>());
}

TEST_CASE("cli global minimization and szpiro report") {
    const CliResult res = run_cli("minimize --global " + kLattesPair);
    REQUIRE(res.status == 0);
    const json doc = json::parse(res.out);
    const json& entries = doc.at("global").at("entries");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].at("p").get<std::string>() == "2");
    CHECK(entries[0].at("delta").get<long>() == 48);
    CHECK_FALSE(entries[0].at("certified").get<bool>());
    CHECK(doc.at("global").at("excluded_primes").empty());
    CHECK(doc.at("szpiro").at("ratio").get<std::string>() == "48.000000");
    CHECK_FALSE(doc.at("szpiro").at("all_certified").get<bool>());
}

TEST_CASE("cli lattes subcommand") {
    const CliResult res =
        run_cli("lattes --a 0 --b=-1 --c 1 --verify "
                "--double 0 1 --reduction-type 23");
    REQUIRE(res.status == 0);
    const json doc = json::parse(res.out);
    CHECK(doc.at("invariants").at("delta_e").get<std::string>() == "-368");
    CHECK(doc.at("invariants").at("j").get<std::string>() == "-6912/23");
    CHECK(doc.at("identities").at("disc_identity_ok").get<bool>());
    CHECK(doc.at("identities").at("weier_identity_ok").get<bool>());
    CHECK(doc.at("double").at("result").at("x").get<std::string>() == "1/4");
    CHECK(doc.at("double").at("result").at("y").get<std::string>() == "-7/8");
    CHECK(doc.at("reduction_type").at("type").get<std::string>() ==
          "multiplicative-minimal");

    CHECK(run_cli("lattes --a 0 --b 0 --c 0").status == 1);
    CHECK(run_cli("lattes --a 0 --b=-1 --c 1 --reduction-type 2").status == 1);
}

TEST_CASE("cli scan is deterministic across job counts") {
    const std::string args = "scan --family lattes --range -2 2 -2 2 -2 2";
    const CliResult serial = run_cli(args + " --jobs 1");
    const CliResult parallel = run_cli(args + " --jobs 4");
    REQUIRE(serial.status == 0);
    REQUIRE(parallel.status == 0);
    CHECK(strip_ms(serial.out) == strip_ms(parallel.out));

    const std::vector<std::string> lines = split_lines(serial.out);
    REQUIRE(!lines.empty());
    CHECK(lines.front() ==
          "a,b,c,norm_delta,norm_radical,ratio,all_certified,ms");
    long data = 0, comments = 0;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (!lines[i].empty() && lines[i][0] == '#')
            ++comments;
        else
            ++data;
    }
    CHECK(data == 116);  // 5^3 grid points minus 9 degenerate cubics
    CHECK(comments == 1);
    CHECK(lines.back() == "# skipped 9 degenerate members");
}

TEST_CASE("cli scan handles empty ranges and output files") {
    const CliResult empty =
        run_cli("scan --family lattes --range 1 0 0 0 0 0 --jobs 2");
    REQUIRE(empty.status == 0);
    const std::vector<std::string> lines = split_lines(empty.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines.front() ==
          "a,b,c,norm_delta,norm_radical,ratio,all_certified,ms");

    CHECK(run_cli("scan --family lattes --range 0 1 0 0 0 0 "
                  "--out /nonexistent-dir/scan.csv")
              .status == 1);

    const std::string path = "/tmp/critdisc_cli_scan_test.csv";
    std::remove(path.c_str());
    const CliResult to_file = run_cli(
        "scan --family lattes --range -1 1 -1 1 0 0 --jobs 1 --out " + path);
    REQUIRE(to_file.status == 0);
    CHECK(to_file.out.empty());
    FILE* f = std::fopen(path.c_str(), "r");
    REQUIRE(f != nullptr);
    std::string contents;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), f)) > 0) contents.append(buf, n);
    std::fclose(f);
    std::remove(path.c_str());
    const CliResult to_stdout =
        run_cli("scan --family lattes --range -1 1 -1 1 0 0 --jobs 1");
    CHECK(strip_ms(contents) == strip_ms(to_stdout.out));
}

TEST_CASE("cli scan over the generic family") {
    const CliResult res =
        run_cli("scan --family f --d 2 --lambda 1 --coeff-range -1 1 "
                "--jobs 2");
    REQUIRE(res.status == 0);
    const std::vector<std::string> lines = split_lines(res.out);
    REQUIRE(!lines.empty());
    CHECK(lines.front() ==
          "a,b,c,norm_delta,norm_radical,ratio,all_certified,ms");
    const CliResult serial =
        run_cli("scan --family f --d 2 --lambda 1 --coeff-range -1 1 "
                "--jobs 1");
    CHECK(strip_ms(res.out) == strip_ms(serial.out));
}
