#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "recur2code/catalog.hpp"

using namespace recur2code;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args) {
    const std::string out_path = "cli_test_stdout.tmp";
    const std::string err_path = "cli_test_stderr.tmp";
    const std::string cmd = std::string(RECUR2CODE_CLI_PATH) + " " + args + " > " + out_path +
                            " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    res.out = buf.str();
    std::ifstream ein(err_path);
    std::stringstream ebuf;
    ebuf << ein.rdbuf();
    res.err = ebuf.str();
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return res;
}

}  // namespace

TEST_CASE("analyze: readable report and exit 0") {
    const auto res = run_cli("analyze --q 9 --a r^4 --b r^8");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("N = 8, e = 4, K = 2") != std::string::npos);
    CHECK(res.out.find("weights: 6:32 8:48") != std::string::npos);
    CHECK(res.out.find("case: distinct") != std::string::npos);
}

TEST_CASE("analyze: zero b is a usage error (exit 1)") {
    const auto res = run_cli("analyze --q 9 --a r^2 --b 0");
    CHECK(res.exit_code == 1);
    CHECK(res.err.find("b must be nonzero") != std::string::npos);
}

TEST_CASE("analyze --json emits one importable record") {
    const auto res = run_cli("analyze --q 9 --a r^2 --b r^3 --json");
    CHECK(res.exit_code == 0);
    std::istringstream in(res.out);
    const auto records = import_jsonl(in);
    REQUIRE(records.size() == 1);
    CHECK(records[0].N == 80);
    CHECK(records[0].e == 10);
    CHECK(records[0].one_weight);
}

TEST_CASE("analyze accepts coefficient-vector input and --p/--k") {
    const auto res = run_cli("analyze --p 3 --k 2 --a '[0,2]' --b '[1,0]' --json");
    CHECK(res.exit_code == 0);
    std::istringstream in(res.out);
    const auto records = import_jsonl(in);
    REQUIRE(records.size() == 1);
    CHECK(records[0].a_log == 5);  // 2x = r^5
    CHECK(records[0].b_log == 0);
}

TEST_CASE("table subcommand") {
    const auto t1 = run_cli("table 1");
    CHECK(t1.exit_code == 0);
    CHECK(t1.out.find("10/10 rows match") != std::string::npos);
    const auto t2 = run_cli("table 2");
    CHECK(t2.exit_code == 0);
    CHECK(t2.out.find("10/10 rows match") != std::string::npos);
    // row (q=121, a=r^19, b=r^24) carries a misprint in the source: its N is
    // unreachable for that pair under any primitive root (see README)
    const auto t3 = run_cli("table 3");
    CHECK(t3.exit_code == 2);
    CHECK(t3.out.find("9/10 rows match") != std::string::npos);
    CHECK(t3.out.find("computed 1220") != std::string::npos);
    const auto t4 = run_cli("table 4");
    CHECK(t4.exit_code == 1);
}

TEST_CASE("scan writes records and a summary") {
    const auto res = run_cli("scan --q 5");
    CHECK(res.exit_code == 0);
    std::istringstream in(res.out);
    CHECK(import_jsonl(in).size() == 20);

    const auto csv = run_cli("scan --q 9 --filter mds --format csv --out cli_scan_test.csv");
    CHECK(csv.exit_code == 0);
    std::ifstream file("cli_scan_test.csv");
    REQUIRE(file.good());
    const auto records = import_csv(file);
    for (const auto& r : records) {
        CHECK(r.mds);
        CHECK(r.K == 1);
    }
    CHECK(!records.empty());
    std::remove("cli_scan_test.csv");

    const auto bad = run_cli("scan --q 12");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("selftest subcommand") {
    const auto ok = run_cli("selftest --max-q 5");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("selftest passed") != std::string::npos);
    CHECK(ok.out.find("weights-vs-enumeration") != std::string::npos);

    const auto usage = run_cli("selftest --max-q 1");
    CHECK(usage.exit_code == 1);
}

TEST_CASE("unknown flags and missing subcommands exit 1") {
    CHECK(run_cli("analyze --q 9 --a r^2").exit_code == 1);  // missing --b
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);
}

TEST_CASE("RECUR2CODE_MAX_Q lowers the field size cap") {
    const auto res = run_cli("analyze --q 121 --a r^19 --b r^74 --json");
    CHECK(res.exit_code == 0);

    const std::string out_path = "cli_env_test.tmp";
    const std::string cmd = std::string("RECUR2CODE_MAX_Q=100 ") + RECUR2CODE_CLI_PATH +
                            " analyze --q 121 --a r^19 --b r^74 2> " + out_path;
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 1);
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find("cap") != std::string::npos);
    std::remove(out_path.c_str());
}

TEST_CASE("--budget trims enumeration and flags it") {
    const auto res = run_cli("analyze --q 9 --a r^2 --b r^3 --budget 100 --json");
    CHECK(res.exit_code == 0);
    std::istringstream in(res.out);
    const auto records = import_jsonl(in);
    REQUIRE(records.size() == 1);
    const auto& flags = records[0].flags;
    CHECK(std::find(flags.begin(), flags.end(), kFlagBruteforceSkipped) != flags.end());
    CHECK(records[0].N == 80);
}
