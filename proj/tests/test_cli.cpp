// End-to-end checks of the command-line tool via subprocesses.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <string>

#include "kcnf/formula.hpp"

#ifndef KCNF_CLI_PATH
#error "KCNF_CLI_PATH must be defined"
#endif

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run(const std::string& args) {
    std::string cmd = std::string(KCNF_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    CmdResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

// timing fields change between runs; strip them before comparing reports
std::string strip_timing(const std::string& s) {
    return std::regex_replace(s, std::regex("\"wall_ms\": [0-9.e+-]+"), "\"wall_ms\": X");
}

}  // namespace

TEST_CASE("generate writes DIMACS with m = floor(alpha*n)") {
    CmdResult r = run("generate -k 3 -n 20 --alpha 2.0 --seed 7 -o /tmp/kcnf_cli_f.cnf");
    CHECK(r.exit_code == 0);
    std::ifstream in("/tmp/kcnf_cli_f.cnf");
    kcnf::Formula f = kcnf::parse_dimacs(in);
    CHECK(f.num_vars() == 20);
    CHECK(f.num_clauses() == 40);
    CHECK(f.width() == 3);
}

TEST_CASE("sample emits a verified solution line plus a JSON report") {
    run("generate -k 3 -n 12 --alpha 1.2 --seed 3 -o /tmp/kcnf_cli_g.cnf");
    CmdResult r = run("sample -i /tmp/kcnf_cli_g.cnf --eps 0.05 --seed 1 --policy fallback --certify-delta");
    CHECK(r.exit_code == 0);
    REQUIRE(r.out.rfind("v ", 0) == 0);

    // the v-line must satisfy the formula
    std::ifstream in("/tmp/kcnf_cli_g.cnf");
    kcnf::Formula f = kcnf::parse_dimacs(in);
    std::istringstream line(r.out.substr(2, r.out.find('\n') - 2));
    kcnf::PartialAssignment sigma(f.num_vars());
    long long lit;
    while (line >> lit) {
        if (lit == 0) break;
        kcnf::Var v = static_cast<kcnf::Var>(lit < 0 ? -lit : lit);
        sigma[v] = lit > 0 ? kcnf::VarState::One : kcnf::VarState::Zero;
    }
    CHECK(kcnf::satisfies_all(f, sigma));
    CHECK(r.out.find("\"outcome\": \"sample\"") != std::string::npos);
}

TEST_CASE("identical argv give byte-identical reports modulo timing") {
    run("generate -k 3 -n 10 --alpha 1.0 --seed 5 -o /tmp/kcnf_cli_h.cnf");
    std::string args = "sample -i /tmp/kcnf_cli_h.cnf --seed 42 --delta 1/2 --eta 1/12 --s inf";
    CmdResult a = run(args);
    CmdResult b = run(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(strip_timing(a.out) == strip_timing(b.out));
}

TEST_CASE("sample --mode rejection works and verify reports statistics") {
    CmdResult r = run("sample -k 3 -n 8 --m 6 --gen-seed 2 --seed 9 --mode rejection");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"path\": \"rejection\"") != std::string::npos);

    CmdResult v = run("verify -k 3 -n 8 --m 6 --gen-seed 2 --seed 2 --runs 4000 --mode full "
                      "--certify-delta --jobs 2 --eta 1/12 --s inf");
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("tv_estimate") != std::string::npos);
    CHECK(v.out.find("chi_square") != std::string::npos);
    CHECK(v.out.find("halt_rate") != std::string::npos);
}

TEST_CASE("count reports an estimate with bounds") {
    CmdResult r = run("count -k 3 -n 10 --m 8 --gen-seed 4 --seed 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("estimate") != std::string::npos);
    CHECK(r.out.find("all_exact") != std::string::npos);
}

TEST_CASE("check runs a property and prints separator sizes") {
    CmdResult r = run("check -k 3 -n 14 --m 20 --gen-seed 6 --seed 1 --property p3.2 --mode exhaustive "
                      "--eta 1/12 --degree-threshold 100");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("v_sep_size") != std::string::npos);
    CHECK(r.out.find("\"property\": \"p3.2\"") != std::string::npos);
}

TEST_CASE("bench csv has one row per run") {
    CmdResult r = run("bench -k 3 -n 10 --m 8 --gen-seed 3 --seed 2 --runs 5 --format csv "
                      "--eta 1/12 --delta 1/2 --s inf --jobs 2");
    CHECK(r.exit_code == 0);
    std::size_t lines = std::count(r.out.begin(), r.out.end(), '\n');
    CHECK(lines == 6);  // header + 5 rows
}

TEST_CASE("usage errors exit 1, report_halt exits 2, budget exhaustion exits 3") {
    CmdResult bad = run("sample");
    CHECK(bad.exit_code == 1);

    // unsatisfiable instance, s=0, report_halt: the run halts before rejection
    std::ofstream out("/tmp/kcnf_cli_unsat.cnf");
    out << "p cnf 2 3\n1 1 1 0\n-1 -1 -1 0\n2 2 2 0\n";
    out.close();
    CmdResult halt = run("sample -i /tmp/kcnf_cli_unsat.cnf --seed 1 --policy report_halt "
                         "--mode recursive --delta 1/2 --eta 1/12 --s 0");
    CHECK(halt.exit_code == 2);

    CmdResult budget = run("sample -i /tmp/kcnf_cli_unsat.cnf --seed 1 --mode rejection --budget 100");
    CHECK(budget.exit_code == 3);
}
