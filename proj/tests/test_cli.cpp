// Runs the dofpp binary and checks its tables and exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dofpp/poisson.hpp"
#include "dofpp/diffusion.hpp"
#include "dofpp/specfun.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#ifndef DOFPP_CLI
#error "DOFPP_CLI must name the dofpp binary"
#endif

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// stdout only unless merge_stderr.
Run run(const std::string& args, bool merge_stderr = false)
{
    std::string cmd = std::string(DOFPP_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("pmf table sums to one")
{
    Run r = run("pmf --nu1 0.4 --nu2 0.8 --n1 0.5 --lambda 1 --t 1 --k-max 10");
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0] == std::vector<std::string>{"t", "k", "pmf", "route"});
    double total = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) total += std::stod(rows[i][2]);
    // mpmath: Pr{N(1) > 10} = 1.26e-5, so eleven rows fall just short of 1 - 1e-5.
    CHECK(std::fabs(total - 0.999987364365) <= 1e-10);

    Run wide = run("pmf --nu1 0.4 --nu2 0.8 --n1 0.5 --lambda 1 --t 1 --k-max 12");
    REQUIRE(wide.code == 0);
    total = 0.0;
    auto wrows = csv_rows(wide.out);
    for (std::size_t i = 1; i < wrows.size(); ++i) total += std::stod(wrows[i][2]);
    CHECK(total >= 0.99999);
}

TEST_CASE("pmf with n1 = 0 matches the single-order closed form")
{
    Run r = run("pmf --nu1 0.3 --nu2 0.7 --n1 0 --lambda 2 --t 1.5 --k-max 6");
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    const double x = 2.0 * std::pow(1.5, 0.7);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        int k = std::stoi(rows[i][1]);
        double want = std::pow(x, k) * dofpp::gml({0.7, 0.7 * k + 1.0, k + 1.0, -x});
        CHECK(std::fabs(std::stod(rows[i][2]) - want) <= 1e-10);
    }
}

TEST_CASE("reversed orders exit 2 with the invariant named")
{
    Run r = run("pmf --nu1 0.8 --nu2 0.4 --n1 0.5 --t 1", true);
    CHECK(r.code == 2);
    CHECK(r.out.find("requires nu1 < nu2") != std::string::npos);
}

TEST_CASE("argument errors exit 2")
{
    CHECK(run("pmf --nu1 abc").code == 2);
    CHECK(run("pmf --t 0").code == 2);
    CHECK(run("pmf --t-grid 1:0:3").code == 2);
    CHECK(run("pmf --t 1 --t-grid 1:2:3").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("pmf --config /nonexistent/file.conf").code == 2);
    CHECK(run("diffusion --lambda 2").code == 2);
    CHECK(run("pgf --u 1.5").code == 2);
    CHECK(run("pmf --help").code == 0);
}

TEST_CASE("numerical failures exit 3")
{
    // The k = 0 series cancels catastrophically for a large n1 at t = 10.
    Run r = run("pmf --route series --k-max 0 --nu1 0.3 --nu2 0.7 --n1 0.8 --t 10", true);
    CHECK(r.code == 3);
    CHECK(r.out.find("cancellation") != std::string::npos);
}

TEST_CASE("json output")
{
    Run r = run("pgf --t 1,2 --u 0,0.5,1 --format json");
    REQUIRE(r.code == 0);
    auto rows = nlohmann::ordered_json::parse(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].begin().key() == "t");
    for (const auto& row : rows)
        if (row["u"] == 1.0) CHECK(row["pgf"] == 1.0);
}

TEST_CASE("renewal table")
{
    Run r = run("renewal --t-grid 0.001:10000:15:log");
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 16);
    CHECK(rows[0] == std::vector<std::string>{"t", "f1", "survival", "renewal", "small_t_ratio", "large_t_ratio"});
    double prev = 1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double s = std::stod(rows[i][2]);
        CHECK(s <= prev);
        prev = s;
    }
    CHECK(std::fabs(std::stod(rows.back()[5]) - 1.0) <= 0.05);
}

TEST_CASE("diffusion table")
{
    Run r = run("diffusion --nu1 0.6 --nu2 0.9 --n1 0.5 --t 0.5,2 --x-grid -3:3:7 --format json");
    REQUIRE(r.code == 0);
    auto rows = nlohmann::json::parse(r.out);
    REQUIRE(rows.size() == 14);
    const auto p = dofpp::DistributedOrder::make(0.6, 0.9, 0.5);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i]["regime"] == "acceleration");
        double t = rows[i]["t"];
        CHECK(std::fabs(rows[i]["moment2"].get<double>() - dofpp::second_moment_closed_form(p, t)) <=
              1e-10 * dofpp::second_moment_closed_form(p, t));
        // x grid is symmetric: row j mirrors row 6 - j within each t.
        std::size_t base = i / 7 * 7, j = i % 7;
        CHECK(rows[i]["density"] == rows[base + 6 - j]["density"]);
    }
}

TEST_CASE("simulation is reproducible and agrees with the analytic moments")
{
    const std::string args = "simulate --samples 20000 --seed 11 --t 1";
    Run a = run(args), b = run(args + " --threads 1");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    for (const char* process : {"poisson", "time", "diffusion"}) {
        Run r = run(std::string(args) + " --process " + process);
        REQUIRE(r.code == 0);
        auto rows = csv_rows(r.out);
        REQUIRE(rows.size() == 3);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            double emp = std::stod(rows[i][3]), se = std::stod(rows[i][4]), ana = std::stod(rows[i][5]);
            CHECK(std::fabs(emp - ana) <= 3.0 * se + 1e-12);
        }
    }
    CHECK(run("simulate --samples 0").code == 2);
}

TEST_CASE("config file and flag precedence")
{
    const std::string path = "cli_test.conf";
    FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("output.format = json\nseries.rel_tol = 1e-11\n", f);
    std::fclose(f);
    Run j = run("pmf --k-max 1 --config " + path);
    REQUIRE(j.code == 0);
    CHECK(j.out.front() == '[');
    Run c = run("pmf --k-max 1 --format csv --config " + path);
    REQUIRE(c.code == 0);
    CHECK(c.out.rfind("t,k,pmf,route", 0) == 0);

    f = std::fopen(path.c_str(), "w");
    std::fputs("no.such.key = 1\n", f);
    std::fclose(f);
    CHECK(run("pmf --config " + path).code == 2);
    std::remove(path.c_str());
}

TEST_CASE("validate --quick reports every check and finishes in time")
{
    auto t0 = std::chrono::steady_clock::now();
    Run r = run("validate --quick");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 60.0);
    auto rows = nlohmann::json::parse(r.out);
    REQUIRE(rows.size() > 0);
    int failed = 0;
    for (const auto& row : rows) failed += !row["passed"].get<bool>();
    CHECK(r.code == (failed ? 1 : 0));
}

TEST_CASE("an injected fault fails the named check")
{
    Run r = run("validate --quick --inject-fault normalization");
    CHECK(r.code == 1);
    auto rows = nlohmann::json::parse(r.out);
    bool named = false;
    for (const auto& row : rows)
        if (row["group"] == "normalization") {
            CHECK_FALSE(row["passed"].get<bool>());
            named = named || !row["check"].get<std::string>().empty();
        }
    CHECK(named);
}
