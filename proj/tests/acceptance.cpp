// Acceptance run: one PASS/FAIL line per criterion, failing checks listed
// beneath. Exits 0 unless --strict is given and a criterion fails.

#include "validate.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cstdio>

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    bool strict = false, quick = false, verbose = false;
    std::vector<int> only;
    app.add_flag("--strict", strict, "nonzero exit when any criterion fails");
    app.add_flag("--quick", quick, "reduced grids");
    app.add_flag("--verbose", verbose, "list every check");
    app.add_option("--only", only, "criteria to run")->check(CLI::Range(1, dofpp::validate::kCriteria));
    CLI11_PARSE(app, argc, argv);

    dofpp::validate::Options opt;
    opt.quick = quick;
    int failed = 0;
    auto t0 = std::chrono::steady_clock::now();
    int ran = 0;
    auto report = [&](int c, const std::vector<dofpp::validate::Check>& checks) {
        int bad = 0;
        for (const auto& ch : checks) bad += !ch.passed;
        failed += bad > 0;
        ++ran;
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        fmt::print("criterion {:2d} {:<24} {}  ({} of {} checks failed, {:.1f} s)\n", c,
                   dofpp::validate::criterion_title(c), bad ? "FAIL" : "PASS", bad, checks.size(), secs);
        for (const auto& ch : checks)
            if (verbose || !ch.passed)
                fmt::print("    {} {}: {:.3e} (limit {:.1e}){}{}\n", ch.passed ? "ok  " : "FAIL", ch.name, ch.measured,
                           ch.limit, ch.note.empty() ? "" : "  ", ch.note);
        std::fflush(stdout);
    };
    if (only.empty())
        dofpp::validate::run_all(opt, report);
    else
        for (int c : only) report(c, dofpp::validate::run_criterion(c, opt));
    fmt::print("{} of {} criteria passed\n", ran - failed, ran);
    return strict && failed ? 1 : 0;
}
