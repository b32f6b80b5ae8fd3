#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dofpp::validate {

struct Check {
    int criterion = 0;
    std::string group;
    std::string name;
    double measured = 0.0;  // error measure; passes when measured <= limit
    double limit = 0.0;
    bool passed = false;
    std::string note;
};

struct Options {
    bool quick = false;
    // Group whose measured errors are inflated, to exercise the failure path.
    std::string fault;
};

constexpr int kCriteria = 12;

const char* criterion_title(int c);
const char* criterion_group(int c);

std::vector<Check> run_criterion(int c, const Options& opt);

// Runs criteria 1..12 in order, calling done after each one.
std::vector<Check> run_all(const Options& opt,
                           const std::function<void(int, const std::vector<Check>&)>& done = {});

} // namespace dofpp::validate
