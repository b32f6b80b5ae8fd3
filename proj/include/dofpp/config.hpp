#pragma once

#include "dofpp/series.hpp"

#include <map>
#include <string>

namespace dofpp {

enum class OutputFormat { csv, json };

// Tunable numerical settings shared by the library and the CLI.
struct Tuning {
    SeriesControl series;
    int talbot_nodes = 32;
    int talbot_max_nodes = 768;
    // q_series is tried first when y / (lambda t^nu2) is at most this.
    double q_series_max_arg = 1.5;
    double small_t_probe = 1e-3;
    double large_t_probe = 1e4;
    double ratio_tol = 0.05;
    int l1_grid = 2048;
    OutputFormat format = OutputFormat::csv;

    void validate() const;
};

// Process-wide settings. Set once at start-up, before worker threads run.
const Tuning& tuning();
void set_tuning(const Tuning& t);

// Flat "key = value" file; '#' starts a comment. Unknown keys are an error.
std::map<std::string, std::string> read_key_values(const std::string& path);
Tuning load_tuning(const std::string& path, Tuning base = {});
void apply_setting(Tuning& t, const std::string& key, const std::string& value);

} // namespace dofpp
