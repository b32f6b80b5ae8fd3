#include "dofpp/config.hpp"

#include "dofpp/error.hpp"

#include <fstream>
#include <sstream>

namespace dofpp {

namespace {

Tuning g_tuning;

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    std::size_t pos = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    require(pos == v.size() && !v.empty(), "config: " + key + " expects a number, got '" + v + "'");
    return d;
}

int to_int(const std::string& key, const std::string& v)
{
    double d = to_double(key, v);
    require(d == static_cast<int>(d), "config: " + key + " expects an integer");
    return static_cast<int>(d);
}

} // namespace

void Tuning::validate() const
{
    series.validate();
    require(talbot_nodes >= 8 && talbot_max_nodes >= talbot_nodes, "config: talbot node counts invalid");
    require(q_series_max_arg >= 0.0, "config: route.q_series_max_arg must be >= 0");
    require(small_t_probe > 0.0 && large_t_probe > small_t_probe, "config: probe points invalid");
    require(ratio_tol > 0.0, "config: probe.ratio_tol must be > 0");
    require(l1_grid >= 16, "config: grid.l1_points must be >= 16");
}

const Tuning& tuning()
{
    return g_tuning;
}

void set_tuning(const Tuning& t)
{
    t.validate();
    g_tuning = t;
}

std::map<std::string, std::string> read_key_values(const std::string& path)
{
    std::ifstream in(path);
    require(static_cast<bool>(in), "config: cannot open " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        require(eq != std::string::npos, "config: line " + std::to_string(lineno) + " has no '='");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

void apply_setting(Tuning& t, const std::string& key, const std::string& v)
{
    if (key == "series.abs_tol") t.series.abs_tol = to_double(key, v);
    else if (key == "series.rel_tol") t.series.rel_tol = to_double(key, v);
    else if (key == "series.max_terms") t.series.max_terms = to_int(key, v);
    else if (key == "series.summation") {
        require(v == "plain" || v == "compensated", "config: series.summation is plain or compensated");
        t.series.summation_mode = v == "plain" ? SummationMode::plain : SummationMode::compensated;
    }
    else if (key == "inversion.nodes") t.talbot_nodes = to_int(key, v);
    else if (key == "inversion.max_nodes") t.talbot_max_nodes = to_int(key, v);
    else if (key == "route.q_series_max_arg") t.q_series_max_arg = to_double(key, v);
    else if (key == "probe.small_t") t.small_t_probe = to_double(key, v);
    else if (key == "probe.large_t") t.large_t_probe = to_double(key, v);
    else if (key == "probe.ratio_tol") t.ratio_tol = to_double(key, v);
    else if (key == "grid.l1_points") t.l1_grid = to_int(key, v);
    else if (key == "output.format") {
        require(v == "csv" || v == "json", "config: output.format is csv or json");
        t.format = v == "csv" ? OutputFormat::csv : OutputFormat::json;
    }
    else throw InvalidArgument("config: unknown key '" + key + "'");
}

Tuning load_tuning(const std::string& path, Tuning base)
{
    for (const auto& [k, v] : read_key_values(path)) apply_setting(base, k, v);
    base.validate();
    return base;
}

} // namespace dofpp
