#include "table.hpp"

#include "dofpp/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace dofpp::cli {

void Table::add(std::vector<Cell> row)
{
    require(row.size() == columns.size(), "table row width does not match header");
    rows.push_back(std::move(row));
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

namespace {

std::string cell_text(const Cell& c)
{
    struct {
        std::string operator()(double v) const { return fmt::format("{:.17g}", v); }
        std::string operator()(long v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return csv_field(v); }
    } visit;
    return std::visit(visit, c);
}

} // namespace

void write_csv(std::ostream& out, const Table& t)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_field(t.columns[i]);
    out << "\r\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << "\r\n";
    }
}

void write_json(std::ostream& out, const Table& t)
{
    out << "[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            std::visit([&](const auto& v) { obj[t.columns[i]] = v; }, t.rows[r][i]);
        out << (r ? ",\n " : "\n ") << obj.dump();
    }
    out << (t.rows.empty() ? "]\n" : "\n]\n");
}

void write(std::ostream& out, const Table& t, OutputFormat f)
{
    if (f == OutputFormat::json)
        write_json(out, t);
    else
        write_csv(out, t);
}

} // namespace dofpp::cli
