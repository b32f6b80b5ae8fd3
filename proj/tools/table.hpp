#pragma once

#include "dofpp/config.hpp"

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace dofpp::cli {

using Cell = std::variant<double, long, bool, std::string>;

// Column-ordered rows; every row has one cell per column.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}
    void add(std::vector<Cell> row);
};

// CSV: header row, RFC 4180 quoting, doubles with 17 significant digits.
void write_csv(std::ostream& out, const Table& t);
// JSON: an array with one object per row, keys in column order.
void write_json(std::ostream& out, const Table& t);
void write(std::ostream& out, const Table& t, OutputFormat f);

std::string csv_field(const std::string& s);

} // namespace dofpp::cli
