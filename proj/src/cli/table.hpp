#pragma once

// Tabular command output rendered as CSV or JSON.
//
// CSV: each table is a header line plus rows; tables are separated by one
// blank line. Missing values print as NA, reals with 10 significant digits.
// JSON: {"command": name, "<table>": [ {column: value, ...}, ... ], ...} with
// missing values as null.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ecgroups/rational.hpp"

namespace ecg::cli {

struct Missing {};

using Cell = std::variant<Missing, std::int64_t, double, bool, std::string>;

inline Cell exact(const Rational& r) { return r.str(); }

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

struct Document {
    std::string command;
    std::vector<Table> tables;
};

enum class Format { csv, json };

/// printf("%.10g").
std::string format_real(double value);

std::string render(const Document& doc, Format format);

}  // namespace ecg::cli
