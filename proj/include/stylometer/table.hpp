#pragma once

// Locale-independent TSV emission for the report files.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stylometer {

struct NotAvailable {
  friend bool operator==(NotAvailable, NotAvailable) = default;
};

// Real values are rendered with 4 significant digits. ExactReal is written in
// shortest round-trip form, for statistics that must not be rounded.
struct ExactReal {
  double value = 0.0;
  friend bool operator==(ExactReal, ExactReal) = default;
};

using Cell = std::variant<NotAvailable, std::string, std::int64_t, double, ExactReal>;
using Row = std::vector<Cell>;

struct TableSchema {
  std::vector<std::string> columns;
};

Cell real_or_na(const std::optional<double>& v);

// 4 significant digits, fixed notation, trailing fractional zeros dropped:
// 0.527, 19.8, 755, 12480. Non-finite values render as "NA".
std::string format_real(double v);

std::string format_cell(const Cell& cell);

// Header line from the schema, then one line per row; every line ends in
// '\n'. Throws InvalidArgument when a row's width differs from the schema.
std::string emit_table(const std::vector<Row>& rows, const TableSchema& schema);

// Column-aligned rendering of TSV text for terminals.
std::string pretty_table(std::string_view tsv);

}  // namespace stylometer
