#include "stylometer/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "num_format.hpp"
#include "stylometer/error.hpp"

namespace stylometer {

Cell real_or_na(const std::optional<double>& v) {
  if (v) return *v;
  return NotAvailable{};
}

std::string format_real(double v) {
  if (!std::isfinite(v)) return "NA";
  if (v == 0.0) return "0";
  char buf[64];
  // d.ddde[+-]XX, rounded once to 4 significant digits.
  auto sci = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 3);
  std::string_view s(buf, static_cast<std::size_t>(sci.ptr - buf));
  const bool negative = s.front() == '-';
  if (negative) s.remove_prefix(1);
  const std::size_t e_pos = s.find('e');
  const int exponent = std::atoi(std::string(s.substr(e_pos + 1)).c_str());
  std::string out = negative ? "-" : "";
  if (exponent >= 3) {
    out += s[0];
    out += s.substr(2, 3);
    out.append(static_cast<std::size_t>(exponent - 3), '0');
    return out;
  }
  auto fixed = std::to_chars(buf, buf + sizeof buf, std::abs(v), std::chars_format::fixed,
                             3 - exponent);
  std::string digits(buf, fixed.ptr);
  if (digits.find('.') != std::string::npos) {
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
  }
  return out + digits;
}

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(NotAvailable) const { return "NA"; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_real(d); }
    std::string operator()(ExactReal r) const {
      return std::isfinite(r.value) ? detail::round_trip(r.value) : "NA";
    }
  };
  return std::visit(Visitor{}, cell);
}

std::string emit_table(const std::vector<Row>& rows, const TableSchema& schema) {
  std::string out;
  for (std::size_t i = 0; i < schema.columns.size(); ++i) {
    if (i) out += '\t';
    out += schema.columns[i];
  }
  out += '\n';
  for (const Row& row : rows) {
    if (row.size() != schema.columns.size()) {
      throw Error(ErrorKind::InvalidArgument, "row has " + std::to_string(row.size()) +
                                                  " cells, schema has " +
                                                  std::to_string(schema.columns.size()));
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string pretty_table(std::string_view tsv) {
  std::vector<std::vector<std::string>> cells;
  std::size_t pos = 0;
  while (pos < tsv.size()) {
    std::size_t nl = tsv.find('\n', pos);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(pos, nl - pos);
    pos = nl + 1;
    std::vector<std::string> row;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      row.emplace_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    cells.push_back(std::move(row));
  }
  std::vector<std::size_t> widths;
  for (const auto& row : cells) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::string out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    const auto& row = cells[r];
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line.append(widths[i] - row[i].size(), ' ');
    }
    out += line + '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t i = 0; i < widths.size(); ++i) total += widths[i] + (i ? 2 : 0);
      out += std::string(total, '-') + '\n';
    }
  }
  return out;
}

}  // namespace stylometer
