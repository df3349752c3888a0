#pragma once

#include <string>
#include <utility>
#include <vector>

#include "capstone/model.hpp"

namespace capstone {

enum class ReportFormat { Table, Csv, Json, SvgBars };

ReportFormat parse_report_format(const std::string& s, const std::string& field);
std::string to_string(ReportFormat format);

// Display rounding: half-up to 3 decimals (the convention used when
// comparing against published tables). Internal arithmetic is never rounded.
std::string format_round3(double v);

// Shortest decimal that round-trips to the same double.
std::string format_full(double v);

// Compact label formatting (9 significant digits, grid round-off absorbed).
std::string format_compact(double v);

struct TableDocument {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Aligned plain-text table.
std::string render_table(const TableDocument& doc);

// RFC 4180 quoting, one header row, \n line endings. An empty document
// renders as the header only.
std::string render_csv(const TableDocument& doc);

// Array of one object per row, keyed by column name.
std::string render_json(const TableDocument& doc);

struct BarGroup {
  std::string label;
  std::vector<std::pair<std::string, double>> bars;
};

// Grouped vertical bars as standalone SVG 1.1; byte-deterministic.
std::string render_svg_bars(const std::vector<BarGroup>& groups, const std::string& title);

// Paper-style layouts: one row per outcome/utility with rounded and
// full-precision columns.
TableDocument outcome_report(const OutcomeVector& out);
TableDocument utility_report(const UtilityVector& u);

}  // namespace capstone
