#include "capstone/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace capstone {

ReportFormat parse_report_format(const std::string& s, const std::string& field) {
  if (s == "table") return ReportFormat::Table;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  if (s == "svg-bars") return ReportFormat::SvgBars;
  throw ValidationError(field, "expected \"table\", \"csv\", \"json\" or \"svg-bars\", got \"" + s + "\"");
}

std::string to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::Table: return "table";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
    default: return "svg-bars";
  }
}

std::string format_round3(double v) {
  const bool negative = v < 0.0;
  const double magnitude = std::abs(v);
  // The epsilon keeps values that are decimally exact halves (e.g. 0.8725)
  // rounding up even when the nearest double sits just below the half.
  const long long milli = static_cast<long long>(std::floor(magnitude * 1000.0 + 0.5 + 1e-9));
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s%lld.%03lld", negative && milli > 0 ? "-" : "",
                milli / 1000, milli % 1000);
  return buf;
}

std::string format_full(double v) {
  char buf[48];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

std::string format_compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string render_table(const TableDocument& doc) {
  std::vector<std::size_t> widths(doc.columns.size(), 0);
  for (std::size_t c = 0; c < doc.columns.size(); ++c) widths[c] = doc.columns[c].size();
  for (const auto& row : doc.rows) {
    for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }

  std::ostringstream out;
  if (!doc.title.empty()) out << doc.title << "\n";
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < widths.size(); ++c) {
      const std::string& cell = c < row.size() ? row[c] : std::string();
      out << cell;
      if (c + 1 < widths.size()) out << std::string(widths[c] - cell.size() + 2, ' ');
    }
    out << "\n";
  };
  emit_row(doc.columns);
  std::size_t total = 0;
  for (std::size_t c = 0; c < widths.size(); ++c) total += widths[c] + (c + 1 < widths.size() ? 2 : 0);
  out << std::string(total, '-') << "\n";
  for (const auto& row : doc.rows) emit_row(row);
  return out.str();
}

namespace {

std::string csv_escape(const std::string& field) {
  const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += "\"";
  return quoted;
}

}  // namespace

std::string render_csv(const TableDocument& doc) {
  std::ostringstream out;
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ",";
      out << csv_escape(row[c]);
    }
    out << "\n";
  };
  emit_row(doc.columns);
  for (const auto& row : doc.rows) emit_row(row);
  return out.str();
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_json(const TableDocument& doc) {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    out << (r == 0 ? "\n" : ",\n") << "  {";
    for (std::size_t c = 0; c < doc.columns.size(); ++c) {
      if (c > 0) out << ", ";
      const std::string& cell = c < doc.rows[r].size() ? doc.rows[r][c] : std::string();
      out << "\"" << json_escape(doc.columns[c]) << "\": \"" << json_escape(cell) << "\"";
    }
    out << "}";
  }
  if (!doc.rows.empty()) out << "\n";
  out << "]\n";
  return out.str();
}

std::string render_svg_bars(const std::vector<BarGroup>& groups, const std::string& title) {
  static const char* kFills[] = {"#4c78a8", "#f58518", "#54a24b", "#b279a2", "#e45756"};

  std::size_t bars_per_group = 0;
  double max_value = 0.0;
  for (const auto& group : groups) {
    bars_per_group = std::max(bars_per_group, group.bars.size());
    for (const auto& [label, value] : group.bars) max_value = std::max(max_value, value);
  }
  if (max_value <= 0.0) max_value = 1.0;

  const double bar_width = 34.0;
  const double bar_gap = 6.0;
  const double group_gap = 40.0;
  const double margin_left = 50.0;
  const double margin_top = 48.0;
  const double plot_height = 240.0;
  const double group_width =
      static_cast<double>(bars_per_group) * bar_width +
      (bars_per_group > 1 ? static_cast<double>(bars_per_group - 1) * bar_gap : 0.0);
  const double width = margin_left * 2 +
                       static_cast<double>(groups.size()) * group_width +
                       (groups.empty() ? 0.0 : static_cast<double>(groups.size() - 1) * group_gap);
  const double height = margin_top + plot_height + 64.0;

  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height)
      << "\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" fill=\"#ffffff\"/>\n";
  if (!title.empty()) {
    svg << "  <text x=\"" << num(width / 2.0)
        << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">"
        << title << "</text>\n";
  }
  const double axis_y = margin_top + plot_height;
  svg << "  <line x1=\"" << num(margin_left - 10.0) << "\" y1=\"" << num(axis_y) << "\" x2=\""
      << num(width - margin_left + 10.0) << "\" y2=\"" << num(axis_y)
      << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  double x = margin_left;
  for (const auto& group : groups) {
    double bar_x = x;
    for (std::size_t b = 0; b < group.bars.size(); ++b) {
      const auto& [label, value] = group.bars[b];
      const double h = std::max(0.0, value) / max_value * plot_height;
      const double y = axis_y - h;
      svg << "  <rect x=\"" << num(bar_x) << "\" y=\"" << num(y) << "\" width=\""
          << num(bar_width) << "\" height=\"" << num(h) << "\" fill=\""
          << kFills[b % (sizeof(kFills) / sizeof(kFills[0]))] << "\"><title>" << group.label
          << " " << label << " = " << format_round3(value) << "</title></rect>\n";
      svg << "  <text x=\"" << num(bar_x + bar_width / 2.0) << "\" y=\"" << num(y - 4.0)
          << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
          << format_round3(value) << "</text>\n";
      svg << "  <text x=\"" << num(bar_x + bar_width / 2.0) << "\" y=\"" << num(axis_y + 14.0)
          << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" << label
          << "</text>\n";
      bar_x += bar_width + bar_gap;
    }
    svg << "  <text x=\"" << num(x + group_width / 2.0) << "\" y=\"" << num(axis_y + 32.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << group.label
        << "</text>\n";
    x += group_width + group_gap;
  }
  svg << "</svg>\n";
  return svg.str();
}

TableDocument outcome_report(const OutcomeVector& out) {
  TableDocument doc;
  doc.title = "Expected project outcomes";
  doc.columns = {"outcome", "value", "value_full", "interpretation"};
  auto row = [&](const char* name, double v, const char* meaning) {
    doc.rows.push_back({name, format_round3(v), format_full(v), meaning});
  };
  row("technical_quality", out.technical_quality, "Expected technical quality Q");
  row("documentation_quality", out.documentation_quality, "Expected documentation quality D_doc");
  row("timeliness", out.timeliness, "Expected timeliness T");
  row("alignment", out.alignment, "Expected alignment with sponsor expectations A");
  row("publishability", out.publishability, "Expected publishability P");
  return doc;
}

TableDocument utility_report(const UtilityVector& u) {
  TableDocument doc;
  doc.title = "Stakeholder utilities";
  doc.columns = {"stakeholder", "value", "value_full", "interpretation"};
  doc.rows.push_back({"university", format_round3(u.university), format_full(u.university),
                      "Outcome-weighted payoff net of policy costs"});
  doc.rows.push_back({"sponsor", format_round3(u.sponsor), format_full(u.sponsor),
                      "Alignment and timeliness net of mentoring and scope costs"});
  doc.rows.push_back({"students", format_round3(u.students), format_full(u.students),
                      "Grade-relevant outcomes net of effort disutility"});
  return doc;
}

}  // namespace capstone
