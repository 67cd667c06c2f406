#pragma once

// Tabular reports shared by every command, with CSV and JSON renderings that
// parse back to the same value.

#include <string>
#include <utility>
#include <vector>

namespace dpz {

inline constexpr const char* kReportSchema = "dpz.report/1";

struct Table {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> config;   // resolved inputs
  std::vector<std::pair<std::string, std::string>> summary;  // derived verdicts
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  friend bool operator==(const Table&, const Table&) = default;
};

// "# kind=...", "# config.key=value", "# summary.key=value", header, rows.
std::string emit_csv(const Table& t);
Table parse_csv(const std::string& text);

std::string emit_json(const Table& t);
Table parse_json(const std::string& text);

// format is "csv" or "json".
std::string emit(const Table& t, const std::string& format);

}  // namespace dpz
