#include "dpz/report.hpp"

#include <sstream>

#include <json.hpp>

#include "dpz/error.hpp"

namespace dpz {

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw Error(ErrorKind::internal, "row width " + std::to_string(row.size()) + " does not match " +
                                         std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\n";
}

// Splits one CSV record starting at pos; advances pos past its line ending.
std::vector<std::string> csv_record(const std::string& text, std::size_t& pos) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  while (pos < text.size()) {
    char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          cur += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) fail_config("unterminated quoted CSV field");
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

std::string emit_csv(const Table& t) {
  std::string out = "# schema=" + std::string(kReportSchema) + "\n# kind=" + t.kind + "\n";
  for (const auto& [k, v] : t.config) out += "# config." + k + "=" + v + "\n";
  for (const auto& [k, v] : t.summary) out += "# summary." + k + "=" + v + "\n";
  out += csv_line(t.columns);
  for (const auto& row : t.rows) out += csv_line(row);
  return out;
}

Table parse_csv(const std::string& text) {
  Table t;
  std::size_t pos = 0;
  bool header = false;
  while (pos < text.size()) {
    if (!header && text[pos] == '#') {
      std::size_t end = text.find('\n', pos);
      std::string line = text.substr(pos + 2, (end == std::string::npos ? text.size() : end) - pos - 2);
      pos = end == std::string::npos ? text.size() : end + 1;
      auto eq = line.find('=');
      if (eq == std::string::npos) fail_config("malformed CSV comment line '" + line + "'");
      std::string key = line.substr(0, eq);
      std::string value = line.substr(eq + 1);
      if (key == "schema") {
        if (value != kReportSchema) fail_config("unsupported report schema '" + value + "'");
      } else if (key == "kind") {
        t.kind = value;
      } else if (key.rfind("config.", 0) == 0) {
        t.config.emplace_back(key.substr(7), value);
      } else if (key.rfind("summary.", 0) == 0) {
        t.summary.emplace_back(key.substr(8), value);
      } else {
        fail_config("unknown CSV comment key '" + key + "'");
      }
      continue;
    }
    auto rec = csv_record(text, pos);
    if (!header) {
      t.columns = std::move(rec);
      header = true;
    } else {
      if (rec.size() != t.columns.size()) fail_config("CSV row width does not match the header");
      t.rows.push_back(std::move(rec));
    }
  }
  return t;
}

std::string emit_json(const Table& t) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["kind"] = t.kind;
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.config) j["config"][k] = v;
  j["summary"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.summary) j["summary"][k] = v;
  j["columns"] = t.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) j["rows"].push_back(row);
  return j.dump(2) + "\n";
}

Table parse_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail_config(std::string("malformed report JSON: ") + e.what());
  }
  if (j.value("schema", "") != kReportSchema) fail_config("unsupported report schema");
  Table t;
  try {
    t.kind = j.at("kind").get<std::string>();
    for (const auto& [k, v] : j.at("config").items()) t.config.emplace_back(k, v.get<std::string>());
    for (const auto& [k, v] : j.at("summary").items()) t.summary.emplace_back(k, v.get<std::string>());
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) t.rows.push_back(row.get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    fail_config(std::string("report JSON has the wrong shape: ") + e.what());
  }
  return t;
}

std::string emit(const Table& t, const std::string& format) {
  if (format == "csv") return emit_csv(t);
  if (format == "json") return emit_json(t);
  fail_config("unknown output format '" + format + "'");
}

}  // namespace dpz
