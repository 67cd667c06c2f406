#pragma once

// Command orchestration: flat key=value configuration in, a Table out.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dpz/report.hpp"

namespace dpz {

class RunConfig {
 public:
  // One "key=value" per line; blank lines and lines starting with '#' are
  // skipped. Repeated keys are an error.
  static RunConfig parse(const std::string& text);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// The commands understood by run().
const std::vector<std::string>& command_names();

// Executes the configured command. Throws dpz::Error on failure.
Table run(const RunConfig& cfg);

}  // namespace dpz
