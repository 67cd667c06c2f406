#pragma once

#include <stdexcept>
#include <string>

namespace dpz {

// Numeric values double as CLI exit codes and C API status codes.
enum class ErrorKind : int {
  internal = 1,
  config = 2,
  budget = 3,
  model = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_config(const std::string& what) {
  throw Error(ErrorKind::config, what);
}
[[noreturn]] inline void fail_model(const std::string& what) {
  throw Error(ErrorKind::model, what);
}
[[noreturn]] inline void fail_budget(const std::string& what) {
  throw Error(ErrorKind::budget, what);
}

const char* error_kind_name(ErrorKind kind) noexcept;

}  // namespace dpz
