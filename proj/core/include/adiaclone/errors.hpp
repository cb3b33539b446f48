#pragma once

#include <stdexcept>
#include <string>

namespace adiaclone {

/// Two objects that must share a Hilbert-space basis do not.
class BasisMismatch : public std::invalid_argument {
 public:
  explicit BasisMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Integration diagnostics exceeded their abort threshold (norm or trace drift).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A configuration document is malformed. `field()` holds the dotted path of
/// the offending entry, `line()` the 1-based source line when known (0 otherwise).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0)
      : std::runtime_error(compose(field, message, line)), field_(std::move(field)), message_(message), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }
  int line() const noexcept { return line_; }

 private:
  static std::string compose(const std::string& field, const std::string& message, int line) {
    std::string s = field.empty() ? message : ("`" + field + "`: " + message);
    if (line > 0) s += " (line " + std::to_string(line) + ")";
    return s;
  }

  std::string field_;
  std::string message_;
  int line_;
};

}  // namespace adiaclone
