#pragma once

#include <stdexcept>
#include <string>

namespace smoothspec {

// Invalid user-supplied parameters or inconsistent inputs.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input file. Row and column are 1-based; column 0 means "whole row".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t col)
      : std::runtime_error(what), row_(row), col_(col) {}

  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

// A numerical routine met a degenerate operand (zero row sum, zero iterate, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pipeline failure tagged with the stage that raised it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what, bool config_error)
      : std::runtime_error("[" + stage + "] " + what),
        stage_(std::move(stage)),
        config_error_(config_error) {}

  const std::string& stage() const { return stage_; }
  bool is_config_error() const { return config_error_; }

 private:
  std::string stage_;
  bool config_error_;
};

}  // namespace smoothspec
