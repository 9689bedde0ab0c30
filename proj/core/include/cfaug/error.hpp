#pragma once

#include <stdexcept>
#include <string>

namespace cfaug {

/// Error categories; numeric values double as process exit codes in the CLI.
enum class ErrorCode {
  validation = 2,  // bad input: files, config, preconditions
  algorithm = 3,   // method cannot proceed (e.g. no native counterfactual pairs)
  io = 4,          // filesystem failures
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  static Error validation(const std::string& m) { return {ErrorCode::validation, m}; }
  static Error algorithm(const std::string& m) { return {ErrorCode::algorithm, m}; }
  static Error io(const std::string& m) { return {ErrorCode::io, m}; }

private:
  ErrorCode code_;
};

}  // namespace cfaug
