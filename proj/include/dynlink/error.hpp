#pragma once

#include <stdexcept>
#include <string>

namespace dynlink {

enum class ErrorCode {
  parse = 1,
  empty_input,
  index,
  contract,
  degenerate_task,
  diverged,
  io,
  config,
};

const char* to_string(ErrorCode code) noexcept;

/// Base of every error thrown by the core library. The C API maps the
/// code one-to-one onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyInputError : public Error {
 public:
  explicit EmptyInputError(const std::string& what)
      : Error(ErrorCode::empty_input, what) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& what) : Error(ErrorCode::index, what) {}
};

class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what)
      : Error(ErrorCode::contract, what) {}
};

class DegenerateTaskError : public Error {
 public:
  explicit DegenerateTaskError(const std::string& what)
      : Error(ErrorCode::degenerate_task, what) {}
};

class DivergedError : public Error {
 public:
  DivergedError(std::size_t epoch, const std::string& what)
      : Error(ErrorCode::diverged,
              "training diverged at epoch " + std::to_string(epoch) + ": " + what),
        epoch_(epoch) {}
  std::size_t epoch() const noexcept { return epoch_; }

 private:
  std::size_t epoch_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

#define DYNLINK_REQUIRE(cond, msg)                \
  do {                                            \
    if (!(cond)) throw ::dynlink::ContractViolation(msg); \
  } while (0)

}  // namespace dynlink
