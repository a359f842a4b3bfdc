#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kst {

/// Bad caller input: out-of-range vertex, malformed parameters.
class input_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation was violated.
class contract_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Text input that does not follow the edge-list or certificate format.
class parse_error : public std::runtime_error {
public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace kst
