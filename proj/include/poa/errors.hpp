#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poa {

// Malformed or inconsistent input: unknown markers, mismatched marker sets,
// cyclic relations, infeasible solutions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The order is not in the family an operation requires (e.g. to_weak on a
// 2+2 poset).
class FamilyMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// An exhaustive search exceeded its configured budget.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::size_t partial_count)
      : std::runtime_error(what), partial_count_(partial_count) {}

  // Number of items (extensions, states) processed before giving up.
  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

// Text input that does not follow one of the line-oriented grammars.
class ParseError : public InvalidArgument {
 public:
  ParseError(std::size_t line, const std::string& message)
      : InvalidArgument("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace poa
