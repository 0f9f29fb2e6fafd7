#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loopkit {

enum class Errc {
  not_latin,
  ragged_input,
  parse_error,
  not_a_subloop,
  not_normal,
  not_a_group,
  empty_multiset,
  budget_exceeded,
  witnesses_disabled,
  not_in_single_coset,
  not_regular,
  not_regular_row_transversal,
  product_not_identity,
  contiguous_unit_subsequence,
  invalid_argument,
  unknown_name,
  inconsistency_detected,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Line and column are 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg,
             Errc code = Errc::parse_error);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace loopkit
