#include "loopkit/error.hpp"

namespace loopkit {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::not_latin: return "NotLatin";
    case Errc::ragged_input: return "RaggedInput";
    case Errc::parse_error: return "ParseError";
    case Errc::not_a_subloop: return "NotASubloop";
    case Errc::not_normal: return "NotNormal";
    case Errc::not_a_group: return "NotAGroup";
    case Errc::empty_multiset: return "EmptyMultiset";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::witnesses_disabled: return "WitnessesDisabled";
    case Errc::not_in_single_coset: return "NotInSingleCoset";
    case Errc::not_regular: return "NotRegular";
    case Errc::not_regular_row_transversal: return "NotRegularRowTransversal";
    case Errc::product_not_identity: return "ProductNotIdentity";
    case Errc::contiguous_unit_subsequence: return "ContiguousUnitSubsequence";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::unknown_name: return "UnknownName";
    case Errc::inconsistency_detected: return "InconsistencyDetected";
  }
  return "Unknown";
}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& msg, Errc code)
    : Error(code,
            "line " + std::to_string(line) +
                (column ? ", column " + std::to_string(column) : "") + ": " +
                msg),
      line_(line),
      column_(column) {}

}  // namespace loopkit
