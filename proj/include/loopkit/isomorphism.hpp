#pragma once

#include <optional>
#include <string>

#include "loopkit/loop_table.hpp"
#include "loopkit/permutation.hpp"

namespace loopkit {

/// An isomorphism a -> b (fixing 0) if one exists. Backtracks over images
/// of a generating sequence of `a`; candidates are restricted to elements
/// with the same translation cycle types and tried in ascending index.
std::optional<Permutation> is_isomorphic(const LoopTable& a, const LoopTable& b);

/// Lexicographically smallest row-major table over all identity-fixing
/// relabelings, one byte per entry. Intended for orders up to about 8.
std::string canonical_form(const LoopTable& q);

/// The table whose data is canonical_form(q).
LoopTable canonical_table(const LoopTable& q);

/// Short printable id of a canonical form: "<n>:" followed by the interior
/// (n-1)x(n-1) entries in base 36.
std::string canonical_id(const LoopTable& q);

}  // namespace loopkit
