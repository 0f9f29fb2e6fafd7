#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loopkit/loop_table.hpp"

namespace loopkit {

/// Parses the table file format: '#' comment lines, an optional line
/// holding only n, then n rows of n symbols in 1..n. Throws ParseError
/// (with line/column) or Error(Errc::not_latin).
LoopTable parse_table(std::string_view text);

/// Inverse of parse_table for tables whose symbols are 1..n.
std::string serialize_table(const LoopTable& q);

/// fig1, fig2, klein4, sym3, quaternion8, cyclic(n), dihedral(n) (order 2n),
/// elementary_abelian(2,k), product(a,b). Throws Errc::unknown_name.
LoopTable builtin(std::string_view name);

/// The 14 groups of order <= 8, named as accepted by builtin().
std::vector<std::pair<std::string, LoopTable>> group_catalog();

inline constexpr std::size_t kMaxEnumerationOrder = 6;

/// Every normalized Latin square of order n in row-wise backtracking order.
/// Stops early if `visit` returns false. Throws Errc::budget_exceeded above
/// `max_order`.
std::uint64_t for_each_loop(std::size_t n,
                            const std::function<bool(const LoopTable&)>& visit,
                            std::size_t max_order = kMaxEnumerationOrder);

/// All loops of order n; with up_to_iso, one canonical table per
/// isomorphism class, in order of first discovery.
std::vector<LoopTable> enumerate_loops(std::size_t n, bool up_to_iso,
                                       std::size_t max_order = kMaxEnumerationOrder);

struct SweepChecks {
  bool counts = false;  // transversal and regular row transversal counts
  bool suite = false;   // verify_theorems
};

struct SweepRecord {
  std::string id;
  std::size_t n = 0;
  bool group = false;
  std::size_t aq = 0;
  std::size_t dq = 0;
  std::vector<long long> p1;  // 1-based
  bool A = false, B = false, C = false;
  std::optional<std::uint64_t> transversals;
  std::optional<std::uint64_t> rrt;
  std::string suite;  // "pass", "fail:<claim>", or "skipped"

  /// One JSON object, no trailing newline.
  std::string to_json() const;
  static SweepRecord from_json(std::string_view line);
};

struct SweepSummary {
  std::size_t loops = 0;
  std::size_t groups = 0;
  std::size_t pattern[8] = {};  // index A*4 + B*2 + C
  std::size_t bc_not_a = 0;
  std::size_t p1_excludes_one_derived_full = 0;  // |P(Q)| = n-1 and Q = Q'
  std::size_t p1_proper_in_coset = 0;            // |P(Q)| < |Q'|
  std::size_t suite_failures = 0;
  std::string to_json() const;
};

struct SweepOptions {
  SweepChecks checks;
  unsigned workers = 1;
  std::uint64_t max_states = std::uint64_t{1} << 24;
  std::size_t max_order = kMaxEnumerationOrder;
};

/// One record per isomorphism class of each order in [min_order, max_order],
/// sorted by (n, id). Per-loop errors are recorded in the record.
std::vector<SweepRecord> run_sweep(std::size_t min_order, std::size_t max_order,
                                   const SweepOptions& opts,
                                   SweepSummary* summary = nullptr);

}  // namespace loopkit
