#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "loopkit/element_set.hpp"
#include "loopkit/loop_table.hpp"

namespace loopkit {

struct Cell {
  Element row = 0;
  Element col = 0;
  Element entry = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// A set of cells of a multiplication table, sorted by (row, col).
class CellSelection {
 public:
  CellSelection() = default;
  /// Checks every entry against `q`, sorts, and rejects duplicate cells
  /// (Errc::invalid_argument).
  CellSelection(const LoopTable& q, std::vector<Cell> cells);
  /// Cells given as (row, col); entries are looked up.
  static CellSelection from_positions(
      const LoopTable& q,
      const std::vector<std::pair<Element, Element>>& positions);

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }
  /// Rows in cell order.
  std::vector<Element> rows() const;
  /// "(r,c,e) ..." with 1-based symbols.
  std::string to_string() const;

  friend bool operator==(const CellSelection&, const CellSelection&) = default;

 private:
  std::vector<Cell> cells_;
};

struct RegularityProfile {
  std::vector<std::uint32_t> as_row;
  std::vector<std::uint32_t> as_column;
  std::vector<std::uint32_t> as_entry;
};

RegularityProfile regularity_profile(const LoopTable& q,
                                     const CellSelection& c);

/// Every symbol appears as a column as often as it appears as an entry.
bool is_regular(const LoopTable& q, const CellSelection& c);

struct SelectionKind {
  enum class Type { transversal, k_plex, row_k_plex, regular_row_k_plex };
  Type type = Type::transversal;
  std::uint32_t k = 1;

  static SelectionKind transversal() { return {Type::transversal, 1}; }
  static SelectionKind k_plex(std::uint32_t k) { return {Type::k_plex, k}; }
  static SelectionKind row_k_plex(std::uint32_t k) {
    return {Type::row_k_plex, k};
  }
  static SelectionKind regular_row_k_plex(std::uint32_t k) {
    return {Type::regular_row_k_plex, k};
  }
  std::string name() const;
};

/// Independent definition check for a kind.
bool satisfies(const LoopTable& q, const CellSelection& c, SelectionKind kind);

struct SearchOptions {
  /// Cap on memoized search states; Errc::budget_exceeded beyond it.
  std::uint64_t max_states = std::uint64_t{1} << 24;
  /// Threads for splitting the first row when counting.
  unsigned workers = 1;
};

std::optional<CellSelection> find_selection(const LoopTable& q,
                                            SelectionKind kind,
                                            const SearchOptions& opts = {});

std::uint64_t count_selections(const LoopTable& q, SelectionKind kind,
                               const SearchOptions& opts = {});

/// Visits every selection of the kind (plain DFS, no memoization) until the
/// visitor returns false. Returns the number visited.
std::uint64_t for_each_selection(
    const LoopTable& q, SelectionKind kind,
    const std::function<bool(const CellSelection&)>& visit);

/// Splits a nonempty regular selection into regular cycles. Within each
/// returned cycle the cells are in walk order: the entry of cell t+1 is the
/// column of cell t, and the entry of the first is the column of the last.
/// Throws Errc::not_regular.
std::vector<std::vector<Cell>> cycle_decompose_regular(const LoopTable& q,
                                                       const CellSelection& c);

/// x_1(x_2(...(x_s)...)) for the rows of a walk-ordered cycle.
Element nested_left_product(const LoopTable& q, const std::vector<Cell>& cycle);

/// Regular set {(g_i, h_i, h_{i-1})} with h_i = g_{i+1}...g_k for a unit
/// product with no proper contiguous unit subsequence. Throws
/// Errc::not_a_group, Errc::product_not_identity,
/// Errc::contiguous_unit_subsequence.
CellSelection regular_set_from_unit_product(const LoopTable& g,
                                            const std::vector<Element>& seq);

/// Splits a unit-product sequence into minimal unit blocks by repeatedly
/// extracting the leftmost shortest proper contiguous unit subsequence.
std::vector<std::vector<Element>> unit_product_blocks(
    const LoopTable& g, const std::vector<Element>& seq);

/// Regular row transversal from an ordering of all of G with product 1.
CellSelection transversal_from_full_product(const LoopTable& g,
                                            const std::vector<Element>& ordering);

/// {T_g : g in G} with T_g = {(x, yg, zg)}. Throws Errc::not_a_group,
/// Errc::not_regular_row_transversal.
std::vector<CellSelection> translate_partition(const LoopTable& g,
                                               const CellSelection& t);

}  // namespace loopkit
