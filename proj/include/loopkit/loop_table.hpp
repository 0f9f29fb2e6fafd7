#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "loopkit/element_set.hpp"
#include "loopkit/permutation.hpp"

namespace loopkit {

enum class Side { left, right };

/// A finite loop as a normalized Cayley table: element 0 is the identity,
/// every row and column is a permutation of 0..n-1.
///
/// Instances are immutable. Left and right division tables are built at
/// construction so `divide` is a lookup.
class LoopTable {
 public:
  LoopTable() = default;

  /// Builds from a row-major n*n table of indices. Throws Errc::not_latin
  /// or Errc::ragged_input if the table is not a normalized Latin square.
  LoopTable(std::size_t n, std::vector<Element> table);

  /// Original symbol for each index, as recorded by from_rows. Defaults to
  /// index + 1.
  LoopTable with_symbols(std::vector<long long> symbols) const;

  std::size_t order() const noexcept { return n_; }
  Element mul(Element x, Element y) const { return table_[x * n_ + y]; }
  /// Left: the y with x*y = z. Right: the y with y*x = z.
  Element divide(Side side, Element x, Element z) const {
    return side == Side::left ? ldiv_[x * n_ + z] : rdiv_[x * n_ + z];
  }
  Element ldiv(Element x, Element z) const { return ldiv_[x * n_ + z]; }
  Element rdiv(Element z, Element x) const { return rdiv_[x * n_ + z]; }

  std::span<const Element> row(Element x) const {
    return {table_.data() + x * n_, n_};
  }
  std::span<const Element> data() const noexcept { return table_; }
  std::span<const long long> symbols() const noexcept { return symbols_; }
  long long symbol(Element x) const { return symbols_[x]; }

  Permutation translation(Side side, Element x) const;

  friend bool operator==(const LoopTable& a, const LoopTable& b) {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Element> table_;
  std::vector<Element> ldiv_;  // ldiv_[x*n+z] = x \ z
  std::vector<Element> rdiv_;  // rdiv_[x*n+z] = z / x
  std::vector<long long> symbols_;
};

/// Normalizes an arbitrary Latin square over any n distinct symbols. The
/// symbol at rows[0][0] becomes the identity; the remaining symbols are
/// indexed in ascending order. Row i is relabeled as rows[i][0] and column j
/// as rows[0][j], so a table that is already normalized keeps its products.
LoopTable from_rows(const std::vector<std::vector<long long>>& rows);

Element mul(const LoopTable& q, Element x, Element y);
Element divide(const LoopTable& q, Side side, Element x, Element z);
Permutation translation(const LoopTable& q, Side side, Element x);

/// Relabels by an identity-fixing bijection: result(p(x), p(y)) = p(x*y).
LoopTable relabel(const LoopTable& q, const Permutation& p);

/// Cayley table of a direct product (pairs ordered as a*|b| + b).
LoopTable direct_product(const LoopTable& a, const LoopTable& b);

}  // namespace loopkit
