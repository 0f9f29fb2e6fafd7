#pragma once

#include <cstddef>
#include <vector>

#include "loopkit/element_set.hpp"
#include "loopkit/loop_table.hpp"
#include "loopkit/permutation.hpp"

namespace loopkit {

/// One letter of a translation word: L_x, L_x^{-1}, R_x or R_x^{-1}.
struct TranslationLetter {
  Side side = Side::left;
  Element element = 0;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const TranslationLetter&,
                         const TranslationLetter&) = default;
};

/// A member of the multiplication group represented as a word. The word
/// (l_1, ..., l_k) acts as l_1(l_2(...l_k(z)...)): the last letter first.
struct TranslationWord {
  std::vector<TranslationLetter> letters;

  Element apply(const LoopTable& q, Element z) const;
  bool left_only() const;
};

/// Partition of a loop into the cosets xN of a normal subloop N.
struct CosetPartition {
  ElementSet subloop;
  std::vector<std::size_t> coset_of;      // element -> coset index
  std::vector<Element> representatives;  // coset index -> smallest member

  std::size_t count() const noexcept { return representatives.size(); }
  ElementSet coset(std::size_t index) const;
  /// Image of a set under the projection Q -> Q/N, as a set of cosets.
  ElementSet project(const ElementSet& s) const;
  /// Union of the listed cosets, as a subset of Q.
  ElementSet lift(const ElementSet& cosets) const;
};

struct Quotient {
  LoopTable loop;
  CosetPartition partition;
};

/// L(x,y), R(x,y) and T(x) for all x, y, with duplicates removed. Every
/// generator fixes 0. Order is deterministic (sorted by image array).
std::vector<Permutation> inner_generators(const LoopTable& q);

bool is_subloop(const LoopTable& q, const ElementSet& s);
/// Throws Errc::not_a_subloop if `s` is not a subloop.
bool is_normal(const LoopTable& q, const ElementSet& s);
/// Same as is_normal but reuses a precomputed generator list.
bool is_normal(const LoopTable& q, const ElementSet& s,
               const std::vector<Permutation>& generators);

/// Smallest subloop containing `s` (and 0).
ElementSet subloop_closure(const LoopTable& q, const ElementSet& s);
/// Smallest normal subloop containing `s`.
ElementSet normal_closure(const LoopTable& q, const ElementSet& s);
ElementSet normal_closure(const LoopTable& q, const ElementSet& s,
                          const std::vector<Permutation>& generators);

/// a(x,y,z) = (x(yz)) \ ((xy)z).
Element associator(const LoopTable& q, Element x, Element y, Element z);
/// c(x,y) = (yx) \ (xy).
Element commutator(const LoopTable& q, Element x, Element y);

/// A(Q): smallest normal subloop with a group quotient.
ElementSet associator_subloop(const LoopTable& q);
/// Q': smallest normal subloop with an abelian group quotient.
ElementSet derived_subloop(const LoopTable& q);

/// Cosets of `n` without a normality check (the caller guarantees it).
CosetPartition coset_partition(const LoopTable& q, const ElementSet& n);
/// Throws Errc::not_normal if `n` is not a normal subloop.
Quotient quotient(const LoopTable& q, const ElementSet& n);

/// Permutation of the cosets of `n` induced by `w`. Throws Errc::not_normal.
Permutation induced_map(const LoopTable& q, const TranslationWord& w,
                        const ElementSet& n);

bool is_group(const LoopTable& q);
bool is_abelian_group(const LoopTable& q);
bool is_commutative(const LoopTable& q);

/// Smallest m >= 1 with x^m = 1 using left-associated powers, or 0 if the
/// powers never return to 1 within |Q| steps. In a group this is the order.
std::size_t power_order(const LoopTable& q, Element x);

}  // namespace loopkit
