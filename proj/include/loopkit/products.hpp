#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "loopkit/algebra.hpp"
#include "loopkit/element_set.hpp"
#include "loopkit/loop_table.hpp"

namespace loopkit {

/// Default cap on the number of sub-multiset states a product DP may use.
inline constexpr std::uint64_t kDefaultMaxStates = std::uint64_t{1} << 24;

/// Multiplicity of each element of a loop.
class Multiset {
 public:
  Multiset() = default;
  explicit Multiset(std::vector<std::uint32_t> counts);
  /// k copies of each of n elements.
  static Multiset full(std::size_t n, std::uint32_t k);
  static Multiset of(std::size_t n, const std::vector<Element>& elems);

  std::size_t universe() const noexcept { return counts_.size(); }
  std::uint32_t count(Element e) const { return counts_[e]; }
  const std::vector<std::uint32_t>& counts() const noexcept { return counts_; }
  std::uint64_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  friend bool operator==(const Multiset&, const Multiset&) = default;

 private:
  std::vector<std::uint32_t> counts_;
  std::uint64_t size_ = 0;
};

/// A product expression tree; leaves are elements, an inner node is
/// left * right.
class Expression {
 public:
  struct Node {
    Element leaf = 0;
    int left = -1;  // -1 on leaves
    int right = -1;
  };

  static Expression leaf(Element e);
  static Expression product(const Expression& left, const Expression& right);

  bool is_leaf() const { return nodes_[root_].left < 0; }
  Element evaluate(const LoopTable& q) const;
  Multiset leaves(std::size_t n) const;
  /// Leaves left to right.
  std::vector<Element> leaf_sequence() const;
  /// Fully parenthesized, 1-based symbols, e.g. "((2*3)*4)".
  std::string to_string() const;

 private:
  Element eval(const LoopTable& q, int node) const;
  void collect(int node, std::vector<Element>& out) const;
  void print(int node, std::string& out) const;
  int append(const Expression& other);

  std::vector<Node> nodes_;
  int root_ = 0;
};

struct ProductOptions {
  bool witnesses = false;
  std::uint64_t max_states = kDefaultMaxStates;
};

/// The achievable values of all orderings and associations of a multiset.
class ProductSet {
 public:
  const Multiset& multiset() const noexcept { return multiset_; }
  const ElementSet& achievable() const noexcept { return achievable_; }
  bool has_witnesses() const noexcept { return witness_ != nullptr; }

  /// An expression over exactly multiset() evaluating to `target`, or
  /// nullopt if `target` is not achievable. Throws Errc::witnesses_disabled.
  std::optional<Expression> witness(Element target) const;

 private:
  friend ProductSet product_set_of_multiset(const LoopTable&, const Multiset&,
                                            const ProductOptions&);
  struct WitnessStore;

  Multiset multiset_;
  ElementSet achievable_;
  std::shared_ptr<const WitnessStore> witness_;
};

/// Sub-multiset DP. Throws Errc::empty_multiset, Errc::budget_exceeded.
ProductSet product_set_of_multiset(const LoopTable& q, const Multiset& m,
                                   const ProductOptions& opts = {});

/// P^k(Q). Throws Errc::invalid_argument for k = 0 and
/// Errc::budget_exceeded when (k+1)^n exceeds opts.max_states.
ProductSet product_set(const LoopTable& q, std::uint32_t k,
                       const ProductOptions& opts = {});

/// P^1(Q), ..., P^kmax(Q) from a single DP over kmax copies of each element
/// (result[j-1] = P^j). Witnesses are not kept.
std::vector<ElementSet> full_product_chain(
    const LoopTable& q, std::uint32_t kmax,
    std::uint64_t max_states = kDefaultMaxStates);

std::optional<Expression> witness(const ProductSet& ps, Element target);

struct OmegaResult {
  std::uint32_t k = 0;  // smallest k with P^k = P^{k+2}, P^{k+1} = P^{k+3}
  ElementSet achievable;  // P^k u P^{k+1}
  std::vector<ElementSet> chain;  // P^1 .. P^{k+3}
};

/// Throws Errc::budget_exceeded if the chain does not stabilize in budget.
OmegaResult p_omega(const LoopTable& q,
                    std::uint64_t max_states = kDefaultMaxStates);

/// Elementwise product AB = {ab : a in A, b in B}.
ElementSet set_product(const LoopTable& q, const ElementSet& a,
                       const ElementSet& b);

struct CosetProfile {
  ElementSet derived;             // Q'
  ElementSet associator;          // A(Q)
  ElementSet derived_coset;       // the coset of Q' holding the products
  std::vector<ElementSet> associator_cosets_inside;  // A-cosets in it
  std::vector<ElementSet> associator_cosets_hit;     // those meeting P
  bool all_hit = false;
};

/// Throws Errc::not_in_single_coset if the achievable set straddles cosets
/// of Q' (never the case for valid input).
CosetProfile coset_profile(const LoopTable& q, const ProductSet& ps);
CosetProfile coset_profile(const LoopTable& q, const ElementSet& achievable);

}  // namespace loopkit
