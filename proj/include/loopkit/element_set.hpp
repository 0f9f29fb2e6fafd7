#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace loopkit {

/// Index of a loop element; 0 is always the identity.
using Element = std::uint32_t;

/// Largest supported loop order (ElementSet is a single 64-bit mask).
inline constexpr std::size_t kMaxOrder = 64;

/// A subset of the elements of a loop of order `universe()`.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe, std::uint64_t mask = 0)
      : universe_(universe), mask_(mask & full_mask(universe)) {
    assert(universe <= kMaxOrder);
  }
  ElementSet(std::size_t universe, std::initializer_list<Element> elems)
      : ElementSet(universe) {
    for (Element e : elems) insert(e);
  }

  static ElementSet all(std::size_t universe) {
    return ElementSet(universe, full_mask(universe));
  }
  static ElementSet identity_only(std::size_t universe) {
    return ElementSet(universe, universe ? 1u : 0u);
  }
  static std::uint64_t full_mask(std::size_t universe) {
    return universe >= 64 ? ~std::uint64_t{0}
                          : ((std::uint64_t{1} << universe) - 1);
  }

  std::size_t universe() const noexcept { return universe_; }
  std::uint64_t mask() const noexcept { return mask_; }
  std::size_t size() const noexcept { return std::popcount(mask_); }
  bool empty() const noexcept { return mask_ == 0; }
  bool full() const noexcept { return mask_ == full_mask(universe_); }

  bool contains(Element e) const noexcept {
    return e < universe_ && ((mask_ >> e) & 1u);
  }
  void insert(Element e) {
    assert(e < universe_);
    mask_ |= std::uint64_t{1} << e;
  }
  void erase(Element e) { mask_ &= ~(std::uint64_t{1} << e); }

  bool is_subset_of(const ElementSet& o) const noexcept {
    return (mask_ & ~o.mask_) == 0;
  }
  bool intersects(const ElementSet& o) const noexcept {
    return (mask_ & o.mask_) != 0;
  }

  ElementSet operator|(const ElementSet& o) const {
    return ElementSet(universe_, mask_ | o.mask_);
  }
  ElementSet operator&(const ElementSet& o) const {
    return ElementSet(universe_, mask_ & o.mask_);
  }
  ElementSet complement() const {
    return ElementSet(universe_, ~mask_ & full_mask(universe_));
  }
  ElementSet& operator|=(const ElementSet& o) {
    mask_ |= o.mask_;
    return *this;
  }

  /// Smallest member; the set must be nonempty.
  Element first() const {
    assert(mask_ != 0);
    return static_cast<Element>(std::countr_zero(mask_));
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for (std::uint64_t m = mask_; m; m &= m - 1)
      out.push_back(static_cast<Element>(std::countr_zero(m)));
    return out;
  }

  /// Formats as "{1,3,4}" using 1-based symbols.
  std::string to_string() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::uint64_t mask_ = 0;
};

/// Calls f(e) for each member of a raw mask in ascending order.
template <class F>
void for_each_bit(std::uint64_t mask, F&& f) {
  for (; mask; mask &= mask - 1) f(static_cast<Element>(std::countr_zero(mask)));
}

}  // namespace loopkit
