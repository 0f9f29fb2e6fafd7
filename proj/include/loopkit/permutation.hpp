#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "loopkit/element_set.hpp"

namespace loopkit {

/// A bijection on 0..n-1 stored as its image array.
class Permutation {
 public:
  Permutation() = default;
  /// Throws Errc::invalid_argument unless `image` is a bijection.
  explicit Permutation(std::vector<Element> image);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return image_.size(); }
  Element operator()(Element x) const { return image_[x]; }
  std::span<const Element> image() const noexcept { return image_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  /// (this * other)(x) = this(other(x)).
  Permutation operator*(const Permutation& other) const;

  ElementSet apply(const ElementSet& s) const;
  /// Sorted cycle lengths, fixed points included.
  std::vector<std::size_t> cycle_type() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Element> image_;
};

}  // namespace loopkit
