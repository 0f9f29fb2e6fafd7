#include "loopkit/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "loopkit/error.hpp"

namespace loopkit {

Permutation::Permutation(std::vector<Element> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (Element x : image_) {
    if (x >= image_.size() || seen[x])
      throw Error(Errc::invalid_argument, "image array is not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Element> img(n);
  std::iota(img.begin(), img.end(), Element{0});
  Permutation p;
  p.image_ = std::move(img);
  return p;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.image_.resize(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i)
    p.image_[image_[i]] = static_cast<Element>(i);
  return p;
}

Permutation Permutation::operator*(const Permutation& other) const {
  Permutation p;
  p.image_.resize(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i)
    p.image_[i] = image_[other.image_[i]];
  return p;
}

ElementSet Permutation::apply(const ElementSet& s) const {
  ElementSet out(s.universe());
  for_each_bit(s.mask(), [&](Element e) { out.insert(image_[e]); });
  return out;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = image_[j]) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

}  // namespace loopkit
