#include "loopkit/isomorphism.hpp"

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "loopkit/algebra.hpp"

namespace loopkit {

namespace {

using Invariant = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;

std::vector<Invariant> invariants(const LoopTable& q) {
  std::vector<Invariant> out(q.order());
  for (Element x = 0; x < q.order(); ++x)
    out[x] = {q.translation(Side::left, x).cycle_type(),
              q.translation(Side::right, x).cycle_type()};
  return out;
}

class IsoSearch {
 public:
  IsoSearch(const LoopTable& a, const LoopTable& b)
      : a_(a), b_(b), n_(a.order()) {
    const auto ia = invariants(a), ib = invariants(b);
    candidates_.resize(n_);
    for (Element x = 0; x < n_; ++x)
      for (Element y = 0; y < n_; ++y)
        if (ia[x] == ib[y]) candidates_[x].push_back(y);
    ElementSet span = ElementSet::identity_only(n_);
    for (Element x = 0; x < n_; ++x) {
      if (span.contains(x)) continue;
      gens_.push_back(x);
      span.insert(x);
      span = subloop_closure(a, span);
    }
  }

  std::optional<Permutation> run() {
    for (Element x = 0; x < n_; ++x)
      if (candidates_[x].empty()) return std::nullopt;
    std::vector<Element> fwd(n_, kUnset), bwd(n_, kUnset);
    if (!assign(fwd, bwd, 0, 0)) return std::nullopt;
    if (!search(0, fwd, bwd)) return std::nullopt;
    return Permutation(fwd);
  }

 private:
  static constexpr Element kUnset = ~Element{0};

  bool search(std::size_t i, std::vector<Element>& fwd,
              std::vector<Element>& bwd) {
    if (i == gens_.size())
      return std::find(fwd.begin(), fwd.end(), kUnset) == fwd.end();
    const Element x = gens_[i];
    if (fwd[x] != kUnset) return search(i + 1, fwd, bwd);
    for (Element y : candidates_[x]) {
      if (bwd[y] != kUnset) continue;
      auto f = fwd, g = bwd;
      if (assign(f, g, x, y) && search(i + 1, f, g)) {
        fwd = std::move(f);
        bwd = std::move(g);
        return true;
      }
    }
    return false;
  }

  // Maps x -> y and closes the partial map under products and divisions.
  bool assign(std::vector<Element>& fwd, std::vector<Element>& bwd, Element x,
              Element y) {
    std::vector<Element> work;
    auto set = [&](Element u, Element v) {
      if (fwd[u] != kUnset) return fwd[u] == v;
      if (bwd[v] != kUnset) return false;
      if (std::find(candidates_[u].begin(), candidates_[u].end(), v) ==
          candidates_[u].end())
        return false;
      fwd[u] = v;
      bwd[v] = u;
      work.push_back(u);
      return true;
    };
    if (!set(x, y)) return false;
    while (!work.empty()) {
      const Element u = work.back();
      work.pop_back();
      for (Element v = 0; v < n_; ++v) {
        if (fwd[v] == kUnset) continue;
        const Element fu = fwd[u], fv = fwd[v];
        if (!set(a_.mul(u, v), b_.mul(fu, fv)) ||
            !set(a_.mul(v, u), b_.mul(fv, fu)) ||
            !set(a_.ldiv(u, v), b_.ldiv(fu, fv)) ||
            !set(a_.ldiv(v, u), b_.ldiv(fv, fu)) ||
            !set(a_.rdiv(u, v), b_.rdiv(fu, fv)) ||
            !set(a_.rdiv(v, u), b_.rdiv(fv, fu)))
          return false;
      }
    }
    return true;
  }

  const LoopTable& a_;
  const LoopTable& b_;
  std::size_t n_;
  std::vector<std::vector<Element>> candidates_;
  std::vector<Element> gens_;
};

}  // namespace

std::optional<Permutation> is_isomorphic(const LoopTable& a, const LoopTable& b) {
  if (a.order() != b.order()) return std::nullopt;
  auto iso = IsoSearch(a, b).run();
  if (!iso) return std::nullopt;
  for (Element x = 0; x < a.order(); ++x)
    for (Element y = 0; y < a.order(); ++y)
      if ((*iso)(a.mul(x, y)) != b.mul((*iso)(x), (*iso)(y))) return std::nullopt;
  return iso;
}

std::string canonical_form(const LoopTable& q) {
  const std::size_t n = q.order();
  std::string best;
  for (Element v : q.data()) best += static_cast<char>(v);
  std::vector<Element> sigma(n), pi(n);  // sigma = pi^{-1}
  std::iota(sigma.begin(), sigma.end(), Element{0});
  std::string cand(n * n, '\0');
  do {
    for (Element i = 0; i < n; ++i) pi[sigma[i]] = i;
    // Compare row-major against the current best, stopping at the first
    // larger entry.
    bool smaller = false, larger = false;
    for (Element i = 0; i < n && !larger; ++i) {
      for (Element j = 0; j < n; ++j) {
        const auto v = static_cast<char>(pi[q.mul(sigma[i], sigma[j])]);
        cand[i * n + j] = v;
        if (!smaller) {
          if (static_cast<unsigned char>(v) <
              static_cast<unsigned char>(best[i * n + j]))
            smaller = true;
          else if (v != best[i * n + j]) {
            larger = true;
            break;
          }
        }
      }
    }
    if (smaller) best = cand;
  } while (std::next_permutation(sigma.begin() + 1, sigma.end()));
  return best;
}

LoopTable canonical_table(const LoopTable& q) {
  const std::string form = canonical_form(q);
  std::vector<Element> table(form.size());
  for (std::size_t i = 0; i < form.size(); ++i)
    table[i] = static_cast<unsigned char>(form[i]);
  return LoopTable(q.order(), std::move(table));
}

std::string canonical_id(const LoopTable& q) {
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  const std::size_t n = q.order();
  const std::string form = canonical_form(q);
  std::string id = std::to_string(n) + ":";
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) {
      const auto v = static_cast<unsigned char>(form[i * n + j]);
      if (v < 36)
        id += kDigits[v];
      else
        id += "[" + std::to_string(v) + "]";
    }
  return id;
}

}  // namespace loopkit
