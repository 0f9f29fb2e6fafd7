#include "loopkit/products.hpp"

#include <limits>
#include <string>

#include "loopkit/error.hpp"

namespace loopkit {

Multiset::Multiset(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {
  for (auto c : counts_) size_ += c;
}

Multiset Multiset::full(std::size_t n, std::uint32_t k) {
  return Multiset(std::vector<std::uint32_t>(n, k));
}

Multiset Multiset::of(std::size_t n, const std::vector<Element>& elems) {
  std::vector<std::uint32_t> counts(n, 0);
  for (Element e : elems) {
    if (e >= n) throw Error(Errc::invalid_argument, "element out of range");
    ++counts[e];
  }
  return Multiset(std::move(counts));
}

// ---------------------------------------------------------------------------
// Expression

Expression Expression::leaf(Element e) {
  Expression ex;
  ex.nodes_.push_back(Node{e, -1, -1});
  ex.root_ = 0;
  return ex;
}

int Expression::append(const Expression& other) {
  const int offset = static_cast<int>(nodes_.size());
  for (Node nd : other.nodes_) {
    if (nd.left >= 0) {
      nd.left += offset;
      nd.right += offset;
    }
    nodes_.push_back(nd);
  }
  return other.root_ + offset;
}

Expression Expression::product(const Expression& left, const Expression& right) {
  Expression ex;
  ex.nodes_.reserve(left.nodes_.size() + right.nodes_.size() + 1);
  const int l = ex.append(left);
  const int r = ex.append(right);
  ex.nodes_.push_back(Node{0, l, r});
  ex.root_ = static_cast<int>(ex.nodes_.size()) - 1;
  return ex;
}

Element Expression::eval(const LoopTable& q, int node) const {
  const Node& nd = nodes_[node];
  if (nd.left < 0) return nd.leaf;
  return q.mul(eval(q, nd.left), eval(q, nd.right));
}

Element Expression::evaluate(const LoopTable& q) const { return eval(q, root_); }

void Expression::collect(int node, std::vector<Element>& out) const {
  const Node& nd = nodes_[node];
  if (nd.left < 0) {
    out.push_back(nd.leaf);
    return;
  }
  collect(nd.left, out);
  collect(nd.right, out);
}

std::vector<Element> Expression::leaf_sequence() const {
  std::vector<Element> out;
  collect(root_, out);
  return out;
}

Multiset Expression::leaves(std::size_t n) const {
  return Multiset::of(n, leaf_sequence());
}

void Expression::print(int node, std::string& out) const {
  const Node& nd = nodes_[node];
  if (nd.left < 0) {
    out += std::to_string(nd.leaf + 1);
    return;
  }
  out += '(';
  print(nd.left, out);
  out += '*';
  print(nd.right, out);
  out += ')';
}

std::string Expression::to_string() const {
  std::string out;
  print(root_, out);
  return out;
}

// ---------------------------------------------------------------------------
// Set products

ElementSet set_product(const LoopTable& q, const ElementSet& a,
                       const ElementSet& b) {
  ElementSet out(q.order());
  for_each_bit(a.mask(), [&](Element x) {
    for_each_bit(b.mask(), [&](Element y) { out.insert(q.mul(x, y)); });
  });
  return out;
}

namespace {

// Products of element sets given as raw masks. Small orders use lookup
// tables: a full pair table up to order 8, per-element image tables up to
// order 14.
class SetMultiplier {
 public:
  explicit SetMultiplier(const LoopTable& q) : q_(q), n_(q.order()) {
    if (n_ <= 14) {
      const std::size_t masks = std::size_t{1} << n_;
      image_.assign(n_ * masks, 0);
      for (Element a = 0; a < n_; ++a)
        for (std::size_t m = 1; m < masks; ++m) {
          const std::size_t low = m & (m - 1);
          const auto bit = static_cast<Element>(std::countr_zero(m));
          image_[a * masks + m] =
              image_[a * masks + low] | (std::uint64_t{1} << q.mul(a, bit));
        }
    }
    if (n_ <= 8) {
      const std::size_t masks = std::size_t{1} << n_;
      pair_.assign(masks * masks, 0);
      for (std::size_t a = 1; a < masks; ++a) {
        const std::size_t low = a & (a - 1);
        const auto bit = static_cast<Element>(std::countr_zero(a));
        for (std::size_t b = 0; b < masks; ++b)
          pair_[a * masks + b] = pair_[low * masks + b] | image_[bit * masks + b];
      }
    }
  }

  std::uint64_t operator()(std::uint64_t a, std::uint64_t b) const {
    if (!pair_.empty()) return pair_[(a << n_) | b];
    std::uint64_t out = 0;
    if (!image_.empty()) {
      for_each_bit(a, [&](Element x) { out |= image_[(x << n_) | b]; });
      return out;
    }
    for_each_bit(a, [&](Element x) {
      for_each_bit(b, [&](Element y) { out |= std::uint64_t{1} << q_.mul(x, y); });
    });
    return out;
  }

 private:
  const LoopTable& q_;
  std::size_t n_;
  std::vector<std::uint64_t> image_;
  std::vector<std::uint64_t> pair_;
};

struct Split {
  std::uint64_t left = std::numeric_limits<std::uint64_t>::max();
  Element a = 0;  // value of the left factor
  Element b = 0;  // value of the right factor
};

struct Layout {
  std::vector<Element> elems;  // elements with nonzero multiplicity
  std::vector<std::uint32_t> caps;
  std::vector<std::uint64_t> stride;
  std::uint64_t states = 1;
};

Layout make_layout(const Multiset& m, std::uint64_t max_states) {
  Layout lay;
  for (Element e = 0; e < m.universe(); ++e) {
    const std::uint32_t c = m.count(e);
    if (c == 0) continue;
    lay.elems.push_back(e);
    lay.caps.push_back(c);
    lay.stride.push_back(lay.states);
    if (lay.states > max_states / (std::uint64_t{c} + 1))
      throw Error(Errc::budget_exceeded,
                  "sub-multiset state space exceeds the budget of " +
                      std::to_string(max_states) + " states");
    lay.states *= std::uint64_t{c} + 1;
  }
  return lay;
}

// reach[s] = set of values of all ordered, associated products of the
// sub-multiset with mixed-radix index s. Each unordered split {t, s-t} is
// visited once (t <= s-t) and both multiplication orders are taken.
std::vector<std::uint64_t> run_dp(const LoopTable& q, const Layout& lay,
                                  std::vector<Split>* witnesses) {
  const std::size_t n = q.order();
  const std::size_t dims = lay.elems.size();
  const std::uint64_t full = ElementSet::full_mask(n);
  const SetMultiplier prod(q);

  std::vector<std::uint64_t> reach(lay.states, 0);
  if (witnesses) witnesses->assign(lay.states * n, Split{});

  std::vector<std::uint32_t> digit(dims, 0);
  std::vector<std::uint32_t> sub_cap;
  std::vector<std::uint64_t> sub_stride;
  std::vector<std::uint32_t> sub_digit;
  for (std::uint64_t s = 1; s < lay.states; ++s) {
    // Advance the digit vector of s.
    for (std::size_t j = 0; j < dims; ++j) {
      if (++digit[j] <= lay.caps[j]) break;
      digit[j] = 0;
    }
    std::uint32_t size = 0;
    sub_cap.clear();
    sub_stride.clear();
    for (std::size_t j = 0; j < dims; ++j) {
      size += digit[j];
      if (digit[j]) {
        sub_cap.push_back(digit[j]);
        sub_stride.push_back(lay.stride[j]);
      }
    }
    if (size == 1) {
      for (std::size_t j = 0; j < dims; ++j)
        if (digit[j]) reach[s] = std::uint64_t{1} << lay.elems[j];
      continue;
    }

    std::uint64_t mask = 0;
    sub_digit.assign(sub_cap.size(), 0);
    std::uint64_t t = 0;
    for (;;) {
      // Next sub-multiset in increasing index order.
      std::size_t p = 0;
      for (; p < sub_cap.size(); ++p) {
        if (sub_digit[p] < sub_cap[p]) {
          ++sub_digit[p];
          t += sub_stride[p];
          break;
        }
        t -= sub_digit[p] * sub_stride[p];
        sub_digit[p] = 0;
      }
      if (p == sub_cap.size()) break;
      const std::uint64_t u = s - t;
      if (t > u) break;
      const std::uint64_t ra = reach[t], rb = reach[u];
      const std::uint64_t got = prod(ra, rb) | prod(rb, ra);
      if (witnesses && (got & ~mask)) {
        auto record = [&](std::uint64_t left, std::uint64_t lm, std::uint64_t rm) {
          for_each_bit(lm, [&](Element a) {
            for_each_bit(rm, [&](Element b) {
              Split& w = (*witnesses)[s * n + q.mul(a, b)];
              if (w.left == std::numeric_limits<std::uint64_t>::max())
                w = Split{left, a, b};
            });
          });
        };
        record(t, ra, rb);
        record(u, rb, ra);
      }
      mask |= got;
      if (mask == full) break;
    }
    reach[s] = mask;
  }
  return reach;
}

}  // namespace

struct ProductSet::WitnessStore {
  std::size_t n = 0;
  Layout layout;
  std::vector<Split> splits;

  bool singleton(std::uint64_t s, Element& e) const {
    std::uint32_t size = 0;
    for (std::size_t j = 0; j < layout.elems.size(); ++j) {
      const auto d = static_cast<std::uint32_t>((s / layout.stride[j]) %
                                                (layout.caps[j] + 1));
      size += d;
      if (d) e = layout.elems[j];
    }
    return size == 1;
  }

  Expression build(std::uint64_t s, Element target) const {
    Element e = 0;
    if (singleton(s, e)) return Expression::leaf(e);
    const Split& w = splits[s * n + target];
    return Expression::product(build(w.left, w.a), build(s - w.left, w.b));
  }
};

ProductSet product_set_of_multiset(const LoopTable& q, const Multiset& m,
                                   const ProductOptions& opts) {
  if (m.universe() != q.order())
    throw Error(Errc::invalid_argument, "multiset universe does not match loop");
  if (m.empty()) throw Error(Errc::empty_multiset, "multiset is empty");
  Layout lay = make_layout(m, opts.max_states);
  std::vector<Split> splits;
  const auto reach = run_dp(q, lay, opts.witnesses ? &splits : nullptr);

  ProductSet ps;
  ps.multiset_ = m;
  ps.achievable_ = ElementSet(q.order(), reach.back());
  if (opts.witnesses) {
    auto store = std::make_shared<ProductSet::WitnessStore>();
    store->n = q.order();
    store->layout = std::move(lay);
    store->splits = std::move(splits);
    ps.witness_ = std::move(store);
  }
  return ps;
}

std::optional<Expression> ProductSet::witness(Element target) const {
  if (!witness_)
    throw Error(Errc::witnesses_disabled,
                "product set was computed without witnesses");
  if (!achievable_.contains(target)) return std::nullopt;
  return witness_->build(witness_->layout.states - 1, target);
}

std::optional<Expression> witness(const ProductSet& ps, Element target) {
  return ps.witness(target);
}

ProductSet product_set(const LoopTable& q, std::uint32_t k,
                       const ProductOptions& opts) {
  if (k == 0) throw Error(Errc::invalid_argument, "k must be at least 1");
  return product_set_of_multiset(q, Multiset::full(q.order(), k), opts);
}

std::vector<ElementSet> full_product_chain(const LoopTable& q,
                                           std::uint32_t kmax,
                                           std::uint64_t max_states) {
  if (kmax == 0) throw Error(Errc::invalid_argument, "k must be at least 1");
  const Layout lay = make_layout(Multiset::full(q.order(), kmax), max_states);
  const auto reach = run_dp(q, lay, nullptr);
  std::uint64_t diagonal = 0;
  for (auto st : lay.stride) diagonal += st;
  std::vector<ElementSet> chain;
  for (std::uint32_t j = 1; j <= kmax; ++j)
    chain.emplace_back(q.order(), reach[j * diagonal]);
  return chain;
}

OmegaResult p_omega(const LoopTable& q, std::uint64_t max_states) {
  for (std::uint32_t kmax = 4;; kmax += 2) {
    const auto chain = full_product_chain(q, kmax, max_states);
    for (std::uint32_t k = 1; k + 3 <= kmax; ++k) {
      const auto& pk = chain[k - 1];
      if (pk == chain[k + 1] && chain[k] == chain[k + 2]) {
        OmegaResult r;
        r.k = k;
        r.achievable = pk | chain[k];
        r.chain.assign(chain.begin(), chain.begin() + k + 3);
        return r;
      }
    }
  }
}

CosetProfile coset_profile(const LoopTable& q, const ProductSet& ps) {
  return coset_profile(q, ps.achievable());
}

CosetProfile coset_profile(const LoopTable& q, const ElementSet& achievable) {
  CosetProfile prof;
  prof.derived = derived_subloop(q);
  prof.associator = associator_subloop(q);
  const CosetPartition dpart = coset_partition(q, prof.derived);
  const ElementSet hit = dpart.project(achievable);
  if (hit.size() != 1)
    throw Error(Errc::not_in_single_coset,
                "products meet " + std::to_string(hit.size()) +
                    " cosets of the derived subloop");
  prof.derived_coset = dpart.lift(hit);
  const CosetPartition apart = coset_partition(q, prof.associator);
  for (std::size_t c = 0; c < apart.count(); ++c) {
    const ElementSet coset = apart.coset(c);
    if (!coset.is_subset_of(prof.derived_coset)) continue;
    prof.associator_cosets_inside.push_back(coset);
    if (coset.intersects(achievable)) prof.associator_cosets_hit.push_back(coset);
  }
  prof.all_hit =
      prof.associator_cosets_hit.size() == prof.associator_cosets_inside.size();
  return prof;
}

}  // namespace loopkit
