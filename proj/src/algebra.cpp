#include "loopkit/algebra.hpp"

#include <algorithm>
#include <cassert>

#include "loopkit/error.hpp"

namespace loopkit {

Element TranslationWord::apply(const LoopTable& q, Element z) const {
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const Element x = it->element;
    if (it->side == Side::left)
      z = it->exponent > 0 ? q.mul(x, z) : q.ldiv(x, z);
    else
      z = it->exponent > 0 ? q.mul(z, x) : q.rdiv(z, x);
  }
  return z;
}

bool TranslationWord::left_only() const {
  return std::all_of(letters.begin(), letters.end(),
                     [](const TranslationLetter& l) { return l.side == Side::left; });
}

ElementSet CosetPartition::coset(std::size_t index) const {
  ElementSet out(coset_of.size());
  for (Element x = 0; x < coset_of.size(); ++x)
    if (coset_of[x] == index) out.insert(x);
  return out;
}

ElementSet CosetPartition::project(const ElementSet& s) const {
  ElementSet out(count());
  for_each_bit(s.mask(), [&](Element x) {
    out.insert(static_cast<Element>(coset_of[x]));
  });
  return out;
}

ElementSet CosetPartition::lift(const ElementSet& cosets) const {
  ElementSet out(coset_of.size());
  for (Element x = 0; x < coset_of.size(); ++x)
    if (cosets.contains(static_cast<Element>(coset_of[x]))) out.insert(x);
  return out;
}

std::vector<Permutation> inner_generators(const LoopTable& q) {
  const std::size_t n = q.order();
  std::vector<Permutation> gens;
  gens.reserve(2 * n * n + n);
  std::vector<Element> img(n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      // L(x,y) = L_{yx}^{-1} L_y L_x
      const Element yx = q.mul(y, x);
      for (Element z = 0; z < n; ++z) img[z] = q.ldiv(yx, q.mul(y, q.mul(x, z)));
      gens.emplace_back(img);
      // R(x,y) = R_{xy}^{-1} R_y R_x
      const Element xy = q.mul(x, y);
      for (Element z = 0; z < n; ++z) img[z] = q.rdiv(q.mul(q.mul(z, x), y), xy);
      gens.emplace_back(img);
    }
    // T(x) = R_x^{-1} L_x
    for (Element z = 0; z < n; ++z) img[z] = q.rdiv(q.mul(x, z), x);
    gens.emplace_back(img);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

bool is_subloop(const LoopTable& q, const ElementSet& s) {
  if (!s.contains(0)) return false;
  const auto elems = s.elements();
  for (Element a : elems)
    for (Element b : elems)
      if (!s.contains(q.mul(a, b)) || !s.contains(q.ldiv(a, b)) ||
          !s.contains(q.rdiv(a, b)))
        return false;
  return true;
}

bool is_normal(const LoopTable& q, const ElementSet& s) {
  return is_normal(q, s, inner_generators(q));
}

bool is_normal(const LoopTable& q, const ElementSet& s,
               const std::vector<Permutation>& generators) {
  if (!is_subloop(q, s))
    throw Error(Errc::not_a_subloop, s.to_string() + " is not a subloop");
  return std::all_of(generators.begin(), generators.end(),
                     [&](const Permutation& g) { return g.apply(s) == s; });
}

ElementSet subloop_closure(const LoopTable& q, const ElementSet& s) {
  ElementSet cur = s;
  cur.insert(0);
  for (;;) {
    ElementSet next = cur;
    const auto elems = cur.elements();
    for (Element a : elems)
      for (Element b : elems) {
        next.insert(q.mul(a, b));
        next.insert(q.ldiv(a, b));
        next.insert(q.rdiv(a, b));
      }
    if (next == cur) return cur;
    cur = next;
  }
}

ElementSet normal_closure(const LoopTable& q, const ElementSet& s) {
  return normal_closure(q, s, inner_generators(q));
}

ElementSet normal_closure(const LoopTable& q, const ElementSet& s,
                          const std::vector<Permutation>& generators) {
  ElementSet cur = subloop_closure(q, s);
  for (;;) {
    ElementSet next = cur;
    for (const auto& g : generators) next |= g.apply(cur);
    if (next == cur) return cur;
    cur = subloop_closure(q, next);
  }
}

Element associator(const LoopTable& q, Element x, Element y, Element z) {
  return q.ldiv(q.mul(x, q.mul(y, z)), q.mul(q.mul(x, y), z));
}

Element commutator(const LoopTable& q, Element x, Element y) {
  return q.ldiv(q.mul(y, x), q.mul(x, y));
}

namespace {

ElementSet associator_elements(const LoopTable& q) {
  const std::size_t n = q.order();
  ElementSet out(n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) out.insert(associator(q, x, y, z));
  return out;
}

ElementSet commutator_elements(const LoopTable& q) {
  const std::size_t n = q.order();
  ElementSet out(n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) out.insert(commutator(q, x, y));
  return out;
}

// Grows the normal closure of the seeds until the quotient passes the test,
// reseeding with the quotient's own associators (and commutators) lifted
// back. Each round strictly enlarges the subloop, so at most n rounds run.
ElementSet quotient_fixpoint(const LoopTable& q, bool abelian) {
  const auto gens = inner_generators(q);
  ElementSet seeds = associator_elements(q);
  if (abelian) seeds |= commutator_elements(q);
  ElementSet k = normal_closure(q, seeds, gens);
  for (std::size_t round = 0; round <= q.order(); ++round) {
    Quotient qt = quotient(q, k);
    if (abelian ? is_abelian_group(qt.loop) : is_group(qt.loop)) return k;
    ElementSet extra = associator_elements(qt.loop);
    if (abelian) extra |= commutator_elements(qt.loop);
    ElementSet grown = normal_closure(q, k | qt.partition.lift(extra), gens);
    assert(grown != k);
    k = grown;
  }
  return k;
}

}  // namespace

ElementSet associator_subloop(const LoopTable& q) {
  return quotient_fixpoint(q, false);
}

ElementSet derived_subloop(const LoopTable& q) {
  return quotient_fixpoint(q, true);
}

CosetPartition coset_partition(const LoopTable& q, const ElementSet& n) {
  const std::size_t order = q.order();
  CosetPartition p;
  p.subloop = n;
  p.coset_of.assign(order, order);
  const auto members = n.elements();
  for (Element x = 0; x < order; ++x) {
    if (p.coset_of[x] != order) continue;
    const std::size_t idx = p.representatives.size();
    p.representatives.push_back(x);
    for (Element m : members) {
      const Element y = q.mul(x, m);
      if (p.coset_of[y] != order && p.coset_of[y] != idx)
        throw Error(Errc::not_normal,
                    n.to_string() + ": cosets do not partition the loop");
      p.coset_of[y] = idx;
    }
  }
  return p;
}

Quotient quotient(const LoopTable& q, const ElementSet& n) {
  if (!is_subloop(q, n) || !is_normal(q, n))
    throw Error(Errc::not_normal, n.to_string() + " is not a normal subloop");
  CosetPartition part = coset_partition(q, n);
  const std::size_t m = part.count();
  std::vector<Element> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      table[i * m + j] = static_cast<Element>(
          part.coset_of[q.mul(part.representatives[i], part.representatives[j])]);
  // Well-definedness over all representatives.
  for (Element a = 0; a < q.order(); ++a)
    for (Element b = 0; b < q.order(); ++b)
      if (part.coset_of[q.mul(a, b)] !=
          table[part.coset_of[a] * m + part.coset_of[b]])
        throw Error(Errc::not_normal,
                    "coset multiplication is not well defined");
  return Quotient{LoopTable(m, std::move(table)), std::move(part)};
}

Permutation induced_map(const LoopTable& q, const TranslationWord& w,
                        const ElementSet& n) {
  for (const auto& l : w.letters)
    if (l.element >= q.order() || (l.exponent != 1 && l.exponent != -1))
      throw Error(Errc::invalid_argument, "malformed translation word");
  if (!is_subloop(q, n) || !is_normal(q, n))
    throw Error(Errc::not_normal, n.to_string() + " is not a normal subloop");
  const CosetPartition part = coset_partition(q, n);
  const std::size_t m = part.count();
  std::vector<Element> img(m, static_cast<Element>(m));
  for (Element x = 0; x < q.order(); ++x) {
    const std::size_t from = part.coset_of[x];
    const auto to = static_cast<Element>(part.coset_of[w.apply(q, x)]);
    assert(img[from] == m || img[from] == to);
    img[from] = to;
  }
  return Permutation(std::move(img));
}

bool is_group(const LoopTable& q) {
  const std::size_t n = q.order();
  for (Element x = 1; x < n; ++x)
    for (Element y = 1; y < n; ++y) {
      const Element xy = q.mul(x, y);
      for (Element z = 1; z < n; ++z)
        if (q.mul(xy, z) != q.mul(x, q.mul(y, z))) return false;
    }
  return true;
}

bool is_commutative(const LoopTable& q) {
  const std::size_t n = q.order();
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y)
      if (q.mul(x, y) != q.mul(y, x)) return false;
  return true;
}

bool is_abelian_group(const LoopTable& q) {
  return is_commutative(q) && is_group(q);
}

std::size_t power_order(const LoopTable& q, Element x) {
  Element p = x;
  for (std::size_t m = 1; m <= q.order(); ++m) {
    if (p == 0) return m;
    p = q.mul(p, x);
  }
  return 0;
}

}  // namespace loopkit
