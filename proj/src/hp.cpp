#include "loopkit/hp.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "loopkit/algebra.hpp"
#include "loopkit/error.hpp"
#include "loopkit/isomorphism.hpp"

namespace loopkit {

std::pair<bool, std::optional<CellSelection>> check_A(const LoopTable& q,
                                                      const SearchOptions& opts) {
  auto t = find_selection(q, SelectionKind::transversal(), opts);
  return {t.has_value(), std::move(t)};
}

namespace {

// Product of all elements of an abelian group, in index order.
Element product_of_all(const LoopTable& g) {
  Element p = 0;
  for (Element x = 0; x < g.order(); ++x) p = g.mul(p, x);
  return p;
}

}  // namespace

bool check_B_fast(const LoopTable& q) {
  const ElementSet derived = derived_subloop(q);
  if (derived.size() % 2 == 0) return true;
  const Quotient g = quotient(q, derived);
  return product_of_all(g.loop) == 0;
}

std::optional<ElementSet> check_B_witness(const LoopTable& q) {
  const ElementSet derived = derived_subloop(q);
  if (derived.size() % 2 == 0) return std::nullopt;
  const Quotient g = quotient(q, derived);
  if (product_of_all(g.loop) == 0) return std::nullopt;
  // The odd-order elements of the abelian group Q/Q' form its odd part H;
  // the union of the cosets in H has odd size and quotient Q/Q' / H, the
  // (cyclic) Sylow 2-subgroup.
  ElementSet odd(g.loop.order());
  for (Element x = 0; x < g.loop.order(); ++x)
    if (power_order(g.loop, x) % 2 == 1) odd.insert(x);
  return g.partition.lift(odd);
}

std::vector<ElementSet> enumerate_normal_subloops(const LoopTable& q,
                                                  const HPOptions& opts) {
  if (q.order() > opts.max_normal_enum_order)
    throw Error(Errc::budget_exceeded,
                "normal subloop enumeration is limited to order " +
                    std::to_string(opts.max_normal_enum_order));
  const auto gens = inner_generators(q);
  std::vector<ElementSet> found{ElementSet::identity_only(q.order())};
  auto add = [&](const ElementSet& s) {
    if (std::find(found.begin(), found.end(), s) != found.end()) return false;
    found.push_back(s);
    return true;
  };
  for (Element x = 1; x < q.order(); ++x)
    add(normal_closure(q, ElementSet(q.order(), {x}), gens));
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < found.size(); ++i)
      for (std::size_t j = i + 1; j < found.size(); ++j)
        if (add(normal_closure(q, found[i] | found[j], gens))) grew = true;
  }
  std::sort(found.begin(), found.end(), [](const ElementSet& a, const ElementSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.mask() < b.mask();
  });
  return found;
}

bool has_cyclic_two_power_quotient(const LoopTable& q, const ElementSet& n) {
  if (n.size() % 2 == 0) return false;
  const Quotient qt = quotient(q, n);
  const std::size_t m = qt.loop.order();
  if (m < 2 || !std::has_single_bit(m) || !is_group(qt.loop)) return false;
  for (Element x = 0; x < m; ++x)
    if (power_order(qt.loop, x) == m) return true;
  return false;
}

bool check_B_oracle(const LoopTable& q, const HPOptions& opts) {
  for (const auto& n : enumerate_normal_subloops(q, opts))
    if (has_cyclic_two_power_quotient(q, n)) return false;
  return true;
}

std::pair<bool, std::optional<CWitness>> check_C(const LoopTable& q,
                                                 std::uint64_t max_states) {
  const ElementSet assoc = associator_subloop(q);
  ProductOptions popts;
  popts.witnesses = true;
  popts.max_states = max_states;
  const ProductSet ps = product_set(q, 1, popts);
  const ElementSet both = assoc & ps.achievable();
  if (both.empty()) return {false, std::nullopt};
  const Element e = both.first();
  return {true, CWitness{e, *ps.witness(e)}};
}

const char* to_string(Sylow2 s) {
  switch (s) {
    case Sylow2::trivial: return "trivial";
    case Sylow2::cyclic: return "cyclic";
    case Sylow2::noncyclic: return "noncyclic";
  }
  return "?";
}

ElementSet sylow2_subgroup(const LoopTable& g, const HPOptions& opts) {
  if (!is_group(g)) throw Error(Errc::not_a_group, "table is not a group");
  const std::size_t n = g.order();
  if (n > opts.max_sylow_order)
    throw Error(Errc::budget_exceeded, "group order exceeds the Sylow budget");
  const std::size_t target = std::size_t{1} << std::countr_zero(n);
  std::vector<Element> two_elements;
  for (Element x = 1; x < n; ++x)
    if (std::has_single_bit(power_order(g, x))) two_elements.push_back(x);
  ElementSet s = ElementSet::identity_only(n);
  while (s.size() < target) {
    bool grown = false;
    for (Element x : two_elements) {
      if (s.contains(x)) continue;
      ElementSet t = subloop_closure(g, s | ElementSet(n, {x}));
      if (std::has_single_bit(t.size())) {
        s = t;
        grown = true;
        break;
      }
    }
    if (!grown)
      throw Error(Errc::inconsistency_detected,
                  "could not extend a 2-subgroup to Sylow order");
  }
  return s;
}

Sylow2 sylow2_status(const LoopTable& g, const HPOptions& opts) {
  const ElementSet s = sylow2_subgroup(g, opts);
  if (s.size() == 1) return Sylow2::trivial;
  for (Element x : s.elements())
    if (power_order(g, x) == s.size()) return Sylow2::cyclic;
  return Sylow2::noncyclic;
}

HPReport hp_report(const LoopTable& q, const HPOptions& opts) {
  auto fail = [](const std::string& what) {
    throw Error(Errc::inconsistency_detected, what);
  };
  HPReport r;
  r.order = q.order();
  r.id = q.order() <= 8 ? canonical_id(q) : std::string{};
  r.is_group = is_group(q);
  r.associator = associator_subloop(q);
  r.derived = derived_subloop(q);

  auto [a, t] = check_A(q, opts.search);
  r.A = a;
  r.transversal = std::move(t);

  r.B = check_B_fast(q);
  r.b_witness = check_B_witness(q);
  if (r.b_witness.has_value() == r.B) fail("(B) witness disagrees with decider");
  if (r.b_witness && (!is_normal(q, *r.b_witness) ||
                      !has_cyclic_two_power_quotient(q, *r.b_witness)))
    fail("(B) witness does not re-validate");
  if (q.order() <= opts.max_normal_enum_order) {
    r.B_oracle = check_B_oracle(q, opts);
    if (*r.B_oracle != r.B) fail("fast and oracle (B) deciders disagree");
  }

  ProductOptions popts;
  popts.max_states = opts.max_states;
  r.p1 = product_set(q, 1, popts).achievable();
  auto [c, cw] = check_C(q, opts.max_states);
  r.C = c;
  r.c_witness = std::move(cw);
  if (r.c_witness) {
    const auto& w = *r.c_witness;
    if (w.expression.evaluate(q) != w.element ||
        !(w.expression.leaves(q.order()) == Multiset::full(q.order(), 1)) ||
        !r.associator.contains(w.element))
      fail("(C) witness does not re-validate");
  }

  if (r.B != r.C) fail("(B) <=> (C) violated");
  if (r.A && !r.C) fail("(A) => (C) violated");
  r.bc_not_a = r.B && r.C && !r.A;
  return r;
}

// ---------------------------------------------------------------------------
// Theorem suite

namespace {

struct Suite {
  const LoopTable& q;
  const VerifyOptions& opts;
  std::vector<ClaimResult> results;

  void run(const std::string& id, const std::function<std::string()>& body) {
    ClaimResult r{id, true, {}};
    try {
      r.details = body();
      if (r.details.rfind("FAIL", 0) == 0) r.passed = false;
    } catch (const Error& e) {
      if (e.code() == Errc::budget_exceeded) {
        r.details = std::string("skipped: ") + e.what();
      } else {
        r.passed = false;
        r.details = std::string("FAIL: ") + to_string(e.code()) + ": " + e.what();
      }
    }
    results.push_back(std::move(r));
  }
};

std::string fail(const std::string& what) { return "FAIL: " + what; }

// Fixed word alphabets for the induced-translation claims.
std::vector<TranslationLetter> left_alphabet(std::size_t n) {
  const auto a = static_cast<Element>(1 % n), b = static_cast<Element>(n - 1);
  return {{Side::left, a, 1}, {Side::left, b, 1}, {Side::left, a, -1}};
}

std::vector<TranslationLetter> mixed_alphabet(std::size_t n) {
  const auto a = static_cast<Element>(1 % n), b = static_cast<Element>(n - 1);
  return {{Side::left, a, 1}, {Side::right, b, 1}, {Side::left, b, -1},
          {Side::right, a, -1}};
}

// Checks rho_N = L_{rho(1)N} for every word up to max_len over the alphabet.
std::string check_induced(const LoopTable& q, const ElementSet& n,
                          const std::vector<TranslationLetter>& alphabet,
                          std::size_t max_len) {
  const Quotient qt = quotient(q, n);
  const auto& part = qt.partition;
  std::size_t words = 0;
  TranslationWord w;
  std::function<std::string(std::size_t)> rec = [&](std::size_t len) -> std::string {
    ++words;
    const auto one = static_cast<Element>(part.coset_of[w.apply(q, 0)]);
    for (Element x = 0; x < q.order(); ++x) {
      const auto cx = static_cast<Element>(part.coset_of[x]);
      if (part.coset_of[w.apply(q, x)] != qt.loop.mul(one, cx))
        return fail("induced map differs from left translation");
    }
    if (len == max_len) return {};
    for (const auto& letter : alphabet) {
      w.letters.push_back(letter);
      auto res = rec(len + 1);
      w.letters.pop_back();
      if (!res.empty()) return res;
    }
    return {};
  };
  auto res = rec(0);
  if (!res.empty()) return res;
  // Spot-check the library entry point on the longest all-first-letter word.
  TranslationWord probe{std::vector<TranslationLetter>(max_len, alphabet.front())};
  const Permutation induced = induced_map(q, probe, n);
  const auto one = static_cast<Element>(part.coset_of[probe.apply(q, 0)]);
  if (!(induced == qt.loop.translation(Side::left, one)))
    return fail("induced_map disagrees with direct evaluation");
  return std::to_string(words) + " words";
}

}  // namespace

std::vector<ClaimResult> verify_theorems(const LoopTable& q,
                                         const VerifyOptions& opts) {
  Suite s{q, opts, {}};
  const std::size_t n = q.order();
  const ElementSet assoc = associator_subloop(q);
  const ElementSet derived = derived_subloop(q);
  const CosetPartition dpart = coset_partition(q, derived);
  const CosetPartition apart = coset_partition(q, assoc);
  const bool group = is_group(q);
  const bool b = check_B_fast(q);

  // P^1.. from the omega computation when it fits, else a plain chain.
  std::vector<ElementSet> chain;
  std::optional<OmegaResult> omega;
  try {
    omega = p_omega(q, opts.hp.max_states);
    chain = omega->chain;
  } catch (const Error& e) {
    if (e.code() != Errc::budget_exceeded) throw;
    try {
      chain = full_product_chain(q, opts.max_k, opts.hp.max_states);
    } catch (const Error& e2) {
      if (e2.code() != Errc::budget_exceeded) throw;
      chain = full_product_chain(q, 1, opts.hp.max_states);
    }
  }
  const ElementSet& p1 = chain[0];
  auto P = [&](std::size_t k) -> const ElementSet& { return chain[k - 1]; };
  const std::size_t K = chain.size();

  s.run("structure", [&]() -> std::string {
    for (const auto& g : inner_generators(q))
      if (g(0) != 0) return fail("inner generator moves the identity");
    if (!assoc.is_subset_of(derived)) return fail("A(Q) not inside Q'");
    if (!is_group(quotient(q, assoc).loop)) return fail("Q/A(Q) not a group");
    if (!is_abelian_group(quotient(q, derived).loop))
      return fail("Q/Q' not an abelian group");
    return "|A|=" + std::to_string(assoc.size()) +
           " |Q'|=" + std::to_string(derived.size());
  });

  if (n <= opts.hp.max_normal_enum_order) {
    s.run("minimality", [&]() -> std::string {
      ElementSet min_group = ElementSet::all(n), min_abelian = ElementSet::all(n);
      for (const auto& m : enumerate_normal_subloops(q, opts.hp)) {
        const auto qt = quotient(q, m);
        if (is_group(qt.loop)) min_group = min_group & m;
        if (is_abelian_group(qt.loop)) min_abelian = min_abelian & m;
      }
      if (min_group != assoc) return fail("A(Q) is not minimal");
      if (min_abelian != derived) return fail("Q' is not minimal");
      return "ok";
    });
    s.run("b-oracle", [&]() -> std::string {
      return check_B_oracle(q, opts.hp) == b ? "ok"
                                             : fail("fast and oracle (B) differ");
    });
  }

  s.run("pq-1", [&]() -> std::string {
    if (K < 2) return "skipped: chain too short";
    return P(2).contains(0) ? "ok" : fail("1 not in P^2");
  });
  s.run("pq-2", [&]() -> std::string {
    for (std::size_t i = 1; i <= K; ++i)
      for (std::size_t j = 1; i + j <= K; ++j)
        if (!set_product(q, P(i), P(j)).is_subset_of(P(i + j)))
          return fail("P^" + std::to_string(i) + " P^" + std::to_string(j) +
                      " not inside P^" + std::to_string(i + j));
    for (std::size_t k = 1; k < K; ++k)
      if (P(k).size() > P(k + 1).size()) return fail("|P^k| decreased");
    return "k<=" + std::to_string(K);
  });
  s.run("pq-3", [&]() -> std::string {
    for (std::size_t k = 1; k <= K; ++k)
      if (dpart.project(P(k)).size() != 1)
        return fail("P^" + std::to_string(k) + " meets several cosets of Q'");
    return "ok";
  });
  s.run("pq-4", [&]() -> std::string {
    for (std::size_t k = 1; k + 2 <= K; ++k)
      if (!P(k).is_subset_of(P(k + 2))) return fail("P^k not inside P^{k+2}");
    return "ok";
  });
  s.run("pq-5", [&]() -> std::string {
    if (K < 2) return "skipped: chain too short";
    return P(2).is_subset_of(derived) ? "ok" : fail("P^2 not inside Q'");
  });
  s.run("pq-6", [&]() -> std::string {
    const Element a = p1.first();
    return derived.contains(q.mul(a, a)) ? "ok" : fail("a^2 not in Q'");
  });

  s.run("coset-lifting", [&]() -> std::string {
    std::vector<ElementSet> normals;
    if (n <= opts.hp.max_normal_enum_order)
      normals = enumerate_normal_subloops(q, opts.hp);
    else
      normals = {ElementSet::identity_only(n), assoc, derived, ElementSet::all(n)};
    for (const auto& m : normals) {
      const Quotient qt = quotient(q, m);
      const ElementSet pq = product_set(qt.loop, 1).achievable();
      ElementSet members = pq;  // left-to-right products of |N| factors
      for (std::size_t i = 1; i < m.size(); ++i)
        members = set_product(qt.loop, members, pq);
      for (Element c : members.elements())
        if (!p1.intersects(qt.partition.coset(c)))
          return fail("P(Q) misses a member of P(Q/N)^k for N=" + m.to_string());
    }
    return std::to_string(normals.size()) + " normal subloops";
  });

  s.run("dh-loops", [&]() -> std::string {
    for (std::size_t k = 1; k <= std::min<std::size_t>(K, opts.max_k); ++k) {
      const auto prof = coset_profile(q, P(k));
      if (!prof.all_hit)
        return fail("P^" + std::to_string(k) + " misses an A(Q)-coset");
    }
    return "ok";
  });

  s.run("p-in-derived-iff-b", [&]() -> std::string {
    return p1.is_subset_of(derived) == b ? "ok"
                                         : fail("P(Q) inside Q' disagrees with (B)");
  });

  s.run("hp-report", [&]() -> std::string {
    const HPReport r = hp_report(q, opts.hp);
    return std::string("A=") + (r.A ? "1" : "0") + " B=" + (r.B ? "1" : "0") +
           " C=" + (r.C ? "1" : "0");
  });

  s.run("kplex-kprod", [&]() -> std::string {
    std::string found;
    for (std::uint32_t k = 1; k <= opts.max_k; ++k) {
      const auto c = find_selection(q, SelectionKind::regular_row_k_plex(k),
                                    opts.hp.search);
      if (!c) continue;
      const auto cycles = cycle_decompose_regular(q, *c);
      std::size_t cells = 0;
      for (const auto& cyc : cycles) {
        cells += cyc.size();
        if (!is_regular(q, CellSelection(q, cyc)))
          return fail("cycle is not regular");
        if (!assoc.contains(nested_left_product(q, cyc)))
          return fail("cycle product outside A(Q)");
      }
      if (cells != c->size()) return fail("cycles do not partition the selection");
      if (k <= K && !P(k).intersects(assoc))
        return fail("P^" + std::to_string(k) + " misses A(Q)");
      found += " k=" + std::to_string(k);
    }
    return found.empty() ? "no regular row k-plex" : "checked" + found;
  });

  if (!b) {
    s.run("odd-plex", [&]() -> std::string {
      for (std::uint32_t k = 1; k <= opts.max_k; k += 2)
        if (count_selections(q, SelectionKind::regular_row_k_plex(k),
                             opts.hp.search) != 0)
          return fail("regular row odd-plex in a loop failing (B)");
      return "ok";
    });
  }

  s.run("derived-fraction", [&]() -> std::string {
    const Quotient qa = quotient(q, assoc);
    return derived_subloop(qa.loop) == qa.partition.project(derived)
               ? "ok"
               : fail("(Q/A)' differs from Q'/A");
  });

  s.run("pomega", [&]() -> std::string {
    if (!omega) throw Error(Errc::budget_exceeded, "P^omega out of budget");
    const ElementSet& w = omega->achievable;
    if (!is_subloop(q, w)) return fail("P^omega is not a subloop");
    for (std::size_t k = 1; k <= K; ++k)
      if (!P(k).is_subset_of(w)) return fail("P^k escapes P^omega");
    if (is_normal(q, w)) {
      if (w != derived) {
        const ElementSet rest = w & derived.complement();
        const Element a = rest.empty() ? 0 : rest.first();
        const ElementSet acoset = dpart.lift(dpart.project(ElementSet(n, {a})));
        if (rest.empty() || (derived | acoset) != w ||
            !derived.contains(q.mul(a, a)))
          return fail("normal P^omega is neither Q' nor Q' u aQ'");
      }
    }
    return "k=" + std::to_string(omega->k) + " |P^w|=" + std::to_string(w.size());
  });

  s.run("induced-left", [&]() -> std::string {
    return check_induced(q, assoc, left_alphabet(n), opts.max_word_length);
  });
  s.run("induced-mixed", [&]() -> std::string {
    return check_induced(q, derived, mixed_alphabet(n), opts.max_word_length);
  });

  if (group) {
    s.run("dh-groups", [&]() -> std::string {
      const auto prof = coset_profile(q, p1);
      return prof.derived_coset == p1 ? "ok" : fail("P(G) is not a coset of G'");
    });
    s.run("one-in-pg", [&]() -> std::string {
      const auto rrt =
          find_selection(q, SelectionKind::regular_row_k_plex(1), opts.hp.search);
      const bool one = p1.contains(0);
      const bool sylow_ok = sylow2_status(q, opts.hp) != Sylow2::cyclic;
      bool partitioned = false;
      if (rrt) {
        const auto parts = translate_partition(q, *rrt);
        std::vector<bool> covered(n * n, false);
        partitioned = parts.size() == n;
        for (const auto& part : parts) {
          partitioned = partitioned &&
                        satisfies(q, part, SelectionKind::regular_row_k_plex(1));
          for (const Cell& c : part.cells()) {
            partitioned = partitioned && !covered[c.row * n + c.col];
            covered[c.row * n + c.col] = true;
          }
        }
      }
      if (one) {
        ProductOptions po;
        po.witnesses = true;
        const auto expr = product_set(q, 1, po).witness(0);
        const auto t = transversal_from_full_product(q, expr->leaf_sequence());
        if (!satisfies(q, t, SelectionKind::regular_row_k_plex(1)))
          return fail("constructive path did not give a regular row transversal");
      }
      if (rrt.has_value() != partitioned || partitioned != sylow_ok ||
          sylow_ok != one)
        return fail("four-way equivalence broken");
      return one ? "all hold" : "none hold";
    });
  }
  return s.results;
}

}  // namespace loopkit
