#include <gtest/gtest.h>

#include <set>

#include "loopkit/algebra.hpp"
#include "loopkit/catalog.hpp"
#include "loopkit/error.hpp"
#include "loopkit/hp.hpp"
#include "loopkit/plex.hpp"
#include "loopkit/products.hpp"
#include "support.hpp"

using namespace loopkit;

namespace {

CellSelection fig1_bracketed(const LoopTable& fig1) {
  return CellSelection::from_positions(fig1, {{0, 0}, {1, 3}, {2, 2}, {3, 0}, {4, 5}, {5, 0}});
}

CellSelection whole_table(const LoopTable& q) {
  std::vector<std::pair<Element, Element>> pos;
  for (Element r = 0; r < q.order(); ++r)
    for (Element c = 0; c < q.order(); ++c) pos.emplace_back(r, c);
  return CellSelection::from_positions(q, pos);
}

bool one_per_row(const LoopTable& q, const CellSelection& c) {
  std::vector<int> seen(q.order());
  for (const Cell& cell : c.cells()) ++seen[cell.row];
  for (int s : seen)
    if (s != 1) return false;
  return true;
}

void expect_partition(const LoopTable& g, const std::vector<CellSelection>& parts) {
  ASSERT_EQ(parts.size(), g.order());
  std::set<std::pair<Element, Element>> seen;
  for (const auto& p : parts) {
    EXPECT_TRUE(satisfies(g, p, SelectionKind::regular_row_k_plex(1)));
    for (const Cell& c : p.cells()) EXPECT_TRUE(seen.emplace(c.row, c.col).second);
  }
  EXPECT_EQ(seen.size(), g.order() * g.order());
}

}  // namespace

TEST(Plex, Regularity) {
  const LoopTable fig1 = builtin("fig1");
  const CellSelection b = fig1_bracketed(fig1);
  EXPECT_TRUE(is_regular(fig1, b));
  EXPECT_TRUE(satisfies(fig1, b, SelectionKind::regular_row_k_plex(1)));
  EXPECT_FALSE(satisfies(fig1, b, SelectionKind::transversal()));
  EXPECT_TRUE(is_regular(fig1, CellSelection(fig1, {})));
  EXPECT_TRUE(is_regular(fig1, whole_table(fig1)));
  EXPECT_THROW(CellSelection(fig1, {{1, 1, 1}}), Error);  // 2*2 is 1, not 2
}

TEST(Plex, FindExamples) {
  EXPECT_FALSE(find_selection(builtin("fig1"), SelectionKind::transversal()));
  EXPECT_FALSE(find_selection(builtin("cyclic(4)"), SelectionKind::transversal()));
  const LoopTable z3 = builtin("cyclic(3)");
  const auto t = find_selection(z3, SelectionKind::transversal());
  ASSERT_TRUE(t);
  EXPECT_TRUE(satisfies(z3, *t, SelectionKind::transversal()));
  EXPECT_THROW(find_selection(z3, SelectionKind::k_plex(0)), Error);
}

TEST(Plex, CountExamples) {
  const LoopTable fig1 = builtin("fig1");
  EXPECT_EQ(count_selections(fig1, SelectionKind::regular_row_k_plex(1)), 168u);
  EXPECT_EQ(count_selections(fig1, SelectionKind::transversal()), 0u);
  EXPECT_EQ(count_selections(builtin("cyclic(3)"), SelectionKind::transversal()), 3u);
  EXPECT_EQ(count_selections(builtin("cyclic(5)"), SelectionKind::transversal()), 15u);
  EXPECT_EQ(count_selections(builtin("cyclic(7)"), SelectionKind::transversal()), 133u);
  EXPECT_EQ(count_selections(builtin("cyclic(3)"), SelectionKind::k_plex(3)), 1u);
  EXPECT_EQ(count_selections(builtin("cyclic(3)"), SelectionKind::k_plex(4)), 0u);
}

TEST(Plex, CountsMatchBruteForce) {
  for (const auto& q : support::classes(1, 5)) {
    EXPECT_EQ(count_selections(q, SelectionKind::transversal()),
              oracle::count_selections(q, oracle::Kind::k_plex, 1));
    EXPECT_EQ(count_selections(q, SelectionKind::regular_row_k_plex(1)),
              oracle::count_selections(q, oracle::Kind::regular_row, 1));
    EXPECT_EQ(count_selections(q, SelectionKind::k_plex(2)),
              oracle::count_selections(q, oracle::Kind::k_plex, 2));
    EXPECT_EQ(count_selections(q, SelectionKind::regular_row_k_plex(2)),
              oracle::count_selections(q, oracle::Kind::regular_row, 2));
  }
  for (const auto& q : support::classes(6, 6))
    EXPECT_EQ(count_selections(q, SelectionKind::transversal()),
              oracle::count_selections(q, oracle::Kind::k_plex, 1));
}

TEST(Plex, RowKPlexCountsAreBinomialPowers) {
  // Every choice of k columns per row qualifies.
  EXPECT_EQ(count_selections(builtin("fig2"), SelectionKind::row_k_plex(2)), 100000u);
  EXPECT_EQ(count_selections(builtin("cyclic(3)"), SelectionKind::row_k_plex(1)), 27u);
}

TEST(Plex, EnumerationAgreesWithCount) {
  for (const auto& q : support::classes(4, 5)) {
    for (auto kind : {SelectionKind::transversal(), SelectionKind::regular_row_k_plex(1),
                      SelectionKind::k_plex(2)}) {
      std::set<std::vector<Cell>> seen;
      const auto visited = for_each_selection(q, kind, [&](const CellSelection& c) {
        EXPECT_TRUE(satisfies(q, c, kind));
        EXPECT_TRUE(seen.insert(c.cells()).second);
        return true;
      });
      EXPECT_EQ(visited, seen.size());
      EXPECT_EQ(visited, count_selections(q, kind));
    }
  }
}

TEST(Plex, WorkersDoNotChangeCounts) {
  const LoopTable fig1 = builtin("fig1");
  SearchOptions opts;
  opts.workers = 3;
  EXPECT_EQ(count_selections(fig1, SelectionKind::regular_row_k_plex(1), opts), 168u);
  EXPECT_EQ(count_selections(builtin("cyclic(5)"), SelectionKind::transversal(), opts), 15u);
}

TEST(Plex, BudgetIsEnforced) {
  SearchOptions opts;
  opts.max_states = 10;
  try {
    count_selections(builtin("cyclic(8)"), SelectionKind::regular_row_k_plex(3), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::budget_exceeded);
  }
}

TEST(Plex, CycleDecomposition) {
  const LoopTable fig1 = builtin("fig1");
  const ElementSet a = associator_subloop(fig1);
  const auto cycles = cycle_decompose_regular(fig1, fig1_bracketed(fig1));
  std::size_t cells = 0;
  for (const auto& cyc : cycles) {
    cells += cyc.size();
    EXPECT_TRUE(a.contains(nested_left_product(fig1, cyc)));
  }
  EXPECT_EQ(cells, 6u);

  const LoopTable z5 = builtin("cyclic(5)");
  const CellSelection single(z5, {{0, 3, 3}});
  const auto one = cycle_decompose_regular(z5, single);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(nested_left_product(z5, one[0]), 0u);
  EXPECT_THROW(cycle_decompose_regular(z5, CellSelection(z5, {{1, 1, 2}})), Error);

  for (const auto& q : support::classes(1, 6)) {
    const ElementSet aq = associator_subloop(q);
    for (std::uint32_t k = 1; k <= 2; ++k) {
      const auto found = find_selection(q, SelectionKind::k_plex(k));
      if (!found) continue;
      for (const auto& cyc : cycle_decompose_regular(q, *found))
        EXPECT_TRUE(aq.contains(nested_left_product(q, cyc)));
    }
  }
}

TEST(Plex, RegularSetFromUnitProduct) {
  const LoopTable z3 = builtin("cyclic(3)");
  EXPECT_EQ(regular_set_from_unit_product(z3, {1, 2}).cells(),
            (std::vector<Cell>{{1, 2, 0}, {2, 0, 2}}));
  EXPECT_EQ(regular_set_from_unit_product(z3, {0}).cells(), (std::vector<Cell>{{0, 0, 0}}));
  const LoopTable s3 = builtin("sym3");
  EXPECT_EQ(regular_set_from_unit_product(s3, {1, 1}).cells(),
            (std::vector<Cell>{{1, 0, 1}, {1, 1, 0}}));
  try {
    regular_set_from_unit_product(z3, {1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::product_not_identity);
  }
}

TEST(Plex, UnitBlocks) {
  const LoopTable z3 = builtin("cyclic(3)");
  EXPECT_EQ(unit_product_blocks(z3, {0, 1, 2}),
            (std::vector<std::vector<Element>>{{0}, {1, 2}}));
}

TEST(Plex, TransversalFromFullProduct) {
  const LoopTable z3 = builtin("cyclic(3)");
  const CellSelection t = transversal_from_full_product(z3, {0, 1, 2});
  EXPECT_TRUE(satisfies(z3, t, SelectionKind::regular_row_k_plex(1)));
  EXPECT_TRUE(one_per_row(z3, t));
  expect_partition(z3, translate_partition(z3, t));

  const LoopTable trivial = builtin("cyclic(1)");
  const CellSelection t1 = transversal_from_full_product(trivial, {0});
  EXPECT_EQ(t1.cells(), (std::vector<Cell>{{0, 0, 0}}));
  EXPECT_EQ(translate_partition(trivial, t1).size(), 1u);

  const LoopTable v4 = builtin("klein4");
  std::vector<Element> ord{0, 1, 2, 3};
  do {
    const CellSelection t4 = transversal_from_full_product(v4, ord);
    EXPECT_TRUE(one_per_row(v4, t4));
    expect_partition(v4, translate_partition(v4, t4));
  } while (std::next_permutation(ord.begin(), ord.end()));

  EXPECT_THROW(transversal_from_full_product(builtin("cyclic(4)"), {0, 1, 2, 3}), Error);
  EXPECT_THROW(transversal_from_full_product(builtin("fig2"), {0, 1, 2, 3, 4}), Error);
}

TEST(Plex, ConstructionFromProductWitnessOverCatalog) {
  for (const auto& [name, g] : group_catalog()) {
    const ProductSet ps = product_set(g, 1, ProductOptions{true});
    const auto w = ps.witness(0);
    if (!w) continue;
    const CellSelection t = transversal_from_full_product(g, w->leaf_sequence());
    EXPECT_TRUE(one_per_row(g, t)) << name;
    expect_partition(g, translate_partition(g, t));
  }
}
