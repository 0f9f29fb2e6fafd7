#include <gtest/gtest.h>

#include "loopkit/algebra.hpp"
#include "loopkit/catalog.hpp"
#include "loopkit/error.hpp"
#include "loopkit/products.hpp"
#include "support.hpp"

using namespace loopkit;
using support::sym;

namespace {

void expect_valid_witness(const LoopTable& q, const ProductSet& ps, Element target) {
  const auto w = ps.witness(target);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->evaluate(q), target);
  EXPECT_EQ(w->leaves(q.order()), ps.multiset());
}

}  // namespace

TEST(Products, MultisetExamples) {
  const LoopTable fig2 = builtin("fig2");
  EXPECT_EQ(product_set_of_multiset(fig2, Multiset::full(5, 1)).achievable(),
            sym(5, {2, 3, 4, 5}));
  for (Element x = 0; x < 5; ++x)
    EXPECT_EQ(product_set_of_multiset(fig2, Multiset::of(5, {x})).achievable(),
              ElementSet(5, {x}));
  const LoopTable z3 = builtin("cyclic(3)");
  EXPECT_EQ(product_set_of_multiset(z3, Multiset::of(3, {0, 1, 2})).achievable(),
            ElementSet::identity_only(3));
  EXPECT_THROW(product_set_of_multiset(z3, Multiset::of(3, {})), Error);
}

TEST(Products, FullProductExamples) {
  EXPECT_EQ(product_set(builtin("fig1"), 1).achievable(), ElementSet::all(6));
  EXPECT_EQ(product_set(builtin("cyclic(2)"), 1).achievable(), ElementSet(2, {1}));
  EXPECT_EQ(product_set(builtin("cyclic(4)"), 1).achievable(), ElementSet(4, {2}));
  EXPECT_THROW(product_set(builtin("cyclic(2)"), 0), Error);
  try {
    product_set(builtin("cyclic(8)"), 8, ProductOptions{false, 1000});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::budget_exceeded);
  }
}

TEST(Products, MatchesNaiveEnumeration) {
  for (const auto& q : support::classes(1, 5)) {
    EXPECT_EQ(product_set(q, 1).achievable(),
              support::to_set(q.order(), oracle::full_product_set(q, 1)));
  }
  for (const auto& q : support::classes(1, 4)) {
    EXPECT_EQ(product_set(q, 2).achievable(),
              support::to_set(q.order(), oracle::full_product_set(q, 2)));
  }
}

TEST(Products, ArbitraryMultisetsMatchNaiveEnumeration) {
  const LoopTable fig2 = builtin("fig2");
  const std::vector<std::vector<Element>> cases{
      {1, 1}, {1, 2, 2}, {3, 3, 3, 4}, {0, 1, 1, 2, 4}, {2, 2, 3, 3, 4, 4}};
  for (const auto& items : cases)
    EXPECT_EQ(product_set_of_multiset(fig2, Multiset::of(5, items)).achievable(),
              support::to_set(5, oracle::all_products(fig2, items)));
}

TEST(Products, ChainAgreesWithSingleProducts) {
  for (const auto& q : support::classes(1, 5)) {
    const auto chain = full_product_chain(q, 3);
    ASSERT_EQ(chain.size(), 3u);
    for (std::uint32_t k = 1; k <= 3; ++k)
      EXPECT_EQ(chain[k - 1], product_set(q, k).achievable());
  }
}

TEST(Products, Witnesses) {
  const LoopTable fig2 = builtin("fig2");
  const ProductSet ps = product_set(fig2, 1, ProductOptions{true});
  for (Element t = 1; t < 5; ++t) expect_valid_witness(fig2, ps, t);
  EXPECT_FALSE(ps.witness(0));
  EXPECT_THROW(product_set(fig2, 1).witness(1), Error);
  const ProductSet single = product_set_of_multiset(fig2, Multiset::of(5, {3}), {true});
  EXPECT_TRUE(single.witness(3)->is_leaf());

  for (const auto& q : support::classes(1, 6)) {
    const ProductSet p2 = product_set(q, 2, ProductOptions{true});
    for (Element t : p2.achievable().elements()) expect_valid_witness(q, p2, t);
  }
}

TEST(Products, ExpressionPrinting) {
  const Expression e = Expression::product(
      Expression::product(Expression::leaf(1), Expression::leaf(2)), Expression::leaf(3));
  EXPECT_EQ(e.to_string(), "((2*3)*4)");
  EXPECT_EQ(e.leaf_sequence(), (std::vector<Element>{1, 2, 3}));
}

// 1 in P^2, P^i P^j in P^(i+j), monotone sizes, one Q' coset, P^k in P^(k+2),
// P in aQ' with a^2 in Q'.
TEST(Products, ChainProperties) {
  for (const auto& q : support::classes(1, 6)) {
    const auto chain = full_product_chain(q, 4);
    const ElementSet d = derived_subloop(q);
    const CosetPartition cp = coset_partition(q, d);
    EXPECT_TRUE(chain[1].contains(0));
    for (std::size_t i = 1; i <= 4; ++i)
      for (std::size_t j = 1; i + j <= 4; ++j)
        EXPECT_TRUE(set_product(q, chain[i - 1], chain[j - 1]).is_subset_of(chain[i + j - 1]));
    for (std::size_t k = 1; k < 4; ++k) {
      EXPECT_LE(chain[k - 1].size(), chain[k].size());
      EXPECT_EQ(cp.project(chain[k - 1]).size(), 1u);
    }
    EXPECT_TRUE(chain[0].is_subset_of(chain[2]));
    EXPECT_TRUE(chain[1].is_subset_of(chain[3]));
    EXPECT_TRUE(chain[1].is_subset_of(d));
    const Element a = chain[0].first();
    EXPECT_TRUE(d.contains(q.mul(a, a)));
  }
}

TEST(Products, POmega) {
  const auto z3 = p_omega(builtin("cyclic(3)"));
  EXPECT_EQ(z3.achievable, ElementSet::identity_only(3));
  EXPECT_EQ(p_omega(builtin("fig2")).achievable, ElementSet::all(5));
  for (const auto& [name, g] : group_catalog()) {
    const auto om = p_omega(g);
    const ElementSet d = derived_subloop(g);
    const ElementSet p = product_set(g, 1).achievable();
    EXPECT_EQ(om.achievable, d | p) << name;
    EXPECT_TRUE(is_subloop(g, om.achievable)) << name;
  }
  for (const auto& q : support::classes(1, 6)) {
    const auto om = p_omega(q);
    EXPECT_EQ(om.chain[om.k - 1], om.chain[om.k + 1]);
    EXPECT_EQ(om.chain[om.k], om.chain[om.k + 2]);
    EXPECT_TRUE(is_subloop(q, om.achievable));
  }
}

TEST(Products, CosetProfiles) {
  for (const auto& [name, g] : group_catalog()) {
    const CosetProfile cp = coset_profile(g, product_set(g, 1));
    EXPECT_EQ(cp.derived_coset, product_set(g, 1).achievable()) << name;
    EXPECT_TRUE(cp.all_hit) << name;
  }
  const CosetProfile f1 = coset_profile(builtin("fig1"), product_set(builtin("fig1"), 1));
  EXPECT_EQ(f1.derived_coset, ElementSet::all(6));
  EXPECT_TRUE(f1.all_hit);
  for (const auto& q : support::classes(1, 6)) {
    EXPECT_EQ(coset_profile(q, product_set(q, 2)).derived_coset, derived_subloop(q));
    EXPECT_TRUE(coset_profile(q, product_set(q, 1)).all_hit);
  }
}
