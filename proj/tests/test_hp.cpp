#include <gtest/gtest.h>

#include "loopkit/algebra.hpp"
#include "loopkit/catalog.hpp"
#include "loopkit/error.hpp"
#include "loopkit/hp.hpp"
#include "loopkit/isomorphism.hpp"
#include "loopkit/products.hpp"
#include "support.hpp"

using namespace loopkit;

namespace {

// Odd normal subloops whose quotient is cyclic of 2-power order, straight
// from the coset oracle.
bool oracle_B(const LoopTable& q) {
  for (const auto& n : oracle::normal_subloops(q)) {
    if (n.size() % 2 == 0) continue;
    const auto cs = oracle::cosets(q, n);
    const std::size_t m = cs.classes.size();
    if (m < 2 || (m & (m - 1))) continue;
    if (!oracle::quotient_is_group(q, n, true)) continue;
    // cyclic iff some coset generates all m cosets by left powers
    for (Element g = 0; g < q.order(); ++g) {
      std::set<std::size_t> seen;
      Element x = 0;
      for (std::size_t i = 0; i < m; ++i) {
        seen.insert(cs.of[x]);
        x = q.mul(x, g);
      }
      if (seen.size() == m) return false;
    }
  }
  return true;
}

}  // namespace

TEST(HP, ConditionAExamples) {
  EXPECT_FALSE(check_A(builtin("fig1")).first);
  EXPECT_TRUE(check_A(builtin("cyclic(3)")).first);
  EXPECT_FALSE(check_A(builtin("cyclic(4)")).first);
}

TEST(HP, ConditionBExamples) {
  for (int m = 1; m <= 3; ++m)
    EXPECT_FALSE(check_B_fast(builtin("cyclic(" + std::to_string(1 << m) + ")")));
  EXPECT_TRUE(check_B_fast(builtin("fig2")));
  EXPECT_TRUE(check_B_fast(builtin("cyclic(5)")));
  EXPECT_FALSE(check_B_fast(builtin("sym3")));
  EXPECT_EQ(check_B_witness(builtin("sym3")), ElementSet(6, {0, 3, 4}));
  EXPECT_TRUE(check_B_oracle(builtin("fig1")));
  EXPECT_FALSE(check_B_oracle(builtin("cyclic(6)")));
  EXPECT_TRUE(check_B_oracle(builtin("klein4")));
  for (const auto& q : support::classes(1, 5))
    if (q.order() % 2) EXPECT_TRUE(check_B_fast(q));
}

TEST(HP, NormalSubloopEnumeration) {
  EXPECT_EQ(enumerate_normal_subloops(builtin("cyclic(1)")).size(), 1u);
  EXPECT_EQ(enumerate_normal_subloops(builtin("sym3")),
            (std::vector<ElementSet>{ElementSet::identity_only(6), ElementSet(6, {0, 3, 4}),
                                     ElementSet::all(6)}));
  EXPECT_EQ(enumerate_normal_subloops(builtin("fig2")),
            (std::vector<ElementSet>{ElementSet::identity_only(5), ElementSet::all(5)}));
  for (const auto& q : support::classes(1, 6)) {
    std::vector<ElementSet> expect;
    for (const auto& s : oracle::normal_subloops(q)) expect.push_back(support::to_set(q.order(), s));
    auto got = enumerate_normal_subloops(q);
    std::sort(expect.begin(), expect.end(),
              [](auto& a, auto& b) { return a.mask() < b.mask(); });
    std::sort(got.begin(), got.end(), [](auto& a, auto& b) { return a.mask() < b.mask(); });
    EXPECT_EQ(got, expect);
  }
}

TEST(HP, FastAndOracleConditionBAgree) {
  for (const auto& q : support::classes(1, 6)) {
    const bool fast = check_B_fast(q);
    EXPECT_EQ(fast, check_B_oracle(q));
    EXPECT_EQ(fast, oracle_B(q));
  }
  for (const auto& [name, g] : group_catalog()) {
    EXPECT_EQ(check_B_fast(g), check_B_oracle(g)) << name;
    EXPECT_EQ(check_B_fast(g), oracle_B(g)) << name;
  }
}

TEST(HP, ConditionCExamples) {
  EXPECT_TRUE(check_C(builtin("fig1")).first);
  EXPECT_FALSE(check_C(builtin("cyclic(2)")).first);
  for (const auto& [name, g] : group_catalog())
    EXPECT_EQ(check_C(g).first, product_set(g, 1).achievable().contains(0)) << name;
  const auto [ok, w] = check_C(builtin("fig2"));
  ASSERT_TRUE(ok && w);
  EXPECT_EQ(w->expression.evaluate(builtin("fig2")), w->element);
}

TEST(HP, Sylow) {
  const std::vector<std::pair<std::string, Sylow2>> expect{
      {"cyclic(1)", Sylow2::trivial},     {"cyclic(2)", Sylow2::cyclic},
      {"cyclic(3)", Sylow2::trivial},     {"cyclic(4)", Sylow2::cyclic},
      {"klein4", Sylow2::noncyclic},      {"cyclic(5)", Sylow2::trivial},
      {"cyclic(6)", Sylow2::cyclic},      {"sym3", Sylow2::cyclic},
      {"cyclic(7)", Sylow2::trivial},     {"cyclic(8)", Sylow2::cyclic},
      {"dihedral(4)", Sylow2::noncyclic}, {"quaternion8", Sylow2::noncyclic},
      {"product(cyclic(2),cyclic(4))", Sylow2::noncyclic},
      {"elementary_abelian(2,3)", Sylow2::noncyclic}};
  for (const auto& [name, s] : expect) {
    const LoopTable g = builtin(name);
    EXPECT_EQ(sylow2_status(g), s) << name;
    const std::size_t order = sylow2_subgroup(g).size();
    std::size_t two = 1;
    while (g.order() % (two * 2) == 0) two *= 2;
    EXPECT_EQ(order, two) << name;
  }
  EXPECT_THROW(sylow2_status(builtin("fig2")), Error);
}

TEST(HP, Reports) {
  const HPReport f1 = hp_report(builtin("fig1"));
  EXPECT_FALSE(f1.A);
  EXPECT_TRUE(f1.B);
  EXPECT_TRUE(f1.C);
  EXPECT_TRUE(f1.bc_not_a);
  const HPReport z3 = hp_report(builtin("cyclic(3)"));
  EXPECT_TRUE(z3.A && z3.B && z3.C);
  const HPReport z4 = hp_report(builtin("cyclic(4)"));
  EXPECT_FALSE(z4.A || z4.B || z4.C);
  EXPECT_EQ(z4.p1, ElementSet(4, {2}));
}

TEST(HP, ImplicationsOverSmallLoops) {
  for (const auto& q : support::classes(1, 6)) {
    const HPReport r = hp_report(q);
    EXPECT_EQ(r.B, r.C);
    EXPECT_TRUE(!r.A || r.C);
    EXPECT_EQ(r.p1.is_subset_of(r.derived), r.B);
  }
}

TEST(HP, CounterexampleClassesHaveOrderSix) {
  std::size_t found = 0;
  for (const auto& q : support::classes(1, 6))
    if (hp_report(q).bc_not_a) {
      EXPECT_EQ(q.order(), 6u);
      ++found;
    }
  EXPECT_GT(found, 0u);
  EXPECT_TRUE(hp_report(builtin("fig1")).bc_not_a);
}

TEST(HP, VerifySuite) {
  for (const char* name : {"fig2", "cyclic(1)", "fig1", "sym3"}) {
    const auto claims = verify_theorems(builtin(name));
    EXPECT_FALSE(claims.empty());
    for (const auto& c : claims) EXPECT_TRUE(c.passed) << name << " " << c.id << " " << c.details;
  }
  for (const auto& q : support::classes(1, 6))
    for (const auto& c : verify_theorems(q)) EXPECT_TRUE(c.passed) << c.id << " " << c.details;
}
