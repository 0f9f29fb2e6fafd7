#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "loopkit/algebra.hpp"
#include "loopkit/catalog.hpp"
#include "loopkit/error.hpp"
#include "loopkit/isomorphism.hpp"
#include "loopkit/loop_table.hpp"
#include "loopkit/permutation.hpp"
#include "support.hpp"

using namespace loopkit;
using support::sym;

namespace {

// sym3 lists the permutations of {0,1,2} lexicographically.
constexpr Element kTransposition = 1;
const ElementSet kA3(6, {0, 3, 4});

Permutation random_identity_fixing(std::size_t n, std::mt19937& rng) {
  std::vector<Element> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::shuffle(img.begin() + 1, img.end(), rng);
  return Permutation(img);
}

}  // namespace

TEST(ElementSet, BasicOperations) {
  ElementSet s(6, {0, 2, 5});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.complement().size(), 3u);
  EXPECT_EQ(s.to_string(), "{1,3,6}");
  EXPECT_TRUE(ElementSet::identity_only(6).is_subset_of(s));
  EXPECT_EQ(ElementSet::all(64).size(), 64u);
}

TEST(Permutation, ComposeAndInvert) {
  Permutation p({1, 2, 0});
  EXPECT_TRUE((p * p.inverse()).is_identity());
  EXPECT_EQ((p * p)(0), 2u);
  EXPECT_EQ(p.cycle_type(), (std::vector<std::size_t>{3}));
  EXPECT_THROW(Permutation({0, 0, 1}), Error);
}

TEST(LoopTable, FromRowsNormalizesAndValidates) {
  const LoopTable fig1 = builtin("fig1");
  EXPECT_EQ(fig1.order(), 6u);
  EXPECT_EQ(fig1.mul(2, 1), 4u);  // 3*2 = 5
  EXPECT_EQ(fig1.mul(1, 3), 2u);  // 2*4 = 3, the bracketed cell of row 2
  for (Element y = 0; y < 6; ++y) EXPECT_EQ(fig1.mul(0, y), y);

  const LoopTable trivial = from_rows({{1}});
  EXPECT_EQ(trivial.order(), 1u);

  try {
    from_rows({{1, 1}, {2, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_latin);
  }
  try {
    from_rows({{1, 2}, {2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ragged_input);
  }
}

TEST(LoopTable, FromRowsRelabelsUnnormalizedSquares) {
  // Latin but with the identity 2 placed first.
  const LoopTable q = from_rows({{2, 1, 3}, {1, 3, 2}, {3, 2, 1}});
  EXPECT_EQ(q.order(), 3u);
  EXPECT_EQ(q.symbol(0), 2);
  for (Element x = 0; x < 3; ++x) {
    EXPECT_EQ(q.mul(0, x), x);
    EXPECT_EQ(q.mul(x, 0), x);
  }
}

TEST(LoopTable, Division) {
  const LoopTable fig1 = builtin("fig1");
  EXPECT_EQ(fig1.ldiv(2, 4), 1u);  // 3*2 = 5
  for (const auto& q : support::classes(1, 5))
    for (Element x = 0; x < q.order(); ++x)
      for (Element z = 0; z < q.order(); ++z) {
        EXPECT_EQ(q.mul(x, q.ldiv(x, z)), z);
        EXPECT_EQ(q.mul(q.rdiv(z, x), x), z);
        EXPECT_EQ(q.ldiv(0, z), z);
      }
}

TEST(LoopTable, Translations) {
  const LoopTable fig1 = builtin("fig1");
  EXPECT_TRUE(fig1.translation(Side::left, 0).is_identity());
  const Permutation l2 = fig1.translation(Side::left, 1);
  const std::vector<Element> expect{1, 0, 3, 2, 5, 4};
  EXPECT_TRUE(std::equal(expect.begin(), expect.end(), l2.image().begin()));
  for (Element x = 0; x < 6; ++x) EXPECT_EQ(fig1.translation(Side::right, x)(0), x);
}

TEST(Algebra, InnerGenerators) {
  for (const auto& name : {"cyclic(4)", "klein4", "cyclic(6)"})
    for (const auto& g : inner_generators(builtin(name))) EXPECT_TRUE(g.is_identity());
  EXPECT_EQ(inner_generators(builtin("cyclic(1)")).size(), 1u);

  const LoopTable fig2 = builtin("fig2");
  bool moved = false;
  for (const auto& g : inner_generators(fig2)) {
    EXPECT_EQ(g(0), 0u);
    moved = moved || !g.is_identity();
  }
  EXPECT_TRUE(moved);
  for (const auto& q : support::classes(1, 6))
    for (const auto& g : inner_generators(q)) EXPECT_EQ(g(0), 0u);
}

TEST(Algebra, Subloops) {
  const LoopTable fig1 = builtin("fig1");
  EXPECT_TRUE(is_subloop(fig1, ElementSet::identity_only(6)));
  EXPECT_TRUE(is_subloop(fig1, ElementSet::all(6)));
  EXPECT_TRUE(is_subloop(fig1, sym(6, {1, 2})));
  EXPECT_FALSE(is_subloop(fig1, sym(6, {1, 4})));

  const LoopTable s3 = builtin("sym3");
  EXPECT_TRUE(is_normal(s3, kA3));
  EXPECT_FALSE(is_normal(s3, ElementSet(6, {0, kTransposition})));
  EXPECT_THROW(is_normal(s3, ElementSet(6, {0, 3})), Error);
  EXPECT_EQ(normal_closure(s3, ElementSet(6, {kTransposition})), ElementSet::all(6));
  EXPECT_EQ(normal_closure(s3, ElementSet(6)), ElementSet::identity_only(6));

  const LoopTable fig2 = builtin("fig2");
  for (Element x = 1; x < 5; ++x)
    EXPECT_EQ(normal_closure(fig2, ElementSet(5, {x})), ElementSet::all(5));
}

TEST(Algebra, NormalityMatchesCosetDefinition) {
  for (const auto& q : support::classes(1, 6)) {
    const auto n = q.order();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 2) {
      const ElementSet s(n, mask);
      const auto elems = s.elements();
      const oracle::Set os(elems.begin(), elems.end());
      if (!is_subloop(q, s)) continue;
      EXPECT_EQ(is_normal(q, s), oracle::normal_by_definition(q, os))
          << serialize_table(q) << s.to_string();
    }
  }
}

TEST(Algebra, AssociatorAndDerivedExamples) {
  EXPECT_EQ(associator_subloop(builtin("sym3")), ElementSet::identity_only(6));
  EXPECT_EQ(associator_subloop(builtin("fig2")), ElementSet::all(5));
  EXPECT_EQ(associator_subloop(builtin("cyclic(1)")), ElementSet::identity_only(1));
  EXPECT_EQ(derived_subloop(builtin("cyclic(6)")), ElementSet::identity_only(6));
  EXPECT_EQ(derived_subloop(builtin("sym3")), kA3);
  EXPECT_EQ(derived_subloop(builtin("fig1")), ElementSet::all(6));
  EXPECT_EQ(derived_subloop(builtin("fig2")), ElementSet::all(5));
}

TEST(Algebra, AssociatorAndDerivedAreMinimal) {
  for (const auto& q : support::classes(1, 6)) {
    const auto n = q.order();
    const ElementSet a = associator_subloop(q), d = derived_subloop(q);
    EXPECT_EQ(a, support::to_set(n, oracle::smallest_normal_with_group_quotient(q, false)));
    EXPECT_EQ(d, support::to_set(n, oracle::smallest_normal_with_group_quotient(q, true)));
    EXPECT_TRUE(a.is_subset_of(d));
    EXPECT_TRUE(is_group(quotient(q, a).loop));
    EXPECT_TRUE(is_abelian_group(quotient(q, d).loop));
  }
}

TEST(Algebra, DerivedOfQuotientByAssociator) {
  for (const auto& q : support::classes(1, 6)) {
    const Quotient qa = quotient(q, associator_subloop(q));
    EXPECT_EQ(derived_subloop(qa.loop), qa.partition.project(derived_subloop(q)));
  }
}

TEST(Algebra, Quotients) {
  const LoopTable z4 = builtin("cyclic(4)");
  EXPECT_TRUE(is_isomorphic(quotient(z4, ElementSet(4, {0, 2})).loop, builtin("cyclic(2)")));
  EXPECT_TRUE(is_isomorphic(quotient(z4, ElementSet::identity_only(4)).loop, z4));
  EXPECT_EQ(quotient(z4, ElementSet::all(4)).loop.order(), 1u);
  try {
    quotient(builtin("sym3"), ElementSet(6, {0, kTransposition}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_normal);
  }
}

TEST(Algebra, InducedMaps) {
  const LoopTable fig2 = builtin("fig2");
  const ElementSet all = ElementSet::all(5);
  EXPECT_TRUE(induced_map(fig2, TranslationWord{}, all).is_identity());
  const LoopTable z4 = builtin("cyclic(4)");
  const ElementSet n(4, {0, 2});
  TranslationWord w{{{Side::left, 1, 1}, {Side::right, 3, -1}}};
  const Permutation m = induced_map(z4, w, n);
  const CosetPartition cp = coset_partition(z4, n);
  for (std::size_t c = 0; c < cp.count(); ++c)
    EXPECT_EQ(m(static_cast<Element>(c)),
              cp.coset_of[w.apply(z4, cp.representatives[c])]);
}

TEST(Algebra, GroupPredicates) {
  EXPECT_FALSE(is_group(builtin("fig2")));
  EXPECT_TRUE(is_group(builtin("cyclic(4)")));
  EXPECT_TRUE(is_abelian_group(builtin("cyclic(4)")));
  EXPECT_TRUE(is_group(builtin("sym3")));
  EXPECT_FALSE(is_abelian_group(builtin("sym3")));
  for (const auto& q : support::classes(1, 6)) EXPECT_EQ(is_group(q), oracle::associative(q));
  EXPECT_EQ(power_order(builtin("quaternion8"), 2), 4u);
}

TEST(Isomorphism, Examples) {
  const LoopTable z4 = builtin("cyclic(4)"), v4 = builtin("klein4");
  EXPECT_TRUE(is_isomorphic(z4, z4));
  EXPECT_FALSE(is_isomorphic(z4, v4));
  EXPECT_NE(canonical_form(z4), canonical_form(v4));
  EXPECT_TRUE(is_isomorphic(builtin("product(cyclic(2),cyclic(3))"), builtin("cyclic(6)")));
  EXPECT_TRUE(is_isomorphic(builtin("dihedral(3)"), builtin("sym3")));

  const LoopTable fig2 = builtin("fig2");
  int matches = 0;
  for (const auto& q : enumerate_loops(5, true))
    if (!is_group(q) && is_isomorphic(q, fig2)) ++matches;
  EXPECT_EQ(matches, 1);
}

TEST(Isomorphism, CanonicalFormIsRelabelingInvariant) {
  std::mt19937 rng(12345);
  for (const auto& q : support::classes(1, 6)) {
    const std::string form = canonical_form(q);
    for (int trial = 0; trial < 3; ++trial) {
      const Permutation p = random_identity_fixing(q.order(), rng);
      const LoopTable r = relabel(q, p);
      EXPECT_EQ(canonical_form(r), form);
      const auto iso = is_isomorphic(q, r);
      ASSERT_TRUE(iso);
      for (Element x = 0; x < q.order(); ++x)
        for (Element y = 0; y < q.order(); ++y)
          EXPECT_EQ((*iso)(q.mul(x, y)), r.mul((*iso)(x), (*iso)(y)));
    }
  }
}

TEST(Isomorphism, AgreesWithCanonicalFormAcrossClasses) {
  const auto reps = support::classes(5, 5);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j)
      EXPECT_EQ(is_isomorphic(reps[i], reps[j]).has_value(), i == j);
}
