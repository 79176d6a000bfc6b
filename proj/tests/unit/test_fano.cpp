#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "corpus.hpp"
#include "qtoric/error.hpp"
#include "qtoric/fano.hpp"
#include "qtoric/standard_fans.hpp"

namespace qtoric {
namespace {

using testing::corpus;

template <class F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(fans::projective_plane()).tier, Tier::FullClass);
  const ClassTier f1 = classify(fans::blown_up_plane_1());
  EXPECT_EQ(f1.tier, Tier::FullClass);
  ASSERT_EQ(f1.certificates.size(), 2u);
  EXPECT_EQ(f1.certificates[0].coefficient_sum, 1);
  EXPECT_EQ(f1.certificates[0].rhs_ray, std::optional<std::size_t>(3));
  EXPECT_EQ(f1.certificates[0].rhs_multiplicity, 1u);
  EXPECT_EQ(f1.certificates[1].coefficient_sum, 0);
  EXPECT_EQ(classify(fans::hirzebruch(2)).tier, Tier::NotFano);
}

TEST(Classify, WholeCorpusIsInTheClass) {
  for (const auto& [name, fan] : corpus()) EXPECT_EQ(classify(fan).tier, Tier::FullClass) << name;
}

TEST(Classify, HirzebruchSurfacesOfHigherDegreeAreNotFano) {
  for (long a = 2; a <= 4; ++a) EXPECT_EQ(classify(fans::hirzebruch(a)).tier, Tier::NotFano) << a;
  EXPECT_EQ(classify(fans::hirzebruch(1)).tier, Tier::FullClass);
  EXPECT_EQ(classify(fans::hirzebruch(0)).tier, Tier::FullClass);
}

TEST(Classify, BlowingUpTwoPointsOnALineLeavesTheClass) {
  // blow up F1 at the point {D2, D4} on the exceptional curve: the
  // (-2)-curve that appears rules out SubvarietiesFano
  const Fan fan = fans::blow_up(fans::blown_up_plane_1(), {1, 3});
  EXPECT_TRUE(validate(fan).accepted);
  EXPECT_LT(classify(fan).tier, Tier::SubvarietiesFano);
}

TEST(ConditionIII, Examples) {
  EXPECT_TRUE(check_condition_iii(fans::projective_plane()).holds);
  const auto f2 = check_condition_iii(fans::hirzebruch(2));
  EXPECT_FALSE(f2.holds);
  ASSERT_TRUE(f2.witness.has_value());
  EXPECT_EQ(fans::hirzebruch(2).max_cones()[f2.witness->max_cone], (IndexSet{0, 2}));
  EXPECT_EQ(f2.witness->ray, 1u);
  EXPECT_EQ(f2.witness->coords, (std::vector<Integer>{-1, 2}));
}

TEST(ConditionIII, AgreesWithTheTierDictionary) {
  std::vector<Fan> fans_to_check;
  for (const auto& [name, fan] : corpus()) fans_to_check.push_back(fan);
  for (long a = 0; a <= 3; ++a) fans_to_check.push_back(fans::hirzebruch(a));
  fans_to_check.push_back(fans::blow_up(fans::blown_up_plane_1(), {1, 3}));
  fans_to_check.push_back(fans::blow_up(fans::blown_up_plane_3(), {0, 4}));
  for (const auto& fan : fans_to_check) {
    EXPECT_EQ(check_condition_iii(fan).holds, classify(fan).tier >= Tier::SubvarietiesFano);
  }
}

TEST(ExceptionalSets, Examples) {
  const auto f1 = exceptional_sets(fans::blown_up_plane_1());
  ASSERT_EQ(f1.size(), 1u);
  EXPECT_EQ(f1[0].set, (IndexSet{0, 1}));
  EXPECT_EQ(f1[0].exc_divisor, 3u);
  EXPECT_EQ(f1[0].cls, CurveClass::from_ints({1, 1, 0, -1}));
  EXPECT_TRUE(exceptional_sets(fans::projective_plane()).empty());
  EXPECT_TRUE(exceptional_sets(fans::p1_x_p1()).empty());
}

TEST(ExceptionalSets, DefiningRelationHolds) {
  for (const auto& [name, fan] : corpus()) {
    for (const auto& e : exceptional_sets(fan)) {
      EXPECT_EQ(fan.ray_sum(e.set), fan.ray(e.exc_divisor)) << name;
      EXPECT_EQ(rank_of(fan.generators(e.set), fan.dim()), e.set.size()) << name;
      EXPECT_TRUE(is_curve_class(fan, e.cls)) << name;
    }
  }
}

TEST(SpecialExceptionalSets, Examples) {
  const Fan f1 = fans::blown_up_plane_1();
  const auto s = special_exceptional_sets(f1, {0, 3});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].set, (IndexSet{0, 1}));
  EXPECT_TRUE(special_exceptional_sets(f1, {1, 2}).empty());
  EXPECT_TRUE(special_exceptional_sets(fans::projective_plane(), {0, 1}).empty());
  EXPECT_EQ(error_kind([&] { special_exceptional_sets(f1, {0, 1}); }), ErrorKind::NotACone);
}

TEST(SpecialExceptionalSets, ClassesAreLinearlyIndependent) {
  for (const auto& [name, fan] : corpus()) {
    for (const auto& sigma : fan.cones()) {
      const auto specials = special_exceptional_sets(fan, sigma);
      std::vector<LatticeVector> classes;
      for (const auto& e : specials) classes.push_back(e.cls.pairings());
      EXPECT_EQ(rank_of(classes, fan.num_rays()), classes.size()) << name << ' ' << to_string_1based(sigma);
    }
  }
}

TEST(SpecialExceptionalSets, SameConeDisjointnessPattern) {
  for (const auto& [name, fan] : corpus()) {
    for (const auto& mu : fan.max_cones()) {
      const auto specials = special_exceptional_sets(fan, mu);
      for (std::size_t i = 0; i < specials.size(); ++i) {
        for (std::size_t j = i + 1; j < specials.size(); ++j) {
          IndexSet common;
          std::set_intersection(specials[i].set.begin(), specials[i].set.end(), specials[j].set.begin(),
                                specials[j].set.end(), std::back_inserter(common));
          if (specials[i].exc_divisor == specials[j].exc_divisor) {
            EXPECT_FALSE(common.empty()) << name;
          } else {
            EXPECT_TRUE(common.empty()) << name;
          }
        }
      }
    }
  }
}

ExceptionalData synthetic(IndexSet set, std::size_t exc) {
  ExceptionalData e;
  e.set = std::move(set);
  e.exc_divisor = exc;
  return e;
}

TEST(FamilyPredicates, Examples) {
  const auto empty = family_predicates({});
  EXPECT_TRUE(empty.distinct_exc && empty.no_overlaps && empty.no_cycles);

  const std::vector<ExceptionalData> single{synthetic({0, 1}, 2)};
  const auto one = family_predicates(single);
  EXPECT_TRUE(one.distinct_exc && one.no_overlaps && one.no_cycles);

  // a=0, b=1, c=2, d=3: S1 = {a,b} -> c, S2 = {c,d} -> a
  const std::vector<ExceptionalData> cyc{synthetic({0, 1}, 2), synthetic({2, 3}, 0)};
  const auto p = family_predicates(cyc);
  EXPECT_TRUE(p.distinct_exc);
  EXPECT_FALSE(p.no_overlaps);
  EXPECT_FALSE(p.no_cycles);
}

TEST(FamilyPredicates, OverlapWithoutCycle) {
  const std::vector<ExceptionalData> chain{synthetic({0, 1}, 2), synthetic({3, 4}, 0)};
  const auto p = family_predicates(chain);
  EXPECT_FALSE(p.no_overlaps);
  EXPECT_TRUE(p.no_cycles);
  const std::vector<ExceptionalData> same{synthetic({0, 1}, 2), synthetic({3, 4}, 2)};
  EXPECT_FALSE(family_predicates(same).distinct_exc);
}

TEST(FamilyPredicates, NoOverlapsImpliesNoCycles) {
  for (const auto& [name, fan] : corpus()) {
    const auto all = exceptional_sets(fan);
    if (all.size() > 10) continue;
    for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
      std::vector<ExceptionalData> family;
      for (std::size_t i = 0; i < all.size(); ++i)
        if (mask >> i & 1) family.push_back(all[i]);
      const auto p = family_predicates(family);
      if (p.no_overlaps) EXPECT_TRUE(p.no_cycles) << name;
    }
  }
}

TEST(BlowDown, FirstHirzebruchToPlane) {
  const Fan f1 = fans::blown_up_plane_1();
  const Fan down = blow_down(f1, exceptional_sets(f1).front());
  EXPECT_TRUE(is_isomorphic(down, fans::projective_plane()));
}

TEST(BlowDown, TwoPointBlowUpToOnePoint) {
  const Fan bl2 = fans::blown_up_plane_2();
  ExceptionalData e;
  for (const auto& cand : primitive_exceptional_sets(bl2))
    if (cand.set == IndexSet{0, 1} && cand.exc_divisor == 3) e = cand;
  ASSERT_EQ(e.exc_divisor, 3u);
  EXPECT_TRUE(is_isomorphic(blow_down(bl2, e), fans::blown_up_plane_1()));
}

TEST(BlowDown, PlaneHasNothingToBlowDown) {
  const Fan p2 = fans::projective_plane();
  EXPECT_TRUE(primitive_exceptional_sets(p2).empty());
  EXPECT_EQ(error_kind([&] { blow_down(p2, synthetic({0, 1}, 2)); }), ErrorKind::BlowDownInvalid);
}

TEST(BlowDown, RequiresTheClass) {
  const Fan f2 = fans::hirzebruch(2);
  EXPECT_EQ(error_kind([&] { blow_down(f2, synthetic({0, 1}, 2)); }), ErrorKind::NotInClass);
}

TEST(BlowDown, InvertsBlowUp) {
  for (const auto& [name, fan] : corpus()) {
    for (const auto& sigma : fan.cones()) {
      if (sigma.size() < 2) continue;
      const Fan up = fans::blow_up(fan, sigma);
      if (classify(up).tier != Tier::FullClass) continue;
      const std::size_t hat = up.num_rays() - 1;
      const auto candidates = primitive_exceptional_sets(up);
      const auto it = std::find_if(candidates.begin(), candidates.end(),
                                   [&](const ExceptionalData& e) { return e.exc_divisor == hat; });
      ASSERT_NE(it, candidates.end()) << name << ' ' << to_string_1based(sigma);
      EXPECT_EQ(blow_down(up, *it), fan) << name << ' ' << to_string_1based(sigma);
    }
  }
}

TEST(Tower, Examples) {
  const auto f1 = blow_down_tower(fans::blown_up_plane_1());
  ASSERT_EQ(f1.size(), 2u);
  EXPECT_TRUE(is_isomorphic(f1.back().fan, fans::projective_plane()));
  EXPECT_EQ(f1[1].removed_ray, std::optional<std::size_t>(3));

  const auto p2 = blow_down_tower(fans::projective_plane());
  ASSERT_EQ(p2.size(), 1u);
  EXPECT_EQ(p2[0].fan, fans::projective_plane());
}

// Every maximal sequence of blow-downs, by depth-first search.
void all_orders(const Fan& fan, std::vector<std::size_t>& prefix, std::vector<std::size_t> origin,
                std::vector<std::vector<std::size_t>>& out) {
  const auto candidates = primitive_exceptional_sets(fan);
  if (candidates.empty()) {
    out.push_back(prefix);
    return;
  }
  std::set<std::size_t> seen;
  for (const auto& e : candidates) {
    if (!seen.insert(e.exc_divisor).second) continue;
    prefix.push_back(origin[e.exc_divisor]);
    auto next_origin = origin;
    next_origin.erase(next_origin.begin() + static_cast<std::ptrdiff_t>(e.exc_divisor));
    all_orders(blow_down(fan, e), prefix, next_origin, out);
    prefix.pop_back();
  }
}

TEST(Tower, EveryOrderEndsAtAProductOfProjectiveSpaces) {
  for (const auto& [name, fan] : corpus()) {
    std::vector<std::vector<std::size_t>> orders;
    std::vector<std::size_t> prefix;
    std::vector<std::size_t> origin(fan.num_rays());
    for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;
    all_orders(fan, prefix, origin, orders);
    ASSERT_FALSE(orders.empty());
    for (const auto& order : orders) {
      const auto tower = blow_down_tower(fan, order);
      EXPECT_EQ(tower.size(), order.size() + 1) << name;
      for (const auto& stage : tower) EXPECT_EQ(classify(stage.fan).tier, Tier::FullClass) << name;
      EXPECT_TRUE(primitive_exceptional_sets(tower.back().fan).empty()) << name;
      EXPECT_TRUE(is_product_of_projective_spaces(tower.back().fan).is_product) << name;
    }
  }
}

TEST(Tower, HexagonEndpointsDependOnOrder) {
  const Fan bl3 = fans::blown_up_plane_3();
  // contracting rays 5 and 6 ((1,1) and (-1,-1)) leaves the square
  const auto square = blow_down_tower(bl3, std::vector<std::size_t>{4, 5});
  EXPECT_TRUE(is_isomorphic(square.back().fan, fans::p1_x_p1()));
  EXPECT_EQ(square.size(), 3u);
  // contracting 1, 3 and 6 leaves the plane
  const auto plane = blow_down_tower(bl3, std::vector<std::size_t>{0, 2, 5});
  EXPECT_TRUE(is_isomorphic(plane.back().fan, fans::projective_plane()));
  EXPECT_EQ(plane.size(), 4u);
}

TEST(Tower, RejectsRaysThatAreNotExceptional) {
  EXPECT_EQ(error_kind([] { blow_down_tower(fans::blown_up_plane_1(), std::vector<std::size_t>{0}); }),
            ErrorKind::BlowDownInvalid);
}

TEST(ProductTest, Examples) {
  const auto p2 = is_product_of_projective_spaces(fans::projective_plane());
  EXPECT_TRUE(p2.is_product);
  EXPECT_EQ(p2.factor_dims, (std::vector<std::size_t>{2}));
  const auto p1p1 = is_product_of_projective_spaces(fans::p1_x_p1());
  EXPECT_TRUE(p1p1.is_product);
  EXPECT_EQ(p1p1.factor_dims, (std::vector<std::size_t>{1, 1}));
  EXPECT_FALSE(is_product_of_projective_spaces(fans::blown_up_plane_1()).is_product);
  const auto p1p2 = is_product_of_projective_spaces(testing::threefolds()[1].fan);
  EXPECT_TRUE(p1p2.is_product);
}

TEST(ClassInvariants, FullClassRelationsHaveAtMostOneRhsRay) {
  for (const auto& [name, fan] : corpus()) {
    for (const auto& rel : primitive_relations(fan)) {
      EXPECT_LE(rel.rhs_cone.size(), 1u) << name;
      for (const auto& a : rel.rhs_coeffs) EXPECT_EQ(a, 1) << name;
    }
  }
}

TEST(ClassInvariants, RelationsWithRelatedRhsHaveDisjointSets) {
  for (const auto& [name, fan] : corpus()) {
    const auto rels = primitive_relations(fan);
    for (std::size_t i = 0; i < rels.size(); ++i) {
      for (std::size_t j = i + 1; j < rels.size(); ++j) {
        if (rels[i].rhs_cone.empty() || rels[j].rhs_cone.empty()) continue;
        IndexSet joint = rels[i].rhs_cone;
        joint.insert(joint.end(), rels[j].rhs_cone.begin(), rels[j].rhs_cone.end());
        if (!fan.is_cone(make_index_set(joint))) continue;
        IndexSet common;
        std::set_intersection(rels[i].set.begin(), rels[i].set.end(), rels[j].set.begin(), rels[j].set.end(),
                              std::back_inserter(common));
        EXPECT_TRUE(common.empty()) << name;
      }
    }
  }
}

// Every subset of 2..n independent rays whose sum is a ray, by bitmask.
TEST(ExceptionalSets, MatchBruteForceEnumeration) {
  for (const auto& [name, fan] : corpus()) {
    std::vector<std::pair<IndexSet, std::size_t>> expected;
    const std::size_t m = fan.num_rays();
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
      IndexSet s;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) s.push_back(i);
      if (s.size() < 2 || s.size() > fan.dim()) continue;
      if (rank_of(fan.generators(s), fan.dim()) != s.size()) continue;
      const LatticeVector sum = fan.ray_sum(s);
      for (std::size_t r = 0; r < m; ++r)
        if (fan.ray(r) == sum) expected.emplace_back(s, r);
    }
    std::vector<std::pair<IndexSet, std::size_t>> actual;
    for (const auto& e : exceptional_sets(fan)) actual.emplace_back(e.set, e.exc_divisor);
    std::sort(expected.begin(), expected.end());
    std::sort(actual.begin(), actual.end());
    EXPECT_EQ(actual, expected) << name;
  }
}

}  // namespace
}  // namespace qtoric
