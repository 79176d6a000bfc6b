#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "qtoric/error.hpp"
#include "qtoric/quantum.hpp"
#include "qtoric/standard_fans.hpp"

namespace qtoric {
namespace {

using testing::surfaces;

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

// Surfaces plus P3 and P3 blown up along a line.
std::vector<testing::NamedFan> sweep_corpus() {
  auto all = surfaces();
  const auto three = testing::threefolds();
  all.push_back(three[0]);
  all.push_back(three[3]);
  return all;
}

CohomologyClass c_unit(const QuantumRing& ring) { return ring.cohomology().unit(); }

TEST(Presentation, ProjectivePlane) {
  const Presentation p = presentation(fans::projective_plane());
  EXPECT_EQ(p.num_generators, 3u);
  EXPECT_EQ(p.linear_relations.size(), 2u);
  ASSERT_EQ(p.deformed_relations.size(), 1u);
  EXPECT_EQ(p.deformed_relations[0].set, (IndexSet{0, 1, 2}));
  EXPECT_TRUE(p.deformed_relations[0].rhs.empty());
  EXPECT_EQ(p.deformed_relations[0].beta, CurveClass::from_ints({1, 1, 1}));
}

TEST(Presentation, BlownUpPlaneAndQuadric) {
  const Presentation f1 = presentation(fans::blown_up_plane_1());
  ASSERT_EQ(f1.deformed_relations.size(), 2u);
  EXPECT_EQ(f1.deformed_relations[0].set, (IndexSet{0, 1}));
  EXPECT_EQ(f1.deformed_relations[0].rhs, (IndexSet{3}));
  EXPECT_EQ(f1.deformed_relations[0].beta, CurveClass::from_ints({1, 1, 0, -1}));
  EXPECT_EQ(f1.deformed_relations[1].set, (IndexSet{2, 3}));
  EXPECT_EQ(f1.deformed_relations[1].beta, CurveClass::from_ints({0, 0, 1, 1}));

  const Presentation q = presentation(fans::p1_x_p1());
  ASSERT_EQ(q.deformed_relations.size(), 2u);
  EXPECT_EQ(q.deformed_relations[0].beta, CurveClass::from_ints({1, 1, 0, 0}));
  EXPECT_EQ(q.deformed_relations[1].beta, CurveClass::from_ints({0, 0, 1, 1}));
}

TEST(Presentation, RequiresFano) {
  EXPECT_EQ(error_kind([] { presentation(fans::hirzebruch(2)); }), ErrorKind::NotFano);
  EXPECT_EQ(error_kind([] { QuantumRing ring(fans::hirzebruch(2)); }), ErrorKind::NotFano);
}

TEST(QuantumRing, ProjectivePlanePowers) {
  const QuantumRing ring(fans::projective_plane());
  const CurveClass line = CurveClass::from_ints({1, 1, 1});
  const auto h = ring.cohomology().stratum_class({0});
  EXPECT_EQ(ring.reduce_monomial({0, 0, 0}), QuantumClass::term(line, ring.cohomology().unit()));
  EXPECT_EQ(ring.reduce_monomial({0, 1, 2}), QuantumClass::term(line, ring.cohomology().unit()));
  EXPECT_EQ(ring.reduce_monomial({0, 0, 0, 0}), QuantumClass::term(line, h));
  EXPECT_EQ(ring.reduce_monomial({0, 1}), QuantumClass::classical(3, ring.cohomology().point()));
  const auto pt = ring.cohomology().point();
  EXPECT_EQ(ring.gw3(pt, pt, h, line), 1);
  EXPECT_EQ(ring.gw3(pt, pt, pt, line), 0);
  EXPECT_EQ(ring.gw3(h, h, pt, CurveClass(3)), 0);
  EXPECT_EQ(ring.gw3(h, h, c_unit(ring), CurveClass(3)), 1);
  EXPECT_EQ(ring.gw3(h, h, h, CurveClass(3)), 0);
}

TEST(QuantumRing, QuadricProducts) {
  const QuantumRing ring(fans::p1_x_p1());
  const auto& c = ring.cohomology();
  EXPECT_EQ(ring.reduce_monomial({0, 1}), QuantumClass::term(CurveClass::from_ints({1, 1, 0, 0}), c.unit()));
  EXPECT_EQ(ring.reduce_monomial({0, 0}), QuantumClass::term(CurveClass::from_ints({1, 1, 0, 0}), c.unit()));
  EXPECT_EQ(ring.reduce_monomial({0, 2}), QuantumClass::classical(4, c.point()));
}

TEST(QuantumRing, BlownUpPlaneProducts) {
  const QuantumRing ring(fans::blown_up_plane_1());
  const auto& c = ring.cohomology();
  EXPECT_EQ(ring.reduce_monomial({0, 1}), QuantumClass::term(CurveClass::from_ints({1, 1, 0, -1}), c.stratum_class({3})));
  EXPECT_EQ(ring.reduce_monomial({2, 3}), QuantumClass::term(CurveClass::from_ints({0, 0, 1, 1}), c.unit()));
  // one rational curve in the class of E = D4, and E.E = -1 on each marked point
  EXPECT_EQ(ring.gw3(c.stratum_class({3}), c.stratum_class({3}), c.stratum_class({3}),
                     CurveClass::from_ints({1, 1, 0, -1})),
            -1);
}

TEST(QuantumRing, NonEffectiveClassesAreRejected) {
  const QuantumRing ring(fans::projective_plane());
  const auto pt = ring.cohomology().point();
  EXPECT_EQ(error_kind([&] { ring.gw3(pt, pt, pt, CurveClass::from_ints({-1, -1, -1})); }), ErrorKind::NotEffective);
  EXPECT_NO_THROW(ring.require_effective(CurveClass::from_ints({2, 2, 2})));
}

TEST(QuantumRing, RejectsSurfacesWithMinusTwoCurves) {
  const Fan fan = fans::blow_up(fans::blown_up_plane_1(), {1, 3});
  EXPECT_EQ(error_kind([&] { QuantumRing ring(fan); }), ErrorKind::NotFano);
}

TEST(QuantumRing, GiambelliExamples) {
  const QuantumRing ring(fans::blown_up_plane_1());
  const auto g = ring.giambelli({0, 3});
  EXPECT_EQ(to_string(g), "D1*D4 + q^(1,1,0,-1)*D4");
  const QuantumRing plane(fans::projective_plane());
  EXPECT_EQ(to_string(plane.giambelli({0, 1})), "D1*D2");
  EXPECT_EQ(error_kind([&] { plane.giambelli({0, 1, 2}); }), ErrorKind::NotACone);
  EXPECT_EQ(error_kind([&] { plane.divisor_product_closed_form({0, 1, 2}); }), ErrorKind::NotACone);
}

// Powers of the hyperplane class in P^n: H^k = q^(k div (n+1)) H^(k mod (n+1)).
TEST(QuantumRing, ProjectiveSpaceOracle) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const Fan fan = fans::projective_space(n);
    const QuantumRing ring(fan);
    const auto& c = ring.cohomology();
    std::vector<CohomologyClass> power(n + 1);
    for (std::size_t d = 0; d <= n; ++d) {
      IndexSet tau;
      for (std::size_t i = 0; i < d; ++i) tau.push_back(i);
      power[d] = c.stratum_class(tau);
    }
    for (std::size_t a = 0; a <= n; ++a) {
      for (std::size_t b = 0; b <= n; ++b) {
        const std::size_t k = (a + b) / (n + 1);
        std::vector<Integer> line(n + 1, Integer(static_cast<long>(k)));
        const QuantumClass expected = QuantumClass::term(CurveClass(line), power[(a + b) % (n + 1)]);
        EXPECT_EQ(ring.product(power[a], power[b]), expected) << "n=" << n << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(QuantumRing, ProductOfProjectiveSpacesOracle) {
  const Fan fan = fans::product(fans::projective_space(1), fans::projective_space(2));
  const QuantumRing ring(fan);
  const auto& c = ring.cohomology();
  // rays 0,1 span the P1 factor, rays 2,3,4 the P2 factor
  const auto h1 = c.stratum_class({0});
  const auto h2 = c.stratum_class({2});
  const CurveClass q1 = CurveClass::from_ints({1, 1, 0, 0, 0});
  const CurveClass q2 = CurveClass::from_ints({0, 0, 1, 1, 1});
  EXPECT_EQ(ring.product(h1, h1), QuantumClass::term(q1, c.unit()));
  const auto h2sq = ring.product(h2, h2);
  EXPECT_EQ(h2sq, QuantumClass::classical(5, c.stratum_class({2, 3})));
  EXPECT_EQ(ring.product(h2sq, QuantumClass::classical(5, h2)), QuantumClass::term(q2, c.unit()));
}

TEST(QuantumInvariants, GiambelliInvertsTheClosedForm) {
  for (const auto& [name, fan] : testing::corpus()) {
    const QuantumRing ring(fan);
    for (const auto& sigma : fan.cones()) {
      const auto expected = QuantumClass::classical(fan.num_rays(), ring.cohomology().stratum_class(sigma));
      EXPECT_EQ(ring.evaluate(ring.giambelli(sigma)), expected) << name << ' ' << to_string_1based(sigma);
      EXPECT_EQ(ring.reduce_monomial(Monomial(sigma)), ring.divisor_product_closed_form(sigma))
          << name << ' ' << to_string_1based(sigma);
    }
  }
}

TEST(QuantumInvariants, ClassicalLimit) {
  for (const auto& [name, fan] : sweep_corpus()) {
    const QuantumRing ring(fan);
    const auto& c = ring.cohomology();
    for (std::size_t i = 0; i < c.basis_size(); ++i) {
      for (std::size_t j = 0; j < c.basis_size(); ++j) {
        const auto a = CohomologyClass::basis(i);
        const auto b = CohomologyClass::basis(j);
        EXPECT_EQ(ring.classical_part(ring.product(a, b)), c.cup(a, b)) << name;
      }
    }
  }
}

TEST(QuantumInvariants, CommutativeAssociativeAndGraded) {
  for (const auto& [name, fan] : sweep_corpus()) {
    const QuantumRing ring(fan);
    const auto& c = ring.cohomology();
    const std::size_t b = c.basis_size();
    std::vector<QuantumClass> basis;
    for (std::size_t i = 0; i < b; ++i) basis.push_back(QuantumClass::classical(fan.num_rays(), CohomologyClass::basis(i)));
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        const auto xy = ring.product(basis[i], basis[j]);
        EXPECT_EQ(xy, ring.product(basis[j], basis[i])) << name;
        for (const auto& [beta, alpha] : xy.terms()) {
          const auto deg = c.homogeneous_degree(alpha);
          ASSERT_TRUE(deg.has_value()) << name;
          EXPECT_EQ(Integer(static_cast<long>(*deg)) + beta.degree(),
                    Integer(static_cast<long>(c.basis_degree(i) + c.basis_degree(j))))
              << name;
        }
        for (std::size_t k = 0; k < b; ++k)
          EXPECT_EQ(ring.product(xy, basis[k]), ring.product(basis[i], ring.product(basis[j], basis[k]))) << name;
      }
    }
  }
}

TEST(QuantumInvariants, UnitAndLinearity) {
  for (const auto& [name, fan] : surfaces()) {
    const QuantumRing ring(fan);
    const auto& c = ring.cohomology();
    const auto one = QuantumClass::classical(fan.num_rays(), c.unit());
    for (std::size_t i = 0; i < c.basis_size(); ++i) {
      const auto x = QuantumClass::classical(fan.num_rays(), CohomologyClass::basis(i));
      EXPECT_EQ(ring.product(one, x), x) << name;
      const auto y = QuantumClass::classical(fan.num_rays(), CohomologyClass::basis((i + 1) % c.basis_size()));
      const auto z = QuantumClass::classical(fan.num_rays(), c.point());
      EXPECT_EQ(ring.product(Rational(3, 2) * x + y, z),
                Rational(3, 2) * ring.product(x, z) + ring.product(y, z))
          << name;
    }
  }
}

TEST(QuantumInvariants, ThreePointInvariantsAreSymmetricAndMatchTheClassicalPairing) {
  for (const auto& [name, fan] : surfaces()) {
    const QuantumRing ring(fan);
    const auto& c = ring.cohomology();
    const std::size_t b = c.basis_size();
    std::vector<CurveClass> degrees{CurveClass(fan.num_rays())};
    for (const auto& rel : primitive_relations(fan)) degrees.push_back(rel.cls);
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        for (std::size_t k = 0; k < b; ++k) {
          const auto x = CohomologyClass::basis(i);
          const auto y = CohomologyClass::basis(j);
          const auto z = CohomologyClass::basis(k);
          EXPECT_EQ(ring.gw3(x, y, z, CurveClass(fan.num_rays())), c.integrate(c.cup(c.cup(x, y), z))) << name;
          for (const auto& beta : degrees) {
            const Rational v = ring.gw3(x, y, z, beta);
            EXPECT_EQ(v, ring.gw3(y, x, z, beta)) << name;
            EXPECT_EQ(v, ring.gw3(z, y, x, beta)) << name;
            if (v != 0) {
              const long dims = static_cast<long>(c.basis_degree(i) + c.basis_degree(j) + c.basis_degree(k));
              EXPECT_EQ(Integer(dims), Integer(static_cast<long>(fan.dim())) + beta.degree()) << name;
            }
          }
        }
      }
    }
  }
}

TEST(QuantumInvariants, PointClassesFromEveryMaximalConeAgree) {
  for (const auto& [name, fan] : testing::corpus()) {
    const QuantumRing ring(fan);
    const auto& c = ring.cohomology();
    std::vector<QuantumClass> reference;
    for (std::size_t k = 0; k < c.basis_size(); ++k)
      reference.push_back(ring.product(ring.evaluate(ring.giambelli(fan.max_cones().front())),
                                       QuantumClass::classical(fan.num_rays(), CohomologyClass::basis(k))));
    for (const auto& mu : fan.max_cones()) {
      const auto pt = ring.evaluate(ring.giambelli(mu));
      for (std::size_t k = 0; k < c.basis_size(); ++k)
        EXPECT_EQ(ring.product(pt, QuantumClass::classical(fan.num_rays(), CohomologyClass::basis(k))), reference[k])
            << name;
    }
  }
}

TEST(QuantumInvariants, ReductionIsConfluent) {
  std::mt19937_64 rng(20261017);
  for (const auto& [name, fan] : testing::corpus()) {
    const QuantumRing ring(fan);
    std::uniform_int_distribution<std::size_t> ray(0, fan.num_rays() - 1);
    std::uniform_int_distribution<std::size_t> length(1, fan.dim() + 3);
    for (int trial = 0; trial < 40; ++trial) {
      Monomial m;
      const std::size_t len = length(rng);
      for (std::size_t k = 0; k < len; ++k) m.push_back(ray(rng));
      m = make_monomial(m);
      const auto canonical = ring.reduce_monomial(m);
      for (int run = 0; run < 3; ++run) EXPECT_EQ(ring.reduce_monomial(m, rng), canonical) << name << ' ' << to_string(m);
    }
  }
}

TEST(QuantumInvariants, DivisorProductsRespectTheRelations) {
  for (const auto& [name, fan] : surfaces()) {
    const QuantumRing ring(fan);
    const auto& c = ring.cohomology();
    for (const auto& rel : presentation(fan).deformed_relations) {
      QuantumClass rhs = QuantumClass::classical(fan.num_rays(), c.unit());
      for (std::size_t j = 0; j < rel.rhs.size(); ++j)
        for (Integer k = 0; k < rel.rhs_coeffs[j]; ++k)
          rhs = ring.product(rhs, QuantumClass::classical(fan.num_rays(), c.stratum_class({rel.rhs[j]})));
      EXPECT_EQ(ring.reduce_monomial(Monomial(rel.set)), rhs.shifted(rel.beta)) << name;
    }
  }
}

TEST(QuantumInvariants, SpecialFamiliesAreDisjointOnEveryCone) {
  for (const auto& [name, fan] : testing::corpus()) {
    for (const auto& sigma : fan.cones()) {
      const auto specials = special_exceptional_sets(fan, sigma);
      std::map<std::size_t, std::vector<const ExceptionalData*>> by_exc;
      for (const auto& e : specials) by_exc[e.exc_divisor].push_back(&e);
      for (const auto& [exc, group] : by_exc) {
        for (std::size_t i = 0; i < group.size(); ++i)
          for (std::size_t j = i + 1; j < group.size(); ++j)
            EXPECT_NE(group[i]->set, group[j]->set) << name;
      }
    }
  }
}

}  // namespace
}  // namespace qtoric
