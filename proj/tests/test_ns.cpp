#include <gtest/gtest.h>

#include <numeric>

#include <random>

#include "k3e/ns.hpp"

using namespace k3e;

namespace {

NSLattice ns_diag(Int a) { return NSLattice(Lattice(Mat{{-a}})); }

}  // namespace

TEST(NS, Pairing) {
  NSLattice ns = ns_diag(8);
  EXPECT_EQ(ns.pair(ns.fiber(), ns.zero_section()), 1);
  EXPECT_EQ(ns.self(DivisorClass{4, 2, {1}}), 0);
  EXPECT_EQ(ns.self(ns.zero_section()), -2);
  EXPECT_THROW(ns.check(DivisorClass{1, 0, {0, 0}}), PreconditionError);
  EXPECT_THROW(NSLattice(Lattice(Mat{{2}})), PreconditionError);
}

TEST(NS, CompleteIsotropic) {
  EXPECT_EQ(complete_isotropic(ns_diag(8), 2, {1}), (DivisorClass{4, 2, {1}}));
  EXPECT_EQ(complete_isotropic(ns_diag(4), 1, {1}), (DivisorClass{3, 1, {1}}));
  EXPECT_FALSE(complete_isotropic(ns_diag(6), 2, {1}).has_value());
  EXPECT_THROW(complete_isotropic(ns_diag(6), 0, {1}), NonPositiveBetaError);
}

TEST(NS, ReducePeriodic) {
  NSLattice ns = ns_diag(8);
  DivisorClass e = *complete_isotropic(ns, 2, {3});
  EXPECT_EQ(reduce_periodic(ns, e).z, (Vec{1}));
  EXPECT_EQ(reduce_periodic(ns, DivisorClass{4, 2, {1}}), (DivisorClass{4, 2, {1}}));
}

TEST(NS, NefExamples) {
  NSLattice a(Lattice(Mat{{-8, 0}, {0, -6}}));
  NefVerdict v = is_nef_isotropic(a, DivisorClass{25, 12, {6, 2}});
  EXPECT_EQ(v.status, NefStatus::nef_maximal_rank);
  EXPECT_EQ(v.divisibility, 1);
  NefVerdict w = is_nef_isotropic(ns_diag(4), DivisorClass{3, 1, {1}});
  ASSERT_EQ(w.status, NefStatus::not_nef);
  ASSERT_TRUE(w.witness);
  EXPECT_EQ(ns_diag(4).self(*w.witness), -2);
  EXPECT_LT(ns_diag(4).pair(*w.witness, DivisorClass{3, 1, {1}}), 0);
  EXPECT_GT(w.witness->y, 0);
  NefVerdict u = is_nef_isotropic(ns_diag(8), DivisorClass{4, 2, {1}});
  EXPECT_TRUE(is_nef(u.status));
  EXPECT_EQ(u.status, NefStatus::nef_with_orthogonal_root);
  EXPECT_EQ(u.divisibility, 2);
}

TEST(NS, NefPreconditions) {
  NSLattice ns = ns_diag(8);
  EXPECT_THROW(is_nef_isotropic(ns, DivisorClass{-1, 0, {0}}), FiberClassError);
  EXPECT_THROW(is_nef_isotropic(ns, DivisorClass{8, 4, {2}}), NotPrimitiveError);
  EXPECT_THROW(is_nef_isotropic(ns, DivisorClass{2, 1, {0}}), NotIsotropicError);
  EXPECT_THROW(is_nef_isotropic(ns, DivisorClass{-4, -2, {-1}}), NonPositiveBetaError);
}

TEST(NS, BruteOracle) {
  EXPECT_TRUE(nef_brute_oracle(ns_diag(4), DivisorClass{3, 1, {1}}, 4, 4).has_value());
  NSLattice a(Lattice(Mat{{-8, 0}, {0, -6}}));
  EXPECT_FALSE(nef_brute_oracle(a, DivisorClass{25, 12, {6, 2}}, 200, 20).has_value());
  EXPECT_FALSE(nef_brute_oracle(ns_diag(6), ns_diag(6).fiber(), 50, 20).has_value());
}

TEST(NS, OracleAgreementSmallK) {
  for (Int k = 2; k <= 12; ++k) {
    NSLattice ns = ns_diag(2 * k);
    for (Int b = 1; b <= 4; ++b)
      for (Int g = 0; g < b; ++g) {
        auto e = complete_isotropic(ns, b, {g});
        if (!e || std::gcd(std::gcd(e->x, e->y), g) != 1) continue;
        bool not_nef = is_nef_isotropic(ns, *e).status == NefStatus::not_nef;
        bool found = nef_brute_oracle(ns, *e, 4 * k * k, 4 * k).has_value();
        EXPECT_EQ(not_nef, found) << "k=" << k << " E=" << e->str();
      }
  }
}

TEST(NS, IntersectionIdentity) {
  // for E² = 0 and C² = -2: -½‖yγ - βz‖ = β(β + (E·C) y)
  std::mt19937_64 rng(3);
  NSLattice ns(Lattice(Mat{{-4, 1}, {1, -6}}));
  int checked = 0;
  for (int t = 0; t < 4000 && checked < 200; ++t) {
    Int b = 1 + static_cast<Int>(rng() % 6);
    Vec g{static_cast<Int>(rng() % 13) - 6, static_cast<Int>(rng() % 13) - 6};
    auto e = complete_isotropic(ns, b, g);
    if (!e) continue;
    Int y = 1 + static_cast<Int>(rng() % 5);
    Vec z{static_cast<Int>(rng() % 9) - 4, static_cast<Int>(rng() % 9) - 4};
    Int h = ns.half_neg_norm(z);
    if ((h - 1) % y != 0) continue;  // C = [x, y, z] with C² = -2
    DivisorClass c{(h - 1) / y + y, y, z};
    if (ns.self(c) != -2) continue;
    Vec d{y * g[0] - b * z[0], y * g[1] - b * z[1]};
    EXPECT_EQ(ns.half_neg_norm(d), b * (b + ns.pair(*e, c) * y));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(NS, PeriodicityOfVerdicts) {
  std::mt19937_64 rng(9);
  NSLattice ns(Lattice(Mat{{-8, 2}, {2, -4}}));
  int checked = 0;
  for (int t = 0; t < 3000 && checked < 100; ++t) {
    Int b = 2 + static_cast<Int>(rng() % 5);
    Vec g{static_cast<Int>(rng() % b), static_cast<Int>(rng() % b)};
    auto e = complete_isotropic(ns, b, g);
    if (!e || std::gcd(std::gcd(e->x, e->y), std::gcd(g[0], g[1])) != 1) continue;
    Vec g2 = g;
    g2[rng() % 2] += b * (static_cast<Int>(rng() % 5) - 2);
    auto e2 = complete_isotropic(ns, b, g2);
    ASSERT_TRUE(e2);
    EXPECT_EQ(is_nef_isotropic(ns, *e).status, is_nef_isotropic(ns, *e2).status);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

// With a root in L the shift no longer maps effective vertical classes to effective ones.
TEST(NS, PeriodicityNeedsIrreducibleFibers) {
  NSLattice ns(Lattice(Mat{{-2, 0}, {0, -6}}));
  int differing = 0;
  for (Int b = 2; b <= 6; ++b)
    for (Int g0 = 0; g0 < b; ++g0)
      for (Int g1 = 0; g1 < b; ++g1) {
        auto e = complete_isotropic(ns, b, Vec{g0, g1});
        if (!e || std::gcd(std::gcd(e->x, b), std::gcd(g0, g1)) != 1) continue;
        auto e2 = complete_isotropic(ns, b, Vec{g0 - b, g1});
        if (is_nef_isotropic(ns, *e).status != is_nef_isotropic(ns, *e2).status) ++differing;
      }
  EXPECT_GT(differing, 0);
}

TEST(NS, Sections) {
  NSLattice a(Lattice(Mat{{-8, 0}, {0, -6}}));
  SectionSearch s = find_section(a, DivisorClass{25, 12, {6, 2}});
  ASSERT_EQ(s.status, SectionSearch::Status::found);
  EXPECT_EQ(a.self(*s.section), -2);
  EXPECT_EQ(a.pair(*s.section, DivisorClass{25, 12, {6, 2}}), 1);
  SectionSearch f = find_section(a, a.fiber());
  ASSERT_EQ(f.status, SectionSearch::Status::found);
  EXPECT_EQ(a.pair(*f.section, a.fiber()), 1);
  EXPECT_EQ(a.self(*f.section), -2);
  SectionSearch none = find_section(ns_diag(8), DivisorClass{4, 2, {1}});
  EXPECT_NE(none.status, SectionSearch::Status::found);
}

TEST(NS, FibrationCounts) {
  auto count_nef = [](const Mat& g, Int beta) {
    Int n = 0;
    for (const auto& f : find_fibrations(NSLattice(Lattice(g)), beta))
      if (is_nef(f.verdict.status)) ++n;
    return n;
  };
  EXPECT_EQ(count_nef({{-4, 0}, {0, -4}}, 2), 1);
  for (Int b : {2, 5, 10}) EXPECT_EQ(count_nef({{-10, 0}, {0, -4}}, b), 0);
  EXPECT_EQ(count_nef({{-14, 3}, {3, -6}}, 5), 4);
}

// Values from an independent brute-force scan (y <= 12, |z_i| <= 5).
TEST(NS, FibrationCountsRank3Lattices) {
  auto count_nef = [](const Mat& g, Int beta) {
    Int n = 0;
    for (const auto& f : find_fibrations(NSLattice(Lattice(g)), beta))
      if (is_nef(f.verdict.status)) ++n;
    return n;
  };
  Mat l3{{-4, 2, 2}, {2, -6, -1}, {2, -1, -6}};
  EXPECT_EQ(count_nef(l3, 3), 0);
  EXPECT_EQ(count_nef(l3, 5), 8);
  Mat l7{{-4, -2, 2}, {-2, -4, 0}, {2, 0, -4}};
  EXPECT_EQ(count_nef(l7, 2), 1);
  EXPECT_EQ(count_nef(l7, 3), 0);
  EXPECT_EQ(count_nef(l7, 4), 0);
}

TEST(NS, FibrationCountsInvariantUnderBasisSymmetry) {
  Mat g{{-6, 0}, {0, -6}}, swapped{{-6, 0}, {0, -6}};
  Mat h{{-14, 3}, {3, -6}}, hs{{-6, 3}, {3, -14}};
  for (Int b = 2; b <= 5; ++b) {
    EXPECT_EQ(find_fibrations(NSLattice(Lattice(h)), b).size(), find_fibrations(NSLattice(Lattice(hs)), b).size());
    EXPECT_EQ(find_fibrations(NSLattice(Lattice(g)), b).size(), find_fibrations(NSLattice(Lattice(swapped)), b).size());
  }
}

TEST(NS, ExtensionCriterion) {
  EXPECT_EQ(extension_criterion(Lattice(Mat{{-6, 0}, {0, -6}}), Mat{{1, 1}}, true), ExtensionVerdict::positive_entropy);
  EXPECT_EQ(extension_criterion(Lattice(Mat{{-4, 0}, {0, -4}}), Mat{{1, 2}}, true), ExtensionVerdict::inconclusive);
  EXPECT_EQ(extension_criterion(Lattice(Mat{{-6, 0}, {0, -6}}), Mat{{1, 1}}, false), ExtensionVerdict::inconclusive);
  EXPECT_THROW(extension_criterion(Lattice(Mat{{-6, 0}, {0, -6}}), Mat{{2, 2}}, true), PreconditionError);
  EXPECT_TRUE(extension_det_condition(36, 12, 2));
  EXPECT_FALSE(extension_det_condition(16, 20, 2));
}
