#include <gtest/gtest.h>

#include <random>

#include "k3e/genus.hpp"

using namespace k3e;

TEST(Lattice, Determinants) {
  EXPECT_EQ(det(hyperbolic_plane()), -1);
  EXPECT_EQ(abs(det(parse_builtin("A2"))), 3);
  EXPECT_EQ(det(parse_builtin("A1^8")), 256);
}

TEST(Lattice, RejectsOddOrAsymmetric) {
  EXPECT_THROW(require_even(Mat{{-3}}), PreconditionError);
  EXPECT_THROW(require_even(Mat{{-2, 1}, {0, -2}}), PreconditionError);
  EXPECT_NO_THROW(require_even(Mat{{-2, 1}, {1, -2}}));
}

TEST(Lattice, Rescale) {
  Lattice a1 = parse_builtin("A1");
  Lattice r = rescale(a1, 2);
  EXPECT_EQ(r.gram, (Mat{{-4}}));
  EXPECT_EQ(det(r), -4);
  EXPECT_EQ(std::abs(minimum(rescale(parse_builtin("E8"), 2))), 4);
  EXPECT_EQ(rescale(parse_builtin("A2"), 1).gram, parse_builtin("A2").gram);
}

TEST(Lattice, DirectSums) {
  EXPECT_EQ(abs(det(direct_sum({hyperbolic_plane(), Lattice(Mat{{-4}})}))), 4);
  EXPECT_EQ(direct_sum({parse_builtin("A1"), parse_builtin("A1")}).gram, (Mat{{-2, 0}, {0, -2}}));
  Lattice e8a1 = direct_sum({parse_builtin("E8"), parse_builtin("A1")});
  EXPECT_EQ(e8a1.rank(), 9u);
  EXPECT_EQ(abs(det(e8a1)), 2);
}

TEST(Lattice, DiscriminantForms) {
  DiscriminantForm a = discriminant_form(Lattice(Mat{{-6}}));
  ASSERT_EQ(a.orders, (std::vector<Int>{6}));
  EXPECT_EQ(a.q_fraction(a.generator(0)).str(), "11/6");  // -1/6 mod 2
  EXPECT_EQ(discriminant_form(parse_builtin("D4")).orders, (std::vector<Int>{2, 2}));
  EXPECT_TRUE(discriminant_form(parse_builtin("E8")).orders.empty());
}

TEST(Lattice, DiscriminantFormInvariants) {
  for (std::string s : {"A1^3", "A2+A3", "D5", "E6+A1", "D4+<-12>"}) {
    Lattice l = parse_builtin(s);
    DiscriminantForm a = discriminant_form(l);
    EXPECT_EQ(BigInt(a.size()), abs(det(l))) << s;
    for (std::size_t i = 0; i < a.ngens(); ++i) {
      Elem g = a.generator(i);
      // q(g) ≡ b(g, g) mod 1
      EXPECT_EQ(a.q(g) % a.exponent, a.b(g, g)) << s;
      EXPECT_EQ(a.element_order(g), a.orders[i]);
    }
  }
}

TEST(Lattice, DiscriminantOfDirectSumConcatenates) {
  DiscriminantForm a = discriminant_form(parse_builtin("A2+A1"));
  EXPECT_EQ(a.size(), 6);
  EXPECT_EQ(same_genus(parse_builtin("A2+A1"), direct_sum({parse_builtin("A1"), parse_builtin("A2")})), Tri::yes);
}

TEST(Lattice, OverlatticeA1FourIsD4) {
  Lattice a14 = parse_builtin("A1^4");
  Overlattice m = overlattice(a14, {Elem{1, 1, 1, 1}});
  EXPECT_EQ(m.index, 2);
  EXPECT_EQ(abs(det(m.lattice)), 4);
  EXPECT_EQ(is_isometric(m.lattice, parse_builtin("D4")).found, Tri::yes);
  EXPECT_EQ(overlattice(a14, {}).lattice.gram.size(), 4u);
  EXPECT_EQ(abs(det(overlattice(a14, {}).lattice)), 16);
  EXPECT_THROW(overlattice(a14, {Elem{1, 0, 0, 0}}), PreconditionError);
}

TEST(Lattice, OverlatticeOfA1NineHasDet128) {
  Lattice a19 = parse_builtin("A1^9");
  Overlattice m = overlattice(a19, {Elem{1, 1, 1, 1, 1, 1, 1, 1, 0}});
  EXPECT_EQ(abs(det(m.lattice)), 128);
  EXPECT_TRUE(is_even(m.lattice.gram));
}

TEST(Lattice, OrthogonalComplements) {
  Lattice ua1 = direct_sum({hyperbolic_plane(), parse_builtin("A1")});
  Complement c = orthogonal_complement(ua1, Mat{{1, 0, 0}, {0, 1, 0}});
  EXPECT_EQ(c.lattice.gram, (Mat{{-2}}));
  Complement c2 = orthogonal_complement(parse_builtin("A2"), Mat{{1, 0}});
  EXPECT_EQ(abs(det(c2.lattice)), 6);
  // U + <-4> with E = [4,2,1] in basis (F, S0, z) where U = [[0,1],[1,-2]]
  Lattice ns(Mat{{0, 1, 0}, {1, -2, 0}, {0, 0, -4}});
  Complement c3 = orthogonal_complement(ns, Mat{{4, 2, 1}, {1, 0, 0}});
  EXPECT_EQ(c3.lattice.rank(), 1u);
  EXPECT_FALSE(c3.saturated_changed);
  Complement c4 = orthogonal_complement(ua1, Mat{{0, 0, 2}});
  EXPECT_TRUE(c4.saturated_changed);
  EXPECT_EQ(c4.lattice.rank(), 2u);
}

TEST(Lattice, PrimitiveScaleDivisor) {
  EXPECT_EQ(primitive_scale_divisor(parse_builtin("E8(2)")), 2);
  EXPECT_EQ(primitive_scale_divisor(parse_builtin("A2")), 1);
  EXPECT_EQ(primitive_scale_divisor(Lattice(Mat{{-12}})), 6);
}

TEST(Lattice, PrimitiveVectors) {
  EXPECT_TRUE(is_primitive_vector({1, 0, 0}));
  EXPECT_FALSE(is_primitive_vector({2, 4, 6}));
  EXPECT_TRUE(is_primitive_vector({4, 2, 1}));
}

TEST(Lattice, BuiltinParser) {
  EXPECT_EQ(parse_builtin("E8(2)+A1").rank(), 9u);
  EXPECT_EQ(abs(det(parse_builtin("D4+<-12>"))), 48);
  EXPECT_THROW(parse_builtin("Q7"), ParseError);
  EXPECT_THROW(parse_builtin("A1^"), ParseError);
  EXPECT_THROW(parse_builtin("D3"), ParseError);
}

TEST(Lattice, RandomRescaleIdentity) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> base{"A1", "A2", "A1+A2", "D4", "A3+<-6>", "E6"};
  for (int t = 0; t < 100; ++t) {
    Lattice l = parse_builtin(base[rng() % base.size()]);
    Int m = 1 + static_cast<Int>(rng() % 5);
    BigInt expect = det(l);
    for (std::size_t i = 0; i < l.rank(); ++i) expect *= m;
    EXPECT_EQ(det(rescale(l, m)), expect);
  }
}
