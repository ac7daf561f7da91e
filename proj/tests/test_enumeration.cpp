#include <gtest/gtest.h>

#include <random>
#include <set>

#include "k3e/enumeration.hpp"

using namespace k3e;

namespace {

// Naive box search; the box is large enough for the small positive forms used below.
std::size_t box_count(const Mat& g, Int bound, Int box) {
  std::size_t n = g.size(), count = 0;
  Vec v(n, -box);
  while (true) {
    bool zero = std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
    if (!zero && std::abs(norm(g, v)) <= bound) ++count;
    std::size_t i = 0;
    while (i < n && ++v[i] > box) v[i++] = -box;
    if (i == n) break;
  }
  return count / 2;
}

}  // namespace

TEST(Enumeration, ShortVectorExamples) {
  EXPECT_EQ(short_vectors(parse_builtin("A2"), 2).size(), 3u);
  EXPECT_TRUE(short_vectors(parse_builtin("E8(2)"), 2).empty());
  EXPECT_EQ(short_vectors(Lattice(Mat{{-4}}), 4).size(), 1u);
}

TEST(Enumeration, ShortVectorsMatchBoxOracle) {
  std::mt19937_64 rng(11);
  int tested = 0;
  while (tested < 60) {
    std::size_t n = 2 + rng() % 3;
    Mat g(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      g[i][i] = -2 * static_cast<Int>(2 + rng() % 4);
      for (std::size_t j = 0; j < i; ++j) g[i][j] = g[j][i] = static_cast<Int>(rng() % 3) - 1;
    }
    Lattice l(g);
    if (definiteness(l) != Definiteness::negative || abs(det(l)) > 100 * 100) continue;
    ++tested;
    for (Int b : {2, 4, 6, 8}) EXPECT_EQ(short_vectors(l, b).size(), box_count(g, b, 4)) << "bound " << b;
  }
}

TEST(Enumeration, Minimum) {
  EXPECT_EQ(std::abs(minimum(parse_builtin("A1"))), 2);
  EXPECT_EQ(std::abs(minimum(parse_builtin("E8(2)"))), 4);
  EXPECT_EQ(std::abs(minimum(Lattice(Mat{{-4, 0}, {0, -6}}))), 4);
}

TEST(Enumeration, RootCounts) {
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(2 * roots(root_lattice_A(n)).size(), static_cast<std::size_t>(n * (n + 1)));
  for (int n = 4; n <= 8; ++n)
    EXPECT_EQ(2 * roots(root_lattice_D(n)).size(), static_cast<std::size_t>(2 * n * (n - 1)));
  EXPECT_EQ(2 * roots(root_lattice_E(6)).size(), 72u);
  EXPECT_EQ(2 * roots(root_lattice_E(7)).size(), 126u);
  EXPECT_EQ(2 * roots(root_lattice_E(8)).size(), 240u);
}

TEST(Enumeration, RootOverlattices) {
  Lattice l = parse_builtin("A1+E8(2)");
  EXPECT_EQ(root_sublattice(l).lattice.rank(), 1u);
  EXPECT_EQ(roots(l).size(), 1u);
  EXPECT_FALSE(is_root_overlattice(l));
  EXPECT_TRUE(is_root_overlattice(parse_builtin("D4")));
  EXPECT_TRUE(roots(parse_builtin("E8(2)")).empty());
  EXPECT_EQ(root_system_type(parse_builtin("D4+A1^2")), (std::vector<std::string>{"A1", "A1", "D4"}));
}

TEST(Enumeration, IsometryExamples) {
  Lattice a(Mat{{-4, 0}, {0, -4}}), b(Mat{{-4, 0}, {0, -4}});
  IsometryResult r = is_isometric(a, b);
  ASSERT_EQ(r.found, Tri::yes);
  EXPECT_EQ(multiply(multiply(transpose(r.witness), a.gram), r.witness), b.gram);
  EXPECT_EQ(is_isometric(Lattice(Mat{{-2, 0}, {0, -8}}), a).found, Tri::no);
  Lattice d4 = overlattice(parse_builtin("A1^4"), {Elem{1, 1, 1, 1}}).lattice;
  EXPECT_EQ(is_isometric(d4, parse_builtin("D4")).found, Tri::yes);
}

TEST(Enumeration, IsometryWitnessesOnRandomBases) {
  std::mt19937_64 rng(5);
  for (std::string s : {"A2+A1", "D4", "A3+<-6>", "E6"}) {
    Lattice l = parse_builtin(s);
    for (int t = 0; t < 5; ++t) {
      std::size_t n = l.rank();
      Vec v(n);
      do {
        for (auto& x : v) x = static_cast<Int>(rng() % 7) - 3;
      } while (gcd_vec(v) != 1);
      Mat u = to_small(complete_to_unimodular(to_big(v)));
      Lattice m(gram_of_rows(l.gram, u));
      IsometryResult r = is_isometric(l, m);
      ASSERT_EQ(r.found, Tri::yes) << s;
      EXPECT_EQ(multiply(multiply(transpose(r.witness), l.gram), r.witness), m.gram);
      EXPECT_EQ(is_isometric(m, l).found, Tri::yes);
      EXPECT_EQ(is_isometric(m, m).found, Tri::yes);
    }
  }
}

TEST(Enumeration, AutomorphismGroupOrders) {
  EXPECT_EQ(automorphism_group(parse_builtin("A1")).order, 2);
  EXPECT_EQ(automorphism_group(parse_builtin("A1^2")).order, 8);
  EXPECT_EQ(automorphism_group(parse_builtin("A2")).order, 12);
  EXPECT_EQ(automorphism_group(parse_builtin("D4")).order, 1152);
  EXPECT_EQ(automorphism_group(parse_builtin("E6")).order, 103680);
}

TEST(Enumeration, AutomorphismsPreserveGram) {
  Lattice l = parse_builtin("A2+A1^2");
  AutGroup g = automorphism_group(l);
  for (const auto& a : g.generators) EXPECT_EQ(multiply(multiply(transpose(a), l.gram), a), l.gram);
}

TEST(Enumeration, InducedActionIsOrthogonal) {
  for (std::string s : {"A2+A1", "<-12>", "D4+A1", "A3"}) {
    Lattice l = parse_builtin(s);
    DiscriminantForm a = discriminant_form(l);
    FormGroup o = form_orthogonal_group(a);
    for (const auto& m : automorphism_group(l).generators) {
      FormMap f = induced_discriminant_action(l, a, m);
      EXPECT_NE(std::find(o.elements.begin(), o.elements.end(), f), o.elements.end()) << s;
    }
  }
}

TEST(Enumeration, DiscriminantGroupOfRankOne) {
  DiscriminantForm a = discriminant_form(Lattice(Mat{{-12}}));
  FormGroup o = form_orthogonal_group(a);
  std::set<Int> mult;
  for (const auto& m : o.elements) mult.insert(m[0][0]);
  EXPECT_EQ(mult, (std::set<Int>{1, 5, 7, 11}));
}

TEST(Enumeration, Surjectivity) {
  EXPECT_EQ(restriction_surjective(parse_builtin("E8")).surjective, Tri::yes);
  EXPECT_EQ(restriction_surjective(Lattice(Mat{{-12}})).surjective, Tri::no);  // only ±1 lift
  EXPECT_EQ(restriction_surjective(parse_builtin("A2")).surjective, Tri::yes);
}
