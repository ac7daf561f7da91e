#include <gtest/gtest.h>

#include <random>

#include "k3e/intmath.hpp"

using namespace k3e;

namespace {

BigMat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c, int h) {
  std::uniform_int_distribution<int> d(-h, h);
  BigMat m(r, BigVec(c));
  for (auto& row : m)
    for (auto& x : row) x = d(rng);
  return m;
}

}  // namespace

TEST(IntMath, DeterminantSmallCases) {
  EXPECT_EQ(determinant(Mat{{0, 1}, {1, -2}}), -1);
  EXPECT_EQ(determinant(Mat{{-2, 1}, {1, -2}}), 3);
  EXPECT_EQ(determinant(Mat{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}), 30);
}

TEST(IntMath, SmithNormalFormReconstructs) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    BigMat a = random_mat(rng, 3, 4, 6);
    Smith s = smith_normal_form(a);
    BigMat d = multiply(multiply(s.u, a), s.v);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d[i].size(); ++j) EXPECT_EQ(d[i][j], i == j && i < s.d.size() ? s.d[i] : BigInt(0));
    for (std::size_t i = 0; i + 1 < s.d.size(); ++i)
      if (s.d[i] != 0) EXPECT_EQ(s.d[i + 1] % s.d[i], 0);
    EXPECT_EQ(abs(determinant(s.u)), 1);
    EXPECT_EQ(abs(determinant(s.v)), 1);
  }
}

TEST(IntMath, KernelBasisIsAnnihilated) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    BigMat a = random_mat(rng, 2, 5, 5);
    BigMat k = kernel_basis(a);
    EXPECT_EQ(k.size(), 3u);
    for (const auto& v : k)
      for (const auto& row : a) {
        BigInt s = 0;
        for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * v[j];
        EXPECT_EQ(s, 0);
      }
    // saturated: the kernel rows extend to a unimodular basis, so their SNF is all ones
    for (const auto& d : smith_normal_form(k).d) EXPECT_EQ(d, 1);
  }
}

TEST(IntMath, CompleteToUnimodular) {
  BigVec v{6, 10, 15};
  BigMat m = complete_to_unimodular(v);
  EXPECT_EQ(m[0], v);
  EXPECT_EQ(abs(determinant(m)), 1);
  BigMat inv = inverse_unimodular(m);
  BigMat id = multiply(m, inv);
  EXPECT_EQ(id, big_identity(3));
}

TEST(IntMath, HnfIsCanonical) {
  BigMat a{{2, 4, 6}, {1, 1, 1}};
  BigMat b{{3, 5, 7}, {1, 1, 1}};  // same row lattice
  EXPECT_EQ(hnf_rows(a), hnf_rows(b));
}

TEST(IntMath, LllKeepsGramClass) {
  Mat g{{10, 7, 3}, {7, 10, 4}, {3, 4, 6}};
  Reduced r = lll_reduce(g);
  EXPECT_EQ(gram_of_rows(g, r.basis), r.gram);
  EXPECT_EQ(abs(determinant(r.basis)), 1);
  EXPECT_EQ(determinant(r.gram), determinant(g));
  EXPECT_LE(r.gram[0][0], 10);
}

TEST(IntMath, SignatureCounts) {
  Signature s = signature(Mat{{0, 1, 0}, {1, -2, 0}, {0, 0, -4}});
  EXPECT_EQ(s.pos, 1);
  EXPECT_EQ(s.neg, 2);
  EXPECT_EQ(s.zero, 0);
}

TEST(IntMath, ModularHelpers) {
  EXPECT_EQ(floor_mod(Int(-7), Int(3)), 2);
  EXPECT_EQ(floor_div(Int(-7), Int(3)), -3);
  EXPECT_EQ(mod_inverse(3, 7), 5);
  EXPECT_EQ(gcd_vec({4, 6, 10}), 2);
}
