#pragma once

#include "k3e/types.hpp"

namespace k3e {

// Conversions. to_small throws std::overflow_error when an entry does not fit.
BigMat to_big(const Mat& m);
BigVec to_big(const Vec& v);
Mat to_small(const BigMat& m);
Vec to_small(const BigVec& v);
Int to_small(const BigInt& x);

Mat identity(std::size_t n);
BigMat big_identity(std::size_t n);
Mat transpose(const Mat& m);
BigMat transpose(const BigMat& m);
Mat multiply(const Mat& a, const Mat& b);
BigMat multiply(const BigMat& a, const BigMat& b);

// x^T G y with exact intermediate arithmetic.
Int bilinear(const Mat& g, const Vec& x, const Vec& y);
inline Int norm(const Mat& g, const Vec& x) { return bilinear(g, x, x); }
// G x.
Vec apply(const Mat& g, const Vec& x);

// B G B^T where the rows of B are basis vectors.
Mat gram_of_rows(const Mat& g, const Mat& rows);
BigMat gram_of_rows(const BigMat& g, const BigMat& rows);

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor_mod(const BigInt& a, const BigInt& b);
Int floor_div(Int a, Int b);
Int floor_mod(Int a, Int b);
BigInt big_gcd(const BigInt& a, const BigInt& b);
Int gcd_vec(const Vec& v);
// Returns g = gcd(a, b) with s*a + t*b = g.
Int ext_gcd(Int a, Int b, Int& s, Int& t);
Int mod_inverse(Int a, Int m);

BigInt determinant(const BigMat& m);
BigInt determinant(const Mat& m);

// Row Hermite normal form. Returns only the nonzero rows: a basis of the row
// lattice, upper echelon with positive pivots and reduced entries above them.
BigMat hnf_rows(BigMat a);

// Integer basis (as rows) of { x : A x = 0 }.
BigMat kernel_basis(const BigMat& a);

// Rows spanning (Q-span of rows of S) ∩ Z^n.
BigMat saturate_rows(const BigMat& s);

struct Smith {
  BigMat u, v;         // U A V = diag(d)
  std::vector<BigInt> d;  // nonnegative, d[i] | d[i+1]
};
Smith smith_normal_form(const BigMat& a);

// Exact inverse of a unimodular matrix; throws if not unimodular.
BigMat inverse_unimodular(const BigMat& m);

// Extend a primitive integer vector to a unimodular matrix whose first row is it.
BigMat complete_to_unimodular(const BigVec& v);

struct Reduced {
  Mat gram;   // gram of the reduced basis
  Mat basis;  // rows: reduced basis vectors in the input coordinates
};
// Exact integral LLL (delta = 3/4) on a positive-definite Gram matrix.
Reduced lll_reduce(const Mat& gram);
Reduced lll_reduce(const BigMat& gram);

// Signature (positive, negative, zero) by exact congruence diagonalization.
struct Signature {
  int pos = 0, neg = 0, zero = 0;
};
Signature signature(const Mat& gram);

}  // namespace k3e
