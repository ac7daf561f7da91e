#include "k3e/intmath.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace k3e {

BigMat to_big(const Mat& m) {
  BigMat r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = to_big(m[i]);
  return r;
}

BigVec to_big(const Vec& v) { return BigVec(v.begin(), v.end()); }

Int to_small(const BigInt& x) {
  if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min())
    throw std::overflow_error("integer does not fit in 64 bits");
  return static_cast<Int>(x);
}

Vec to_small(const BigVec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_small(v[i]);
  return r;
}

Mat to_small(const BigMat& m) {
  Mat r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = to_small(m[i]);
  return r;
}

Mat identity(std::size_t n) {
  Mat r(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

BigMat big_identity(std::size_t n) {
  BigMat r(n, BigVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

template <class M>
static M transpose_impl(const M& m) {
  if (m.empty()) return {};
  M r(m[0].size(), typename M::value_type(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
  return r;
}

Mat transpose(const Mat& m) { return transpose_impl(m); }
BigMat transpose(const BigMat& m) { return transpose_impl(m); }

template <class M>
static M multiply_impl(const M& a, const M& b) {
  if (a.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  M r(n, typename M::value_type(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

Mat multiply(const Mat& a, const Mat& b) { return multiply_impl(a, b); }
BigMat multiply(const BigMat& a, const BigMat& b) { return multiply_impl(a, b); }

Int bilinear(const Mat& g, const Vec& x, const Vec& y) {
  __int128 s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    __int128 row = 0;
    for (std::size_t j = 0; j < y.size(); ++j) row += static_cast<__int128>(g[i][j]) * y[j];
    s += row * x[i];
  }
  if (s > std::numeric_limits<Int>::max() || s < std::numeric_limits<Int>::min())
    throw std::overflow_error("bilinear form overflow");
  return static_cast<Int>(s);
}

Vec apply(const Mat& g, const Vec& x) {
  Vec r(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) r[i] += g[i][j] * x[j];
  return r;
}

Mat gram_of_rows(const Mat& g, const Mat& rows) {
  return to_small(gram_of_rows(to_big(g), to_big(rows)));
}

BigMat gram_of_rows(const BigMat& g, const BigMat& rows) {
  return multiply(multiply(rows, g), transpose(rows));
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

BigInt floor_mod(const BigInt& a, const BigInt& b) { return a - b * floor_div(a, b); }

Int floor_div(Int a, Int b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Int floor_mod(Int a, Int b) { return a - b * floor_div(a, b); }

BigInt big_gcd(const BigInt& a, const BigInt& b) {
  BigInt x = abs(a), y = abs(b);
  while (y != 0) {
    BigInt t = x % y;
    x = y;
    y = t;
  }
  return x;
}

Int gcd_vec(const Vec& v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, x);
  return g;
}

Int ext_gcd(Int a, Int b, Int& s, Int& t) {
  Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    Int q = floor_div(a, b);
    Int r = a - q * b;
    a = b;
    b = r;
    Int tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

Int mod_inverse(Int a, Int m) {
  Int s, t;
  if (ext_gcd(floor_mod(a, m), m, s, t) != 1) throw std::domain_error("not invertible");
  return floor_mod(s, m);
}

BigInt determinant(const BigMat& m0) {
  std::size_t n = m0.size();
  if (n == 0) return 1;
  BigMat m = m0;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt determinant(const Mat& m) { return determinant(to_big(m)); }

// Row reduction on columns [0, ncols) of `a`; returns the rank. Rows past the
// rank are zero on those columns. Pivot rows are made positive and the
// entries above each pivot reduced.
static std::size_t echelon(BigMat& a, std::size_t ncols) {
  std::size_t m = a.size(), row = 0;
  for (std::size_t col = 0; col < ncols && row < m; ++col) {
    while (true) {
      std::size_t best = m;
      for (std::size_t i = row; i < m; ++i)
        if (a[i][col] != 0 && (best == m || abs(a[i][col]) < abs(a[best][col]))) best = i;
      if (best == m) break;
      std::swap(a[row], a[best]);
      bool clean = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (a[i][col] == 0) continue;
        BigInt q = a[i][col] / a[row][col];
        for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= q * a[row][j];
        if (a[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[row][col] == 0) continue;
    if (a[row][col] < 0)
      for (auto& x : a[row]) x = -x;
    for (std::size_t i = 0; i < row; ++i) {
      BigInt q = floor_div(a[i][col], a[row][col]);
      if (q != 0)
        for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= q * a[row][j];
    }
    ++row;
  }
  return row;
}

BigMat hnf_rows(BigMat a) {
  if (a.empty()) return a;
  std::size_t r = echelon(a, a[0].size());
  a.resize(r);
  return a;
}

BigMat kernel_basis(const BigMat& a) {
  if (a.empty()) return {};
  std::size_t m = a.size(), n = a[0].size();
  BigMat aug(n, BigVec(m + n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) aug[i][j] = a[j][i];
    aug[i][m + i] = 1;
  }
  std::size_t r = echelon(aug, m);
  BigMat ker;
  for (std::size_t i = r; i < n; ++i) ker.emplace_back(aug[i].begin() + m, aug[i].end());
  return hnf_rows(ker);
}

BigMat saturate_rows(const BigMat& s) {
  if (s.empty()) return s;
  BigMat k = kernel_basis(s);
  if (k.empty()) return big_identity(s[0].size());
  return kernel_basis(k);
}

Smith smith_normal_form(const BigMat& a) {
  std::size_t m = a.size(), n = m ? a[0].size() : 0;
  Smith s{big_identity(m), big_identity(n), {}};
  BigMat d = a;
  auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // row dst -= q row src
    for (std::size_t j = 0; j < n; ++j) d[dst][j] -= q * d[src][j];
    for (std::size_t j = 0; j < m; ++j) s.u[dst][j] -= q * s.u[src][j];
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // col dst -= q col src
    for (std::size_t i = 0; i < m; ++i) d[i][dst] -= q * d[i][src];
    for (std::size_t i = 0; i < n; ++i) s.v[i][dst] -= q * s.v[i][src];
  };
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    while (true) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d[i][j] != 0 && (bi == m || abs(d[i][j]) < abs(d[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == m) goto done;
      if (bi != t) {
        std::swap(d[bi], d[t]);
        std::swap(s.u[bi], s.u[t]);
      }
      if (bj != t) {
        for (auto& row : d) std::swap(row[bj], row[t]);
        for (auto& row : s.v) std::swap(row[bj], row[t]);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (d[i][t] != 0) {
          row_op(i, t, d[i][t] / d[t][t]);
          if (d[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (d[t][j] != 0) {
          col_op(j, t, d[t][j] / d[t][t]);
          if (d[t][j] != 0) clean = false;
        }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d[i][j] % d[t][t] != 0) {
            row_op(t, i, -1);  // row t += row i
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : s.u[t]) x = -x;
    }
  }
done:
  s.d.assign(std::min(m, n), 0);
  for (std::size_t i = 0; i < std::min(m, n); ++i) s.d[i] = d[i][i];
  return s;
}

BigMat inverse_unimodular(const BigMat& m) {
  std::size_t n = m.size();
  BigMat aug(n, BigVec(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  std::size_t r = echelon(aug, n);
  for (std::size_t i = 0; i < n; ++i)
    if (r != n || aug[i][i] != 1) throw std::domain_error("matrix is not unimodular");
  BigMat inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i].assign(aug[i].begin() + n, aug[i].end());
  return inv;
}

BigMat complete_to_unimodular(const BigVec& v) {
  // Column operations W with v W = (g, 0, ..., 0); then W^{-1} has first row v / g.
  std::size_t n = v.size();
  BigMat a(n, BigVec(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][0] = v[i];
    a[i][1 + i] = 1;
  }
  // rows of a: (v_i | e_i); echelon on column 0 gives row0 = (g | w) with w·(e) combination.
  echelon(a, 1);
  if (a[0][0] != 1) throw std::domain_error("vector is not primitive");
  BigMat w(n, BigVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a[i][1 + j];
  // Rows of w form a unimodular matrix T with T v = (1, 0, ..., 0)^T.
  // Hence v is the first column of T^{-1}; transpose to get it as a first row.
  return transpose(inverse_unimodular(w));
}

Reduced lll_reduce(const Mat& gram) { return lll_reduce(to_big(gram)); }

Reduced lll_reduce(const BigMat& gram0) {
  const std::size_t n = gram0.size();
  BigMat g = gram0;
  BigMat h = big_identity(n);
  if (n == 0) return {};
  std::vector<BigInt> d(n + 1, 0);
  BigMat lam(n + 1, BigVec(n + 1, 0));
  auto G = [&](std::size_t i, std::size_t j) -> BigInt& { return g[i - 1][j - 1]; };

  auto redi = [&](std::size_t k, std::size_t l) {
    if (abs(2 * lam[k][l]) <= d[l]) return;
    BigInt q = floor_div(2 * lam[k][l] + d[l], 2 * d[l]);
    for (std::size_t j = 0; j < n; ++j) h[k - 1][j] -= q * h[l - 1][j];
    for (std::size_t j = 0; j < n; ++j) g[k - 1][j] -= q * g[l - 1][j];
    for (std::size_t j = 0; j < n; ++j) g[j][k - 1] -= q * g[j][l - 1];
    lam[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };
  auto swapi = [&](std::size_t k, std::size_t kmax) {
    std::swap(h[k - 1], h[k - 2]);
    std::swap(g[k - 1], g[k - 2]);
    for (auto& row : g) std::swap(row[k - 1], row[k - 2]);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    BigInt l = lam[k][k - 1];
    BigInt b = (d[k - 2] * d[k] + l * l) / d[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      BigInt t = lam[i][k];
      lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
      lam[i][k - 1] = (b * t + l * lam[i][k]) / d[k];
    }
    d[k - 1] = b;
  };

  d[0] = 1;
  d[1] = G(1, 1);
  if (d[1] <= 0) throw PreconditionError("LLL needs a positive-definite Gram matrix");
  std::size_t k = 2, kmax = 1;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        BigInt u = G(k, j);
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k)
          lam[k][j] = u;
        else
          d[k] = u;
      }
      if (d[k] <= 0) throw PreconditionError("LLL needs a positive-definite Gram matrix");
    }
    while (true) {
      redi(k, k - 1);
      if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
        swapi(k, kmax);
        k = std::max<std::size_t>(2, k - 1);
      } else {
        for (std::size_t l = k - 2; l >= 1; --l) redi(k, l);
        ++k;
        break;
      }
    }
  }
  return {to_small(g), to_small(h)};
}

Signature signature(const Mat& gram) {
  using Rat = boost::multiprecision::cpp_rational;
  std::size_t n = gram.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = gram[i][j];
  Signature sig;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && a[i][i] != 0) {
        p = i;
        break;
      }
    if (p == n) {
      // all remaining diagonal entries vanish; use an off-diagonal entry
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        for (std::size_t i = 0; i < n; ++i)
          if (!done[i]) ++sig.zero;
        return sig;
      }
      for (std::size_t j = 0; j < n; ++j) a[pi][j] += a[pj][j];
      for (std::size_t j = 0; j < n; ++j) a[j][pi] += a[j][pj];
      p = pi;
    }
    Rat piv = a[p][p];
    if (piv > 0)
      ++sig.pos;
    else
      ++sig.neg;
    done[p] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a[i][p] == 0) continue;
      Rat f = a[i][p] / piv;
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[p][j];
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!done[j]) a[p][j] = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i]) a[i][p] = 0;
  }
  return sig;
}

}  // namespace k3e
