#include "k3e/lattice.hpp"

#include <cctype>
#include <numeric>

namespace k3e {

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive: return "positive-definite";
    case Definiteness::negative: return "negative-definite";
    case Definiteness::indefinite: return "indefinite";
    default: return "degenerate";
  }
}

bool is_even(const Mat& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() != g.size()) return false;
    if (g[i][i] % 2 != 0) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (g[i][j] != g[j][i]) return false;
  }
  return true;
}

void require_even(const Mat& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i].size() != g.size()) throw PreconditionError("Gram matrix is not square");
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (g[i][j] != g[j][i]) throw PreconditionError("Gram matrix is not symmetric");
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i][i] % 2 != 0) throw PreconditionError("lattice is not even (odd diagonal entry)");
}

BigInt det(const Lattice& l) { return determinant(l.gram); }

Definiteness definiteness(const Lattice& l) {
  Signature s = signature(l.gram);
  if (s.zero > 0) return Definiteness::degenerate;
  if (s.neg == 0) return Definiteness::positive;
  if (s.pos == 0) return Definiteness::negative;
  return Definiteness::indefinite;
}

bool is_hyperbolic(const Lattice& l) {
  Signature s = signature(l.gram);
  return s.zero == 0 && s.pos == 1;
}

Lattice negate(const Lattice& l) {
  Lattice r = l;
  for (auto& row : r.gram)
    for (auto& x : row) x = -x;
  return r;
}

Int primitive_scale_divisor(const Lattice& l) {
  require_even(l.gram);
  Int g = 0;
  for (std::size_t i = 0; i < l.rank(); ++i) {
    g = std::gcd(g, l.gram[i][i] / 2);
    for (std::size_t j = i + 1; j < l.rank(); ++j) g = std::gcd(g, l.gram[i][j]);
  }
  if (g == 0) throw PreconditionError("zero Gram matrix has no scale divisor");
  return g;
}

Lattice rescale(const Lattice& l, Int m) {
  if (m == 0) throw PreconditionError("rescaling by zero");
  Lattice r = l;
  for (auto& row : r.gram)
    for (auto& x : row) x *= m;
  if (!l.name.empty()) r.name = l.name + "(" + std::to_string(m) + ")";
  return r;
}

Lattice direct_sum(const std::vector<Lattice>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.rank();
  Lattice r(Mat(n, Vec(n, 0)));
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rank(); ++i)
      for (std::size_t j = 0; j < p.rank(); ++j) r.gram[off + i][off + j] = p.gram[i][j];
    off += p.rank();
    if (!r.name.empty()) r.name += "+";
    r.name += p.name;
  }
  return r;
}

bool is_primitive_vector(const Vec& v) { return gcd_vec(v) == 1; }

DiscriminantForm discriminant_form(const Lattice& l) {
  require_even(l.gram);
  BigMat g = to_big(l.gram);
  if (determinant(g) == 0) throw PreconditionError("degenerate lattice has no discriminant form");
  Smith s = smith_normal_form(g);
  DiscriminantForm f;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.d.size(); ++i)
    if (s.d[i] > 1) idx.push_back(i);
  std::size_t n = l.rank();
  Int expo = 1;
  for (std::size_t i : idx) {
    Int d = to_small(s.d[i]);
    f.orders.push_back(d);
    expo = std::lcm(expo, d);
    Vec lift(n), urow(n);
    for (std::size_t j = 0; j < n; ++j) {
      lift[j] = to_small(floor_mod(s.v[j][i], s.d[i]));
      urow[j] = to_small(floor_mod(s.u[i][j], s.d[i]));
    }
    f.lift.push_back(lift);
    f.urow.push_back(urow);
  }
  f.exponent = expo;
  std::size_t k = idx.size();
  f.qnum.assign(k, 0);
  f.bnum.assign(k, Vec(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      BigInt ip = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) ip += BigInt(f.lift[i][a]) * g[a][c] * f.lift[j][c];
      BigInt den = BigInt(f.orders[i]) * f.orders[j];
      BigInt scaled = ip * expo;
      if (scaled % den != 0) throw std::logic_error("discriminant form value not in (1/D)Z");
      scaled /= den;
      f.bnum[i][j] = to_small(floor_mod(scaled, BigInt(expo)));
      if (i == j) f.qnum[i] = to_small(floor_mod(scaled, BigInt(2 * expo)));
    }
  return f;
}

Complement orthogonal_complement(const Lattice& l, const Mat& sub) {
  if (sub.empty()) throw PreconditionError("empty sublattice");
  for (const auto& r : sub)
    if (r.size() != l.rank()) throw PreconditionError("sublattice vector has wrong length");
  BigMat s = to_big(sub);
  BigMat bg = to_big(l.gram);
  if (hnf_rows(s).size() != s.size()) throw PreconditionError("sublattice generators are linearly dependent");
  if (determinant(gram_of_rows(bg, s)) == 0) throw PreconditionError("sublattice is degenerate");
  Complement c;
  BigMat sat = saturate_rows(s);
  c.saturated_changed = hnf_rows(s) != sat;
  BigMat k = kernel_basis(multiply(s, bg));
  c.basis = to_small(k);
  c.lattice = Lattice(to_small(gram_of_rows(bg, k)));
  return c;
}

Spanned lattice_from_generators(const Mat& gram, const Mat& gens, Int den) {
  BigMat h = hnf_rows(to_big(gens));
  if (h.size() != gram.size()) throw PreconditionError("generators do not span a full-rank lattice");
  BigMat gm = gram_of_rows(to_big(gram), h);
  BigInt d2 = BigInt(den) * den;
  for (auto& row : gm)
    for (auto& x : row) {
      if (x % d2 != 0) throw PreconditionError("generated lattice is not integral");
      x /= d2;
    }
  return {to_small(gm), to_small(h)};
}

Overlattice overlattice(const Lattice& l, const std::vector<Elem>& gens) {
  return overlattice(l, discriminant_form(l), gens);
}

Overlattice overlattice(const Lattice& l, const DiscriminantForm& a, const std::vector<Elem>& gens) {
  for (const auto& g : gens)
    if (g.size() != a.ngens()) throw PreconditionError("glue element has wrong length");
  if (!is_isotropic_set(a, gens)) throw PreconditionError("glue subgroup is not isotropic");
  std::size_t n = l.rank();
  Int den = a.exponent;
  Mat rows;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = den;
    rows.push_back(e);
  }
  for (const auto& g : gens) rows.push_back(a.lift_numerator(g));
  Spanned sp = lattice_from_generators(l.gram, rows, den);
  Overlattice o;
  o.lattice = Lattice(sp.gram);
  o.basis_num = sp.basis_num;
  o.den = den;
  BigInt dl = abs(det(l)), dm = abs(determinant(sp.gram));
  BigInt ratio = dl / dm;
  BigInt idx = sqrt(ratio);
  if (idx * idx * dm != dl) throw std::logic_error("overlattice index is not a square root");
  o.index = to_small(idx);
  if (!is_even(o.lattice.gram)) throw std::logic_error("overlattice of isotropic glue is not even");
  return o;
}

Lattice root_lattice_A(int n) {
  if (n < 1) throw PreconditionError("A_n needs n >= 1");
  Mat g(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) {
    g[i][i] = -2;
    if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = 1;
  }
  return Lattice(g, "A" + std::to_string(n));
}

Lattice root_lattice_D(int n) {
  if (n < 4) throw PreconditionError("D_n needs n >= 4");
  Mat g(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) g[i][i] = -2;
  for (int i = 0; i + 2 < n; ++i) g[i][i + 1] = g[i + 1][i] = 1;
  g[n - 1][n - 3] = g[n - 3][n - 1] = 1;
  return Lattice(g, "D" + std::to_string(n));
}

Lattice root_lattice_E(int n) {
  if (n < 6 || n > 8) throw PreconditionError("E_n needs n in {6,7,8}");
  Mat g(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) g[i][i] = -2;
  for (int i = 0; i + 2 < n; ++i) g[i][i + 1] = g[i + 1][i] = 1;
  g[n - 1][2] = g[2][n - 1] = 1;
  return Lattice(g, "E" + std::to_string(n));
}

Lattice hyperbolic_plane() { return Lattice({{0, 1}, {1, 0}}, "U"); }

namespace {

struct Parser {
  const std::string& s;
  std::size_t p = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("cannot parse lattice name '" + s + "' at position " + std::to_string(p) + ": " + msg);
  }
  void skip() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool eat(char c) {
    skip();
    if (p < s.size() && s[p] == c) {
      ++p;
      return true;
    }
    return false;
  }
  Int number() {
    skip();
    std::size_t start = p;
    if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (start == p || (p == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) fail("expected integer");
    try {
      return std::stoll(s.substr(start, p - start));
    } catch (const std::exception&) {
      fail("integer out of range");
    }
  }
  Lattice atom() {
    skip();
    if (p >= s.size()) fail("unexpected end");
    char c = s[p];
    if (c == '(') {
      ++p;
      Lattice l = sum();
      if (!eat(')')) fail("expected ')'");
      return l;
    }
    if (c == '<') {
      ++p;
      Int v = number();
      if (!eat('>')) fail("expected '>'");
      if (v % 2 != 0) fail("rank-1 lattice must be even");
      return Lattice({{v}}, "<" + std::to_string(v) + ">");
    }
    if (c == 'U') {
      ++p;
      return hyperbolic_plane();
    }
    if (c == 'A' || c == 'D' || c == 'E') {
      ++p;
      Int n = number();
      if (n <= 0 || n > 64) fail("bad root lattice index");
      try {
        if (c == 'A') return root_lattice_A(static_cast<int>(n));
        if (c == 'D') return root_lattice_D(static_cast<int>(n));
        return root_lattice_E(static_cast<int>(n));
      } catch (const PreconditionError& e) {
        fail(e.what());
      }
    }
    fail(std::string("unexpected character '") + c + "'");
  }
  Lattice term() {
    Lattice l = atom();
    while (true) {
      skip();
      if (p < s.size() && s[p] == '(') {
        ++p;
        Int m = number();
        if (!eat(')')) fail("expected ')'");
        if (m == 0) fail("scale must be nonzero");
        l = rescale(l, m);
      } else if (p < s.size() && s[p] == '^') {
        ++p;
        Int k = number();
        if (k < 1 || k > 64) fail("bad exponent");
        std::vector<Lattice> parts(static_cast<std::size_t>(k), l);
        std::string nm = l.name;
        l = direct_sum(parts);
        l.name = nm + "^" + std::to_string(k);
      } else {
        return l;
      }
    }
  }
  Lattice sum() {
    std::vector<Lattice> parts{term()};
    while (eat('+')) parts.push_back(term());
    if (parts.size() == 1) return parts[0];
    return direct_sum(parts);
  }
};

}  // namespace

Lattice parse_builtin(const std::string& name) {
  Parser ps{name};
  Lattice l = ps.sum();
  ps.skip();
  if (ps.p != name.size()) ps.fail("trailing input");
  l.name = name;
  return l;
}

}  // namespace k3e
