#include "k3e/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace k3e {

namespace {

// Definite lattice brought to positive-definite form and LLL-reduced.
struct PosForm {
  Mat gram;     // positive-definite Gram in the original basis
  Mat red;      // reduced Gram
  Mat basis;    // rows: reduced basis in original coordinates
  int sign = 1; // original = sign * gram
};

PosForm prepare(const Lattice& l) {
  require_even(l.gram);
  PosForm p;
  std::size_t n = l.rank();
  if (n == 0) return p;
  p.sign = l.gram[0][0] < 0 ? -1 : 1;
  p.gram = p.sign < 0 ? negate(l).gram : l.gram;
  try {
    Reduced r = lll_reduce(p.gram);
    p.red = std::move(r.gram);
    p.basis = std::move(r.basis);
  } catch (const PreconditionError&) {
    throw PreconditionError("lattice is not definite");
  }
  return p;
}

// Fincke-Pohst enumeration of x != 0 with x^T R x <= bound, one per ±pair
// (last nonzero coordinate positive), R positive-definite.
class Enumerator {
 public:
  Enumerator(const Mat& r, Int bound) : r_(r), n_(r.size()), bound_(bound) {
    q_.assign(n_, std::vector<long double>(n_, 0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) q_[i][j] = static_cast<long double>(r[i][j]);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        q_[j][i] = q_[i][j];
        q_[i][j] /= q_[i][i];
      }
      for (std::size_t k = i + 1; k < n_; ++k)
        for (std::size_t l = k; l < n_; ++l) q_[k][l] -= q_[k][i] * q_[i][l];
    }
    x_.assign(n_, 0);
  }

  template <class F>
  void run(F&& f) {
    if (n_ == 0 || bound_ <= 0) return;
    long double t = static_cast<long double>(bound_);
    rec(n_ - 1, t + 1e-6L * (1 + t), true, f);
  }

 private:
  template <class F>
  void rec(std::size_t i, long double remaining, bool higher_zero, F& f) {
    long double c = 0;
    for (std::size_t j = i + 1; j < n_; ++j) c -= q_[i][j] * x_[j];
    long double rad = std::sqrt(std::max<long double>(remaining, 0) / q_[i][i]);
    Int lo = static_cast<Int>(std::ceil(c - rad - 1e-9L));
    Int hi = static_cast<Int>(std::floor(c + rad + 1e-9L));
    if (higher_zero) lo = std::max<Int>(lo, 0);
    for (Int v = lo; v <= hi; ++v) {
      long double d = static_cast<long double>(v) - c;
      long double used = q_[i][i] * d * d;
      if (used > remaining) continue;
      x_[i] = v;
      bool hz = higher_zero && v == 0;
      if (i == 0) {
        if (!hz) {
          Int nrm = norm(r_, x_);
          if (nrm <= bound_) f(x_, nrm);
        }
      } else {
        rec(i - 1, remaining - used, hz, f);
      }
    }
    x_[i] = 0;
  }

  const Mat& r_;
  std::size_t n_;
  Int bound_;
  std::vector<std::vector<long double>> q_;
  Vec x_;
};

Vec to_original(const Mat& basis, const Vec& x) {
  std::size_t n = basis.empty() ? 0 : basis[0].size();
  Vec v(n, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0)
      for (std::size_t j = 0; j < n; ++j) v[j] += x[i] * basis[i][j];
  return v;
}

void canonical_sign(Vec& v) {
  for (Int x : v)
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      return;
    }
}

std::vector<ShortVector> short_vectors_pos(const PosForm& p, Int bound) {
  std::vector<ShortVector> out;
  Enumerator e(p.red, bound);
  e.run([&](const Vec& x, Int nrm) {
    Vec v = to_original(p.basis, x);
    canonical_sign(v);
    out.push_back({std::move(v), nrm});
  });
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
    return a.norm != b.norm ? a.norm < b.norm : a.v < b.v;
  });
  return out;
}

Vec mat_vec(const Mat& a, const Vec& x) {
  Vec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
  return r;
}

Int dot(const Vec& a, const Vec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Candidate images grouped by norm, with G x precomputed for fast inner products.
struct CandidatePool {
  std::map<Int, std::vector<std::pair<Vec, Vec>>> by_norm;  // norm -> (x, G x)

  CandidatePool(const PosForm& p, const std::set<Int>& norms) {
    if (norms.empty()) return;
    Int maxn = *norms.rbegin();
    for (const auto& sv : short_vectors_pos(p, maxn)) {
      if (!norms.count(sv.norm)) continue;
      Vec neg = sv.v;
      for (auto& y : neg) y = -y;
      auto& bucket = by_norm[sv.norm];
      bucket.emplace_back(sv.v, mat_vec(p.gram, sv.v));
      bucket.emplace_back(neg, mat_vec(p.gram, neg));
    }
  }
};

// Backtracking for images x_0..x_{n-1} with x_i^T G x_j = target[i][j].
struct ImageSearch {
  const Mat& target;
  const CandidatePool& pool;
  std::size_t node_cap;
  std::size_t nodes = 0;
  bool capped = false;
  std::vector<const std::pair<Vec, Vec>*> chosen;
  std::vector<std::pair<Vec, Vec>> fixed_store;  // storage for fixed prefix images

  ImageSearch(const Mat& t, const CandidatePool& p, std::size_t cap) : target(t), pool(p), node_cap(cap) {}

  bool compatible(std::size_t i, const std::pair<Vec, Vec>& c) const {
    for (std::size_t j = 0; j < i; ++j)
      if (dot(c.first, chosen[j]->second) != target[i][j]) return false;
    return true;
  }

  // Fill levels i..n-1; returns true on success (chosen holds all images).
  bool dfs(std::size_t i) {
    std::size_t n = target.size();
    if (i == n) return true;
    if (++nodes > node_cap) {
      capped = true;
      return false;
    }
    auto it = pool.by_norm.find(target[i][i]);
    if (it == pool.by_norm.end()) return false;
    for (const auto& c : it->second) {
      if (!compatible(i, c)) continue;
      chosen.push_back(&c);
      if (dfs(i + 1)) return true;
      chosen.pop_back();
      if (capped) return false;
    }
    return false;
  }
};

// Matrix A (columns = images of original basis vectors) from images X of the
// reduced basis rows B.
Mat automorphism_matrix(const Mat& basis, const std::vector<Vec>& images) {
  BigMat binv = inverse_unimodular(to_big(basis));
  BigMat phi = multiply(binv, to_big(Mat(images.begin(), images.end())));
  return to_small(transpose(phi));
}

std::vector<Vec> images_of(const ImageSearch& s) {
  std::vector<Vec> out;
  for (auto* c : s.chosen) out.push_back(c->first);
  return out;
}

}  // namespace

std::vector<ShortVector> short_vectors(const Lattice& l, Int bound) {
  PosForm p = prepare(l);
  auto out = short_vectors_pos(p, bound);
  if (p.sign < 0)
    for (auto& sv : out) sv.norm = -sv.norm;
  return out;
}

Int minimum(const Lattice& l) {
  PosForm p = prepare(l);
  if (p.red.empty()) throw PreconditionError("rank-0 lattice has no minimum");
  Int m = p.red[0][0];
  for (std::size_t i = 0; i < p.red.size(); ++i) m = std::min(m, p.red[i][i]);
  auto sv = short_vectors_pos(p, m);
  return sv.front().norm;
}

std::vector<Vec> roots(const Lattice& l) {
  std::vector<Vec> out;
  for (auto& sv : short_vectors(l, 2)) out.push_back(std::move(sv.v));
  return out;
}

RootSublattice root_sublattice(const Lattice& l) {
  RootSublattice r;
  auto rs = roots(l);
  if (rs.empty()) return r;
  BigMat h = hnf_rows(to_big(Mat(rs.begin(), rs.end())));
  r.basis = to_small(h);
  r.lattice = Lattice(gram_of_rows(l.gram, r.basis));
  return r;
}

bool is_root_overlattice(const Lattice& l) { return root_sublattice(l).basis.size() == l.rank(); }

std::vector<std::string> root_system_type(const Lattice& l) {
  auto rs = roots(l);
  std::vector<int> comp(rs.size(), -1);
  int nc = 0;
  for (std::size_t s = 0; s < rs.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = nc;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < rs.size(); ++b)
        if (comp[b] < 0 && bilinear(l.gram, rs[a], rs[b]) != 0) {
          comp[b] = nc;
          stack.push_back(b);
        }
    }
    ++nc;
  }
  std::vector<std::string> out;
  for (int c = 0; c < nc; ++c) {
    Mat rows;
    for (std::size_t s = 0; s < rs.size(); ++s)
      if (comp[s] == c) rows.push_back(rs[s]);
    Int r = static_cast<Int>(hnf_rows(to_big(rows)).size());
    Int count = 2 * static_cast<Int>(rows.size());
    std::string t;
    if (count == r * (r + 1))
      t = "A" + std::to_string(r);
    else if (r >= 4 && count == 2 * r * (r - 1))
      t = "D" + std::to_string(r);
    else if ((r == 6 && count == 72) || (r == 7 && count == 126) || (r == 8 && count == 240))
      t = "E" + std::to_string(r);
    else
      throw std::logic_error("unrecognized root system component");
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Fingerprint fingerprint(const Lattice& l, Int max_norm) {
  Fingerprint f;
  f.rank = static_cast<Int>(l.rank());
  f.det = det(l);
  f.counts.assign(static_cast<std::size_t>(max_norm / 2), 0);
  for (const auto& sv : short_vectors(l, max_norm)) {
    Int a = sv.norm < 0 ? -sv.norm : sv.norm;
    f.counts[static_cast<std::size_t>(a / 2 - 1)]++;
  }
  return f;
}

IsometryResult is_isometric(const Lattice& l1, const Lattice& l2, std::size_t node_cap) {
  IsometryResult res;
  if (l1.rank() != l2.rank()) return res;
  if (l1.rank() == 0) {
    res.found = Tri::yes;
    return res;
  }
  PosForm p1 = prepare(l1), p2 = prepare(l2);
  if (p1.sign != p2.sign) return res;
  if (determinant(p1.gram) != determinant(p2.gram)) return res;
  std::set<Int> norms;
  for (std::size_t i = 0; i < p2.red.size(); ++i) norms.insert(p2.red[i][i]);
  Int maxn = *norms.rbegin();
  {
    Lattice a(p1.gram), b(p2.gram);
    if (fingerprint(a, maxn + (maxn % 2)) != fingerprint(b, maxn + (maxn % 2))) return res;
  }
  CandidatePool pool(p1, norms);
  ImageSearch s(p2.red, pool, node_cap);
  bool ok = s.dfs(0);
  res.nodes = s.nodes;
  if (!ok) {
    res.found = s.capped ? Tri::unknown : Tri::no;
    return res;
  }
  res.found = Tri::yes;
  res.witness = automorphism_matrix(p2.basis, images_of(s));
  // Verify M^T G1 M = G2 in the original signs.
  BigMat m = to_big(res.witness);
  if (multiply(multiply(transpose(m), to_big(l1.gram)), m) != to_big(l2.gram))
    throw std::logic_error("isometry witness failed verification");
  return res;
}

AutGroup automorphism_group(const Lattice& l, std::size_t node_cap) {
  AutGroup g;
  g.order = 1;
  std::size_t n = l.rank();
  if (n == 0) return g;
  PosForm p = prepare(l);
  std::set<Int> norms;
  for (std::size_t i = 0; i < n; ++i) norms.insert(p.red[i][i]);
  CandidatePool pool(p, norms);
  std::vector<std::pair<Vec, Vec>> fixed(n);
  for (std::size_t i = 0; i < n; ++i) fixed[i] = {p.basis[i], mat_vec(p.gram, p.basis[i])};
  std::size_t nodes_used = 0;

  auto orbit = [&](const Vec& start) {
    std::set<Vec> orb{start};
    std::vector<Vec> queue{start};
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (const auto& a : g.generators) {
        Vec img = mat_vec(a, queue[k]);
        if (orb.insert(img).second) queue.push_back(img);
      }
    return orb;
  };

  for (std::size_t i = n; i-- > 0;) {
    // candidates at level i given b_0..b_{i-1} fixed
    std::vector<const std::pair<Vec, Vec>*> cand;
    auto it = pool.by_norm.find(p.red[i][i]);
    if (it != pool.by_norm.end())
      for (const auto& c : it->second) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j)
          if (dot(c.first, fixed[j].second) != p.red[i][j]) ok = false;
        if (ok) cand.push_back(&c);
      }
    std::set<Vec> orb = orbit(p.basis[i]);
    std::set<Vec> failed;
    for (const auto* c : cand) {
      if (orb.count(c->first) || failed.count(c->first)) continue;
      ImageSearch s(p.red, pool, node_cap > nodes_used ? node_cap - nodes_used : 0);
      for (std::size_t j = 0; j < i; ++j) s.chosen.push_back(&fixed[j]);
      s.chosen.push_back(c);
      bool ok = s.dfs(i + 1);
      nodes_used += s.nodes;
      if (s.capped) {
        g.complete = false;
        continue;
      }
      if (ok) {
        g.generators.push_back(automorphism_matrix(p.basis, images_of(s)));
        orb = orbit(p.basis[i]);
      } else {
        auto o = orbit(c->first);
        failed.insert(o.begin(), o.end());
      }
    }
    g.order *= orb.size();
  }
  return g;
}

FormMap induced_discriminant_action(const Lattice& l, const DiscriminantForm& a, const Mat& aut) {
  FormMap m(a.ngens());
  for (std::size_t i = 0; i < a.ngens(); ++i) m[i] = a.reduce_dual(l.gram, mat_vec(aut, a.lift[i]), a.orders[i]);
  return m;
}

Surjectivity restriction_surjective(const Lattice& l, std::size_t aut_node_cap, std::size_t order_cap) {
  Surjectivity s;
  DiscriminantForm a = discriminant_form(l);
  FormGroup target = form_orthogonal_group(a, order_cap);
  s.target_order = target.elements.size();
  AutGroup aut = automorphism_group(l, aut_node_cap);
  std::vector<FormMap> gens;
  for (const auto& m : aut.generators) gens.push_back(induced_discriminant_action(l, a, m));
  FormMap id(a.ngens());
  for (std::size_t i = 0; i < a.ngens(); ++i) id[i] = a.generator(i);
  std::set<FormMap> seen{id};
  std::vector<FormMap> queue{id};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& gm : gens) {
      FormMap c = compose_form_maps(a, gm, queue[k]);
      if (seen.insert(c).second) queue.push_back(c);
    }
  s.image_order = seen.size();
  if (s.image_order == s.target_order && target.complete)
    s.surjective = Tri::yes;
  else if (aut.complete && target.complete)
    s.surjective = Tri::no;
  else
    s.surjective = Tri::unknown;
  return s;
}

}  // namespace k3e
