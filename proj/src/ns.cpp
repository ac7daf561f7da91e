#include "k3e/ns.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace k3e {

std::string DivisorClass::str() const {
  std::ostringstream os;
  os << "[" << x << "," << y;
  for (Int v : z) os << "," << v;
  os << "]";
  return os.str();
}

NSLattice::NSLattice(Lattice l) : l_(std::move(l)) {
  require_even(l_.gram);
  if (l_.rank() > 0 && definiteness(l_) != Definiteness::negative)
    throw PreconditionError("L must be negative definite");
}

Mat NSLattice::full_gram() const {
  std::size_t r = rank_L();
  Mat g(r + 2, Vec(r + 2, 0));
  g[0][1] = g[1][0] = 1;
  g[1][1] = -2;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g[2 + i][2 + j] = l_.gram[i][j];
  return g;
}

void NSLattice::check(const DivisorClass& c) const {
  if (c.z.size() != rank_L())
    throw PreconditionError("divisor class has " + std::to_string(c.z.size()) + " L-coordinates, expected " +
                            std::to_string(rank_L()));
}

Int NSLattice::pair(const DivisorClass& a, const DivisorClass& b) const {
  return a.x * b.y + a.y * b.x - 2 * a.y * b.y + l_pair(a.z, b.z);
}

namespace {

Vec as_vector(const DivisorClass& c) {
  Vec v{c.x, c.y};
  v.insert(v.end(), c.z.begin(), c.z.end());
  return v;
}

DivisorClass from_vector(const Vec& v) { return {v[0], v[1], Vec(v.begin() + 2, v.end())}; }

Int class_gcd(const DivisorClass& c) { return gcd_vec(as_vector(c)); }

std::vector<Int> divisors(Int n) {
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Int divisibility_of(const NSLattice& ns, const DivisorClass& e) {
  return gcd_vec(k3e::apply(ns.full_gram(), as_vector(e)));
}

// Roots of E^perp / E, lifted to (-2)-classes orthogonal to E with y > 0.
std::optional<DivisorClass> orthogonal_root(const NSLattice& ns, const DivisorClass& e) {
  Mat g = ns.full_gram();
  Vec ev = as_vector(e);
  std::size_t n = ev.size();
  if (n <= 2) return std::nullopt;
  BigMat k = kernel_basis(BigMat{to_big(k3e::apply(g, ev))});
  // coordinates of E in the echelon basis k
  BigVec c(k.size(), 0), rest = to_big(ev);
  for (std::size_t i = 0; i < k.size(); ++i) {
    std::size_t piv = 0;
    while (k[i][piv] == 0) ++piv;
    if (rest[piv] % k[i][piv] != 0) throw std::logic_error("isotropic class not in its own complement");
    c[i] = rest[piv] / k[i][piv];
    for (std::size_t j = 0; j < n; ++j) rest[j] -= c[i] * k[i][j];
  }
  for (const auto& x : rest)
    if (x != 0) throw std::logic_error("failed to express E in its orthogonal complement");
  BigMat u = complete_to_unimodular(c);
  BigMat b = multiply(u, k);
  BigMat r(b.begin() + 1, b.end());
  Lattice w(to_small(gram_of_rows(to_big(g), r)));
  auto rs = roots(w);
  if (rs.empty()) return std::nullopt;
  Mat rr = to_small(r);
  Vec cv(n, 0);
  for (std::size_t i = 0; i < rs[0].size(); ++i)
    for (std::size_t j = 0; j < n; ++j) cv[j] += rs[0][i] * rr[i][j];
  if (cv[1] <= 0) {
    Int t = floor_div(-cv[1], e.y) + 1;
    for (std::size_t j = 0; j < n; ++j) cv[j] += t * ev[j];
  }
  DivisorClass out = from_vector(cv);
  if (ns.self(out) != -2 || ns.pair(out, e) != 0 || out.y <= 0)
    throw std::logic_error("orthogonal root lift failed verification");
  return out;
}

}  // namespace

std::optional<DivisorClass> complete_isotropic(const NSLattice& ns, Int beta, const Vec& gamma) {
  if (beta <= 0) throw NonPositiveBetaError("β must be positive");
  if (gamma.size() != ns.rank_L()) throw PreconditionError("γ has wrong length");
  Int h = ns.half_neg_norm(gamma);
  if (h % beta != 0) return std::nullopt;
  DivisorClass e{beta + h / beta, beta, gamma};
  if (ns.self(e) != 0) throw std::logic_error("completed class is not isotropic");
  return e;
}

DivisorClass reduce_periodic(const NSLattice& ns, const DivisorClass& e) {
  ns.check(e);
  if (e.y <= 0) throw NonPositiveBetaError("β must be positive");
  if (ns.self(e) != 0) throw NotIsotropicError("class is not isotropic");
  Vec g = e.z;
  for (auto& v : g) v = floor_mod(v, e.y);
  auto r = complete_isotropic(ns, e.y, g);
  if (!r) throw std::logic_error("reduced class does not complete");
  return *r;
}

const char* to_string(NefStatus s) {
  switch (s) {
    case NefStatus::not_nef: return "not-nef";
    case NefStatus::nef_with_orthogonal_root: return "nef-with-orthogonal-root";
    case NefStatus::nef_maximal_rank: return "nef-maximal-rank";
    default: return "nef";
  }
}

NefVerdict is_nef_isotropic(const NSLattice& ns, const DivisorClass& e) {
  ns.check(e);
  if (class_gcd(e) != 1) throw NotPrimitiveError("E is not primitive");
  DivisorClass f = ns.fiber();
  DivisorClass mf{-1, 0, Vec(ns.rank_L(), 0)};
  if (e == f || e == mf) throw FiberClassError("E = ±F");
  if (e.y <= 0) throw NonPositiveBetaError("E·F = β must be positive");
  if (ns.self(e) != 0) throw NotIsotropicError("E² != 0");

  NefVerdict out;
  out.divisibility = divisibility_of(ns, e);
  const Int beta = e.y;
  const Vec& gamma = e.z;
  const std::size_t r = ns.rank_L();

  auto obstruct = [&](const DivisorClass& c) {
    if (ns.self(c) != -2 || c.y < 0 || ns.pair(e, c) >= 0)
      throw std::logic_error("invalid not-nef witness " + c.str());
    out.status = NefStatus::not_nef;
    out.witness = c;
    return out;
  };

  // vertical (-2)-classes: roots of L, lexicographically positive system
  if (r > 0)
    for (const auto& rt : roots(ns.L())) {
      Int ip = ns.l_pair(gamma, rt);
      if (ip < 0) return obstruct({0, 0, rt});
      if (ip > beta) {
        Vec neg = rt;
        for (auto& v : neg) v = -v;
        return obstruct({1, 0, neg});
      }
    }

  // quick pass over sections of F next to γ/β
  if (r > 0 && r <= 12) {
    for (std::size_t mask = 0; mask < (std::size_t(1) << r); ++mask) {
      Vec z(r);
      for (std::size_t i = 0; i < r; ++i) z[i] = floor_div(gamma[i], beta) + ((mask >> i) & 1);
      DivisorClass c{ns.half_neg_norm(z), 1, z};
      if (ns.pair(e, c) < 0) return obstruct(c);
    }
  }

  // I(v) over v with -½‖v‖ < β²
  std::vector<Vec> vs{Vec(r, 0)};
  if (r > 0 && beta * beta - 1 > 0)
    for (const auto& sv : short_vectors(ns.L(), 2 * beta * beta - 2)) {
      vs.push_back(sv.v);
      Vec neg = sv.v;
      for (auto& v : neg) v = -v;
      vs.push_back(neg);
    }
  for (const auto& v : vs) {
    Int n = beta * beta - ns.half_neg_norm(v);
    for (Int y : divisors(n)) {
      Vec z(r);
      bool integral = true;
      for (std::size_t i = 0; i < r && integral; ++i) {
        Int num = y * gamma[i] - v[i];
        if (num % beta != 0) integral = false;
        z[i] = num / beta;
      }
      if (!integral) continue;
      Int h = ns.half_neg_norm(z);
      if ((h - 1) % y != 0) continue;
      return obstruct({y + (h - 1) / y, y, z});
    }
  }

  if (auto c = orthogonal_root(ns, e)) {
    out.status = NefStatus::nef_with_orthogonal_root;
    out.witness = c;
    return out;
  }
  out.status = out.divisibility == 1 ? NefStatus::nef_maximal_rank : NefStatus::nef;
  return out;
}

std::optional<DivisorClass> nef_brute_oracle(const NSLattice& ns, const DivisorClass& e, Int y_bound, Int z_box) {
  ns.check(e);
  if (y_bound <= 0 || z_box < 0) throw PreconditionError("oracle bounds must be positive");
  const std::size_t r = ns.rank_L();
  std::optional<DivisorClass> best;
  Int best_val = 0;
  Vec z(r, -z_box);
  while (true) {
    Int h = ns.half_neg_norm(z);
    Int t = h - 1;  // y must divide t
    auto consider = [&](Int y) {
      DivisorClass c{y + t / y, y, z};
      Int m = ns.pair(e, c);
      if (m < best_val) {
        best_val = m;
        best = c;
      }
    };
    if (t == 0) {
      for (Int y = 1; y <= y_bound; ++y) consider(y);
    } else {
      Int at = t < 0 ? -t : t;
      for (Int y : divisors(at))
        if (y <= y_bound) consider(y);
    }
    std::size_t i = 0;
    while (i < r) {
      if (++z[i] <= z_box) break;
      z[i] = -z_box;
      ++i;
    }
    if (i == r) break;
  }
  return best;
}

const char* to_string(SectionSearch::Status s) {
  switch (s) {
    case SectionSearch::Status::found: return "found";
    case SectionSearch::Status::impossible: return "none-exists";
    default: return "none-within-bounds";
  }
}

SectionSearch find_section(const NSLattice& ns, const DivisorClass& e, Int y_bound, Int z_box) {
  ns.check(e);
  SectionSearch s;
  Int dl = ns.rank_L() == 0 ? 1 : to_small(abs(det(ns.L())));
  s.y_bound = y_bound > 0 ? y_bound : 4 * dl;
  s.z_box = z_box > 0 ? z_box : 2 * dl;
  s.divisibility = divisibility_of(ns, e);
  if (s.divisibility != 1) {
    s.status = SectionSearch::Status::impossible;
    return s;
  }
  const std::size_t r = ns.rank_L();
  auto accept = [&](const DivisorClass& c) {
    if (ns.self(c) != -2 || ns.pair(e, c) != 1) return false;
    s.status = SectionSearch::Status::found;
    s.section = c;
    return true;
  };
  if (e.y <= 0) {
    // E = F (or a class with β <= 0): scan y = 1 first, then the box
    for (Int y = 1; y <= s.y_bound; ++y) {
      Vec z(r, -s.z_box);
      while (true) {
        Int h = ns.half_neg_norm(z);
        if ((h - 1) % y == 0 && accept({y + (h - 1) / y, y, z})) return s;
        std::size_t i = 0;
        while (i < r) {
          if (++z[i] <= s.z_box) break;
          z[i] = -s.z_box;
          ++i;
        }
        if (i == r) break;
      }
    }
    return s;
  }
  // For C² = -2 and E·C = 1: v = yγ - βz satisfies -½‖v‖ = β(β + y).
  const Int beta = e.y;
  Int ylo = 1;
  Int yhi = std::min(s.y_bound, std::max<Int>(4, beta));
  while (ylo <= s.y_bound) {
    std::map<Int, std::vector<Vec>> shell;  // -½‖v‖ -> vectors (both signs)
    Int top = beta * (beta + yhi);
    shell[0].push_back(Vec(r, 0));
    if (r > 0)
      for (const auto& sv : short_vectors(ns.L(), 2 * top)) {
        Int h = -sv.norm / 2;
        if (h < beta * (beta + ylo)) continue;
        Vec neg = sv.v;
        for (auto& v : neg) v = -v;
        shell[h].push_back(sv.v);
        shell[h].push_back(neg);
      }
    for (Int y = ylo; y <= yhi; ++y) {
      auto it = shell.find(beta * (beta + y));
      if (it == shell.end()) continue;
      for (const auto& v : it->second) {
        Vec z(r);
        bool ok = true;
        for (std::size_t i = 0; i < r && ok; ++i) {
          Int num = y * e.z[i] - v[i];
          if (num % beta != 0) ok = false;
          z[i] = num / beta;
          if (z[i] > s.z_box || z[i] < -s.z_box) ok = false;
        }
        if (!ok) continue;
        Int h = ns.half_neg_norm(z);
        if ((h - 1) % y != 0) continue;
        if (accept({y + (h - 1) / y, y, z})) return s;
      }
    }
    ylo = yhi + 1;
    yhi = std::min(s.y_bound, 2 * yhi);
  }
  return s;
}

std::vector<FibrationClass> find_fibrations(const NSLattice& ns, Int beta, bool with_sections, bool nef_only) {
  if (beta < 2) throw PreconditionError("β must be at least 2");
  const std::size_t r = ns.rank_L();
  std::vector<FibrationClass> out;
  Vec g(r, 0);
  while (true) {
    if (auto e = complete_isotropic(ns, beta, g); e && class_gcd(*e) == 1) {
      FibrationClass fc{*e, is_nef_isotropic(ns, *e), std::nullopt};
      if (!nef_only || is_nef(fc.verdict.status)) {
        if (with_sections && is_nef(fc.verdict.status)) fc.section = find_section(ns, fc.e);
        out.push_back(std::move(fc));
      }
    }
    // lexicographic increment, last coordinate fastest
    std::size_t i = r;
    while (i-- > 0) {
      if (++g[i] < beta) break;
      g[i] = 0;
    }
    if (i > r) break;  // wrapped around (i underflowed)
  }
  return out;
}

const char* to_string(ExtensionVerdict v) {
  return v == ExtensionVerdict::positive_entropy ? "positive-entropy" : "inconclusive";
}

bool extension_det_condition(const BigInt& det_l, const BigInt& det_sub, std::size_t rank_l) {
  BigInt a = abs(det_l), b = 2 * abs(det_sub);
  return a > b || (a == b && rank_l + 2 <= 10);
}

ExtensionVerdict extension_criterion(const Lattice& l, const Mat& sub, bool sub_has_positive_entropy) {
  require_even(l.gram);
  if (sub.size() + 1 != l.rank()) throw PreconditionError("sublattice must have corank 1");
  BigMat s = to_big(sub);
  BigMat h = hnf_rows(s);
  if (h.size() != sub.size()) throw PreconditionError("sublattice generators are dependent");
  if (saturate_rows(s) != h) throw PreconditionError("sublattice is not primitive");
  if (!sub_has_positive_entropy) return ExtensionVerdict::inconclusive;
  BigInt ds = determinant(gram_of_rows(to_big(l.gram), s));
  return extension_det_condition(det(l), ds, l.rank()) ? ExtensionVerdict::positive_entropy
                                                         : ExtensionVerdict::inconclusive;
}

}  // namespace k3e
