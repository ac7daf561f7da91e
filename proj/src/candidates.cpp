#include "k3e/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "k3e/tables.hpp"

namespace k3e {

namespace {

Int abs_det(const Lattice& l) { return to_small(abs(det(l))); }

// Reduced positive forms (then negated) with det in [lo, hi]. Every isometry
// class has at least one representative; duplicates are removed by the caller.
std::vector<Mat> reduced_forms(int rank, Int lo, Int hi) {
  std::vector<Mat> out;
  if (rank == 2) {
    // 2k1 x² + 2a xy + 2k2 y², 0 <= a <= k1 <= k2
    for (Int k1 = 1; 3 * k1 * k1 <= hi; ++k1)
      for (Int k2 = k1; 4 * k1 * k2 - k1 * k1 <= hi; ++k2)
        for (Int a = 0; a <= k1; ++a) {
          Int d = 4 * k1 * k2 - a * a;
          if (d >= lo && d <= hi) out.push_back({{-2 * k1, a}, {a, -2 * k2}});
        }
    return out;
  }
  if (rank != 3) throw PreconditionError("class enumeration supports rank 2 and 3");
  // Minkowski-reduced ternary: a <= b <= c, |2f|, |2e| <= a, |2d| <= b, abc <= 2 det.
  for (Int a = 2; a * a * a <= 2 * hi; a += 2)
    for (Int b = a; a * b * b <= 2 * hi; b += 2)
      for (Int c = b; a * b * c <= 2 * hi; c += 2)
        for (Int f = 0; 2 * f <= a; ++f)
          for (Int e = 0; 2 * e <= a; ++e)
            for (Int d = -b / 2; d <= b / 2; ++d) {
              Int dt = a * b * c + 2 * f * d * e - a * d * d - b * e * e - c * f * f;
              if (dt < lo || dt > hi || a * b * c > 2 * dt) continue;
              if (a * b - f * f <= 0) continue;
              out.push_back({{-a, -f, -e}, {-f, -b, -d}, {-e, -d, -c}});
            }
  return out;
}

std::vector<Lattice> dedupe_classes(const std::vector<Mat>& forms) {
  std::map<std::pair<Int, std::vector<Int>>, std::vector<std::size_t>> buckets;
  std::vector<Lattice> reps;
  for (const auto& g : forms) {
    Lattice l(g);
    Fingerprint fp = fingerprint(l, 8);
    auto& bucket = buckets[{abs_det(l), fp.counts}];
    bool dup = false;
    for (std::size_t idx : bucket) {
      auto r = is_isometric(reps[idx], l);
      if (r.found == Tri::unknown) throw CapExceeded("isometry search capped during class enumeration");
      if (r.found == Tri::yes) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      bucket.push_back(reps.size());
      reps.push_back(std::move(l));
    }
  }
  std::sort(reps.begin(), reps.end(), [](const Lattice& x, const Lattice& y) {
    Int dx = abs_det(x), dy = abs_det(y);
    if (dx != dy) return dx < dy;
    return x.gram > y.gram;
  });
  return reps;
}

std::vector<Lattice> classes_of_det(int rank, Int d) { return dedupe_classes(reduced_forms(rank, d, d)); }

Mat principal_minor(const Mat& g, std::size_t drop) {
  Mat out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i == drop) continue;
    Vec row;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (j != drop) row.push_back(g[i][j]);
    out.push_back(row);
  }
  return out;
}

Mat coordinate_rows(std::size_t n, std::size_t drop) {
  Mat rows;
  for (std::size_t i = 0; i < n; ++i)
    if (i != drop) {
      Vec r(n, 0);
      r[i] = 1;
      rows.push_back(r);
    }
  return rows;
}

// adj(G) = det(G) G^{-1}
Mat adjugate(const Mat& g) {
  std::size_t n = g.size();
  Mat adj(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        Vec row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(g[r][c]);
        minor.push_back(row);
      }
      Int m = n == 1 ? 1 : to_small(determinant(minor));
      adj[i][j] = ((i + j) % 2 == 0) ? m : -m;
    }
  return adj;
}

bool in_zero_entropy_k(Int k) {
  const auto& l1 = tables::zero_entropy_k();
  return std::find(l1.begin(), l1.end(), k) != l1.end();
}

std::vector<Int> divisors_above_one(Int n) {
  std::vector<Int> out;
  for (Int d = 2; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace

std::vector<Lattice> enumerate_classes(int rank, Int det_max) {
  return dedupe_classes(reduced_forms(rank, 1, det_max));
}

std::vector<Lattice> one_class_genera(const std::vector<Lattice>& classes) {
  std::map<std::pair<Int, std::vector<std::pair<Int, Int>>>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < classes.size(); ++i)
    groups[{abs_det(classes[i]), discriminant_form(classes[i]).value_profile()}].push_back(i);
  std::vector<Lattice> out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& g = groups[{abs_det(classes[i]), discriminant_form(classes[i]).value_profile()}];
    bool alone = true;
    for (std::size_t j : g) {
      if (j == i) continue;
      Tri t = same_genus(classes[i], classes[j]);
      if (t == Tri::unknown) throw CapExceeded("genus comparison capped");
      if (t == Tri::yes) {
        alone = false;
        break;
      }
    }
    if (alone) out.push_back(classes[i]);
  }
  return out;
}

Catalog build_catalog(int rank, Int det_max) {
  Catalog c;
  c.rank = rank;
  c.det_max = det_max;
  for (auto& l : one_class_genera(enumerate_classes(rank, det_max)))
    if (primitive_scale_divisor(l) == 1) c.lattices.push_back(std::move(l));
  return c;
}

CatalogCheck verify_catalog(const Catalog& c, Int det_limit, int rank_limit) {
  CatalogCheck r;
  for (const auto& l : c.lattices) {
    if (static_cast<int>(l.rank()) > rank_limit || abs_det(l) > det_limit) continue;
    ++r.checked;
    ExploreOptions opt;
    opt.max_classes = 8;
    opt.max_steps = 2048;
    Uniqueness u;
    try {
      u = unique_in_genus(l, opt);
    } catch (const PreconditionError&) {
      ++r.skipped;  // no admissible neighbor prime
      continue;
    }
    if (u.unique == Tri::yes) {
      ++r.confirmed;
    } else if (u.unique == Tri::no) {
      std::string g;
      for (const auto& row : l.gram)
        for (Int v : row) g += std::to_string(v) + " ";
      r.mismatches.push_back(g);
    } else {
      ++r.skipped;
    }
  }
  return r;
}

bool genus_in_list(const Lattice& l, const std::vector<Lattice>& list) {
  Int d = abs_det(l);
  for (const auto& m : list) {
    if (m.rank() != l.rank() || abs_det(m) != d) continue;
    Tri t = same_genus(l, m);
    if (t == Tri::unknown) throw CapExceeded("genus comparison capped");
    if (t == Tri::yes) return true;
  }
  return false;
}

CandidateList rank2_candidates() {
  CandidateList out;
  out.rank = 2;
  const Int kmax = tables::zero_entropy_k().back();
  // A primitive basis vector of norm -2k2 with k2 outside the list and
  // 4k2 <= det already eliminates the form, so k2 <= max of the list.
  for (Int k1 = 2; k1 <= kmax; ++k1)
    for (Int k2 = k1; k2 <= kmax; ++k2)
      for (Int a = 0; a <= k1; ++a) {
        Lattice l(Mat{{-2 * k1, a}, {a, -2 * k2}});
        Int d = abs_det(l);
        CandidateRecord rec;
        rec.lattice = l;
        rec.source = "reduced form (" + std::to_string(k1) + "," + std::to_string(a) + "," + std::to_string(k2) + ")";
        bool killed = false;
        for (const auto& sv : short_vectors(l, d / 2)) {
          Int k = -sv.norm / 2;
          if (4 * k > d || in_zero_entropy_k(k) || gcd_vec(sv.v) != 1) continue;
          rec.eliminated = "primitive <" + std::to_string(sv.norm) + "> with |det| >= 4k";
          rec.elim_sub = {sv.v};
          rec.elim_sub_det = sv.norm;
          killed = true;
          break;
        }
        if (killed) continue;  // not recorded: the sweep is large
        auto cls = classes_of_det(2, d);
        std::vector<Lattice> others;
        for (const auto& c : cls)
          if (is_isometric(c, l).found != Tri::yes) others.push_back(c);
        if (genus_in_list(l, others)) continue;
        out.members.push_back(std::move(rec));
      }
  return out;
}

CandidateList candidate_step(const CandidateList& ln, const Catalog& catalog, const StepOptions& opt) {
  const int n = ln.rank;
  if (n < 2) throw PreconditionError("candidate_step needs n >= 2");
  if (catalog.rank != n + 1) throw PreconditionError("catalog of rank " + std::to_string(n + 1) + " required");
  std::vector<Lattice> prev;
  Int bn = 1;
  for (const auto& r : ln.members) {
    prev.push_back(r.lattice);
    bn = std::max(bn, primitive_scale_divisor(r.lattice));
  }
  const bool strict = n >= 8;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Int> coord(-opt.height, opt.height);

  CandidateList out;
  out.rank = n + 1;
  for (std::size_t idx = 0; idx < catalog.lattices.size(); ++idx) {
    const Lattice& base = catalog.lattices[idx];
    BigInt dl = abs(det(base));
    BigInt dsub = abs(determinant(principal_minor(base.gram, static_cast<std::size_t>(n))));
    // c(L): least integer >= (or > when strict) 2|det L'| / |det L|
    BigInt num = 2 * dsub;
    Int c = to_small(strict ? BigInt(num / dl + 1) : BigInt((num + dl - 1) / dl));
    Int d = std::max(bn, c);
    for (Int m = 1; m <= d; ++m) {
      Lattice lm = rescale(base, m);
      if (minimum(lm) == 2) continue;
      CandidateRecord rec;
      rec.lattice = lm;
      rec.multiple = m;
      rec.b = bn;
      rec.c = c;
      rec.d = d;
      rec.source = "catalog #" + std::to_string(idx) + ", m=" + std::to_string(m);
      BigInt dm = abs(det(lm));
      auto try_sub = [&](const Mat& rows, const char* how) {
        BigInt ds = abs(determinant(gram_of_rows(lm.gram, rows)));
        bool big = strict ? dm > 2 * ds : dm >= 2 * ds;
        if (!big) return false;
        Lattice sub(gram_of_rows(lm.gram, rows));
        if (genus_in_list(sub, prev)) return false;
        rec.eliminated = how;
        rec.elim_sub = rows;
        rec.elim_sub_det = ds;
        return true;
      };
      bool gone = false;
      for (std::size_t drop = 0; drop <= static_cast<std::size_t>(n) && !gone; ++drop)
        gone = try_sub(coordinate_rows(static_cast<std::size_t>(n) + 1, drop), "principal minor");
      for (int t = 0; t < opt.random_trials && !gone; ++t) {
        Vec w(static_cast<std::size_t>(n) + 1);
        for (auto& x : w) x = coord(rng);
        if (gcd_vec(w) != 1) continue;
        BigMat k = kernel_basis(BigMat{to_big(w)});  // {x : w·x = 0}
        gone = try_sub(to_small(k), "random corank-1 sublattice");
      }
      if (!gone && opt.exhaustive) {
        // ker(w) has |det| = |det L| * |w^T G^{-1} w|, so the sublattices with
        // |det L| >= 2|det L''| are the kernels of dual vectors with
        // |w^T adj(G) w| <= |det L| / 2.
        Mat twice_adj = adjugate(lm.gram);
        for (auto& row : twice_adj)
          for (auto& x : row) x *= 2;
        Lattice dual(twice_adj);
        for (const auto& sv : short_vectors(dual, to_small(dm))) {
          if (gcd_vec(sv.v) != 1) continue;
          if (try_sub(to_small(kernel_basis(BigMat{to_big(sv.v)})), "corank-1 sublattice (dual sweep)")) {
            gone = true;
            break;
          }
        }
      }
      (gone ? out.removed : out.members).push_back(std::move(rec));
    }
  }
  return out;
}

CandidateList fibration_filter(const CandidateList& in, const FilterOptions& opt) {
  CandidateList out;
  out.rank = in.rank;
  out.complete = in.complete;
  out.removed = in.removed;
  for (const auto& rec0 : in.members) {
    CandidateRecord rec = rec0;
    NSLattice ns(rec.lattice);
    Int d = abs_det(rec.lattice);
    bool gone = false;
    for (Int beta : divisors_above_one(d)) {
      double work = std::pow(static_cast<double>(beta), static_cast<double>(rec.lattice.rank()));
      if (work > static_cast<double>(opt.gamma_budget)) {
        out.complete = false;
        break;
      }
      for (const auto& f : find_fibrations(ns, beta, false, true)) {
        if (f.verdict.divisibility != 1) continue;
        auto s = find_section(ns, f.e, opt.y_bound, opt.z_box);
        if (s.status != SectionSearch::Status::found) continue;
        rec.eliminated = "second elliptic fibration with a section";
        rec.elim_fiber = f.e;
        rec.elim_section = s.section;
        gone = true;
        break;
      }
      if (gone) break;
    }
    (gone ? out.removed : out.members).push_back(std::move(rec));
  }
  return out;
}

}  // namespace k3e
