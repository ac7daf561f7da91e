#include "k3e/discform.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "k3e/intmath.hpp"

namespace k3e {

Fraction Fraction::make(Int n, Int d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Int g = std::gcd(n, d);
  if (g == 0) g = 1;
  return {n / g, d / g};
}

std::string Fraction::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Int DiscriminantForm::size() const {
  Int s = 1;
  for (Int d : orders) {
    if (s > (Int(1) << 62) / d) throw CapExceeded("discriminant group too large");
    s *= d;
  }
  return s;
}

Int DiscriminantForm::q(const Elem& a) const {
  const Int m2 = 2 * exponent;
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    s += static_cast<__int128>(a[i]) * a[i] % m2 * qnum[i];
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[j] != 0) s += static_cast<__int128>(2) * (static_cast<__int128>(a[i]) * a[j] % m2) * bnum[i][j];
    s %= m2;
  }
  Int r = static_cast<Int>(s % m2);
  return r < 0 ? r + m2 : r;
}

Int DiscriminantForm::b(const Elem& a, const Elem& c) const {
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0) s += static_cast<__int128>(a[i]) * c[j] % exponent * bnum[i][j];
    s %= exponent;
  }
  Int r = static_cast<Int>(s % exponent);
  return r < 0 ? r + exponent : r;
}

Fraction DiscriminantForm::q_fraction(const Elem& a) const { return Fraction::make(q(a), exponent); }
Fraction DiscriminantForm::b_fraction(const Elem& a, const Elem& c) const {
  return Fraction::make(b(a, c), exponent);
}

Elem DiscriminantForm::add(const Elem& a, const Elem& c) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + c[i]) % orders[i];
  return r;
}

Elem DiscriminantForm::scale(const Elem& a, Int k) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = floor_mod(static_cast<Int>(static_cast<__int128>(a[i]) * floor_mod(k, orders[i]) % orders[i]), orders[i]);
  return r;
}

Int DiscriminantForm::element_order(const Elem& a) const {
  Int o = 1;
  for (std::size_t i = 0; i < a.size(); ++i) o = std::lcm(o, orders[i] / std::gcd(orders[i], a[i]));
  return o;
}

Elem DiscriminantForm::generator(std::size_t i) const {
  Elem e = zero();
  e[i] = 1;
  return e;
}

void DiscriminantForm::for_each(const std::function<bool(const Elem&)>& f) const {
  size();  // cap check
  Elem a = zero();
  while (true) {
    if (!f(a)) return;
    std::size_t i = 0;
    while (i < a.size()) {
      if (++a[i] < orders[i]) break;
      a[i] = 0;
      ++i;
    }
    if (i == a.size()) return;
  }
}

std::size_t DiscriminantForm::index(const Elem& a) const {
  std::size_t idx = 0;
  for (std::size_t i = a.size(); i-- > 0;) idx = idx * static_cast<std::size_t>(orders[i]) + a[i];
  return idx;
}

Elem DiscriminantForm::from_index(std::size_t idx) const {
  Elem a(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    a[i] = static_cast<Int>(idx % orders[i]);
    idx /= orders[i];
  }
  return a;
}

Vec DiscriminantForm::lift_numerator(const Elem& a) const {
  std::size_t n = lift.empty() ? 0 : lift[0].size();
  Vec y(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Int f = a[i] * (exponent / orders[i]);
    for (std::size_t j = 0; j < n; ++j) y[j] += f * lift[i][j];
  }
  return y;
}

Elem DiscriminantForm::reduce_dual(const Mat& gram, const Vec& y, Int den) const {
  BigVec gy(gram.size(), 0);
  for (std::size_t i = 0; i < gram.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) gy[i] += BigInt(gram[i][j]) * y[j];
  for (auto& v : gy) {
    if (v % den != 0) throw PreconditionError("vector is not in the dual lattice");
    v /= den;
  }
  Elem a(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    BigInt s = 0;
    for (std::size_t j = 0; j < gy.size(); ++j) s += BigInt(urow[i][j]) * gy[j];
    a[i] = static_cast<Int>(floor_mod(s, BigInt(orders[i])));
  }
  return a;
}

std::vector<std::pair<Int, Int>> DiscriminantForm::value_profile() const {
  std::vector<std::pair<Int, Int>> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](const Elem& a) {
    out.emplace_back(element_order(a), q(a));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> subgroup_elements(const DiscriminantForm& a, const std::vector<Elem>& gens,
                                    std::size_t cap) {
  std::vector<Elem> out{a.zero()};
  std::unordered_set<std::size_t> seen{a.index(out[0])};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& g : gens) {
      Elem s = a.add(out[k], g);
      if (seen.insert(a.index(s)).second) {
        out.push_back(std::move(s));
        if (out.size() > cap) throw CapExceeded("subgroup enumeration cap");
      }
    }
  }
  return out;
}

bool is_isotropic_set(const DiscriminantForm& a, const std::vector<Elem>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (a.q(gens[i]) != 0) return false;
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (a.b(gens[i], gens[j]) != 0) return false;
  }
  return true;
}

namespace {

struct IsoSearch {
  const DiscriminantForm& a;
  const DiscriminantForm& b;
  std::vector<Elem> pool;                 // candidate images (elements of b)
  std::vector<std::vector<int>> initial;  // per generator of a: indices into pool
  std::size_t nodes = 0, node_cap;
  bool capped = false;
  FormMap current;
  std::function<bool(const FormMap&)> on_found;  // return false to stop

  IsoSearch(const DiscriminantForm& a_, const DiscriminantForm& b_, std::size_t cap)
      : a(a_), b(b_), node_cap(cap) {
    std::map<std::pair<Int, Int>, std::vector<int>> bucket;
    std::map<std::pair<Int, Int>, bool> wanted;
    for (std::size_t i = 0; i < a.ngens(); ++i) wanted[{a.orders[i], a.qnum[i]}] = true;
    b.for_each([&](const Elem& h) {
      std::pair<Int, Int> key{b.element_order(h), b.q(h)};
      if (wanted.count(key)) {
        bucket[key].push_back(static_cast<int>(pool.size()));
        pool.push_back(h);
      }
      return true;
    });
    initial.resize(a.ngens());
    for (std::size_t i = 0; i < a.ngens(); ++i) {
      auto it = bucket.find({a.orders[i], a.qnum[i]});
      if (it != bucket.end()) initial[i] = it->second;
    }
  }

  void run() {
    current.assign(a.ngens(), Elem{});
    std::vector<bool> assigned(a.ngens(), false);
    dfs(initial, assigned, 0);
  }

  // Forward checking: lists[j] holds the images still compatible with every
  // assignment made so far. Returns false when the search should stop.
  bool dfs(const std::vector<std::vector<int>>& lists, std::vector<bool>& assigned, std::size_t depth) {
    std::size_t n = a.ngens();
    if (depth == n) return on_found(current);
    if (++nodes > node_cap) {
      capped = true;
      return false;
    }
    std::size_t pick = n;
    for (std::size_t j = 0; j < n; ++j)
      if (!assigned[j] && (pick == n || lists[j].size() < lists[pick].size())) pick = j;
    assigned[pick] = true;
    std::vector<std::vector<int>> next(n);
    for (int hi : lists[pick]) {
      const Elem& h = pool[static_cast<std::size_t>(hi)];
      bool ok = true;
      std::vector<char> in_union(pool.size(), 0);
      std::size_t union_size = 0, remaining = 0;
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (assigned[j]) continue;
        ++remaining;
        next[j].clear();
        for (int ci : lists[j]) {
          if (ci == hi) continue;
          if (b.b(h, pool[static_cast<std::size_t>(ci)]) != a.bnum[pick][j]) continue;
          next[j].push_back(ci);
          if (!in_union[static_cast<std::size_t>(ci)]) {
            in_union[static_cast<std::size_t>(ci)] = 1;
            ++union_size;
          }
        }
        if (next[j].empty()) ok = false;
      }
      if (!ok || union_size < remaining) continue;
      current[pick] = h;
      if (!dfs(next, assigned, depth + 1)) {
        assigned[pick] = false;
        return false;
      }
    }
    assigned[pick] = false;
    return true;
  }
};

bool same_shape(const DiscriminantForm& a, const DiscriminantForm& b) {
  return a.orders == b.orders && a.exponent == b.exponent;
}

}  // namespace

FormIsoResult find_form_isometry(const DiscriminantForm& a, const DiscriminantForm& b,
                                 std::size_t node_cap) {
  FormIsoResult r;
  if (!same_shape(a, b)) return r;
  if (a.value_profile() != b.value_profile()) return r;
  IsoSearch s(a, b, node_cap);
  s.on_found = [&](const FormMap& m) {
    r.found = Tri::yes;
    r.map = m;
    return false;
  };
  s.run();
  if (r.found != Tri::yes && s.capped) r.found = Tri::unknown;
  return r;
}

FormGroup form_orthogonal_group(const DiscriminantForm& a, std::size_t order_cap, std::size_t node_cap) {
  if (a.size() > static_cast<Int>(order_cap))
    throw CapExceeded("|A_L| = " + std::to_string(a.size()) + " exceeds cap " + std::to_string(order_cap));
  FormGroup g;
  IsoSearch s(a, a, node_cap);
  s.on_found = [&](const FormMap& m) {
    g.elements.push_back(m);
    return true;
  };
  s.run();
  g.complete = !s.capped;
  return g;
}

Elem apply_form_map(const DiscriminantForm& a, const FormMap& m, const Elem& x) {
  Elem r = a.zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) r = a.add(r, a.scale(m[i], x[i]));
  return r;
}

FormMap compose_form_maps(const DiscriminantForm& a, const FormMap& f, const FormMap& g) {
  FormMap r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = apply_form_map(a, f, g[i]);
  return r;
}

}  // namespace k3e
