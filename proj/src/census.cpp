#include "k3e/census.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace k3e {

namespace {

int type_rank(char t) { return t == 'E' ? 0 : t == 'D' ? 1 : 2; }

bool canonical_less(const RootComponent& a, const RootComponent& b) {
  if (type_rank(a.type) != type_rank(b.type)) return type_rank(a.type) < type_rank(b.type);
  return a.n > b.n;
}

void validate(const RootComponent& c) {
  bool ok = (c.type == 'A' && c.n >= 1) || (c.type == 'D' && c.n >= 4) || (c.type == 'E' && c.n >= 6 && c.n <= 8);
  if (!ok) throw ParseError("invalid root component " + std::string(1, c.type) + std::to_string(c.n));
}

BigInt component_det(const RootComponent& c) {
  if (c.type == 'A') return c.n + 1;
  if (c.type == 'D') return 4;
  return 9 - c.n;  // E6: 3, E7: 2, E8: 1
}

Lattice component_lattice(const RootComponent& c) {
  if (c.type == 'A') return root_lattice_A(c.n);
  if (c.type == 'D') return root_lattice_D(c.n);
  return root_lattice_E(c.n);
}

Int to_int(const std::string& s, const std::string& whole) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) || s.size() > 3)
    throw ParseError("bad number in root system '" + whole + "'");
  return std::stoll(s);
}

}  // namespace

RootSystem RootSystem::parse(const std::string& s) {
  RootSystem r;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    tok.erase(std::remove(tok.begin(), tok.end(), ' '), tok.end());
    if (tok.empty()) throw ParseError("empty summand in '" + s + "'");
    char t = tok[0];
    if (t != 'A' && t != 'D' && t != 'E') throw ParseError("unknown root type in '" + s + "'");
    auto caret = tok.find('^');
    Int n = to_int(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), s);
    Int mult = caret == std::string::npos ? 1 : to_int(tok.substr(caret + 1), s);
    if (mult < 1) throw ParseError("bad multiplicity in '" + s + "'");
    RootComponent c{t, static_cast<int>(n)};
    validate(c);
    for (Int i = 0; i < mult; ++i) r.parts.push_back(c);
  }
  if (r.parts.empty()) throw ParseError("empty root system");
  r.normalize();
  return r;
}

RootSystem RootSystem::of_lattice(const Lattice& l) {
  RootSublattice rs = root_sublattice(l);
  if (rs.lattice.rank() != l.rank()) throw PreconditionError("not a root lattice: root rank is smaller");
  RootSystem r;
  for (const auto& name : root_system_type(l)) {
    RootComponent c{name[0], std::stoi(name.substr(1))};
    r.parts.push_back(c);
  }
  r.normalize();
  if (abs(k3e::det(l)) != r.det()) throw PreconditionError("not a root lattice: proper root-overlattice");
  return r;
}

void RootSystem::normalize() { std::sort(parts.begin(), parts.end(), canonical_less); }

std::string RootSystem::name() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    if (!out.empty()) out += "+";
    out += std::string(1, parts[i].type) + std::to_string(parts[i].n);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out.empty() ? "0" : out;
}

int RootSystem::rank() const {
  int r = 0;
  for (const auto& c : parts) r += c.n;
  return r;
}

BigInt RootSystem::det() const {
  BigInt d = 1;
  for (const auto& c : parts) d *= component_det(c);
  return d;
}

int RootSystem::euler_min() const {
  int e = 0;
  for (const auto& c : parts) e += c.type == 'A' ? c.n + 1 : c.n + 2;
  return e;
}

bool RootSystem::has_DE() const {
  return std::any_of(parts.begin(), parts.end(), [](const RootComponent& c) { return c.type != 'A'; });
}

Lattice RootSystem::lattice() const {
  std::vector<Lattice> ls;
  for (const auto& c : parts) ls.push_back(component_lattice(c));
  Lattice l = direct_sum(ls);
  l.name = name();
  return l;
}

bool c1_euler(const RootSystem& r) { return r.euler_min() <= 24; }

bool c2_torsion(const RootSystem& r, Int k) {
  if (!r.has_DE()) return true;
  BigInt g = 0;
  for (const auto& c : r.parts)
    if (c.type != 'A') g = big_gcd(g, component_det(c));
  return g % k == 0;
}

std::vector<RootSystem> root_census(int rmin, int rmax) {
  if (rmin < 1 || rmax > tables::kDeltaMaxRank || rmin > rmax)
    throw PreconditionError("rank range must lie within 1.." + std::to_string(tables::kDeltaMaxRank));
  std::vector<RootComponent> atoms;
  for (int n = 8; n >= 6; --n) atoms.push_back({'E', n});
  for (int n = rmax; n >= 4; --n) atoms.push_back({'D', n});
  for (int n = rmax; n >= 1; --n) atoms.push_back({'A', n});
  std::vector<RootSystem> out;
  RootSystem cur;
  // non-decreasing atom index keeps each multiset once; C1 bounds the depth
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t from, int rank, int euler) {
    if (rank >= rmin && cur.det() >= tables::delta_r(rank)) out.push_back(cur);
    for (std::size_t i = from; i < atoms.size(); ++i) {
      const auto& a = atoms[i];
      int e = a.type == 'A' ? a.n + 1 : a.n + 2;
      if (rank + a.n > rmax || euler + e > 24) continue;
      cur.parts.push_back(a);
      rec(i, rank + a.n, euler + e);
      cur.parts.pop_back();
    }
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end(), [](const RootSystem& a, const RootSystem& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    return a.name() < b.name();
  });
  return out;
}

std::vector<tables::TorsionGroup> admissible_groups(const RootSystem& r) {
  std::vector<tables::TorsionGroup> out;
  BigInt d = r.det();
  for (const auto& g : tables::torsion_groups()) {
    BigInt k = g.order();
    if (d % (k * k) != 0) continue;
    if (d / (k * k) < tables::delta_r(r.rank())) continue;
    if (!c2_torsion(r, g.order())) continue;
    out.push_back(g);
  }
  return out;
}

namespace {

using Key = std::vector<std::size_t>;

Key subgroup_key(const DiscriminantForm& a, const std::vector<Elem>& elems) {
  Key k;
  k.reserve(elems.size());
  for (const auto& e : elems) k.push_back(a.index(e));
  std::sort(k.begin(), k.end());
  return k;
}

struct Subgroup {
  std::vector<Elem> gens;
  Key key;
};

// Isotropic subgroups of A isomorphic to Z/n (one invariant) or Z/n1 x Z/n2.
std::vector<Subgroup> isotropic_subgroups(const DiscriminantForm& a, const std::vector<Int>& inv, std::size_t cap) {
  std::vector<Subgroup> out;
  if (inv.empty()) {
    out.push_back({{}, subgroup_key(a, {a.zero()})});
    return out;
  }
  std::map<Int, std::vector<Elem>> by_order;
  std::set<Int> wanted(inv.begin(), inv.end());
  a.for_each([&](const Elem& s) {
    Int o = a.element_order(s);
    if (wanted.count(o) && a.q(s) == 0) by_order[o].push_back(s);
    return true;
  });
  Int order = 1;
  for (Int n : inv) order *= n;
  std::set<Key> seen;
  auto consider = [&](std::vector<Elem> gens) {
    auto elems = subgroup_elements(a, gens, static_cast<std::size_t>(order) + 1);
    if (static_cast<Int>(elems.size()) != order) return;
    Key k = subgroup_key(a, elems);
    if (!seen.insert(k).second) return;
    out.push_back({std::move(gens), std::move(k)});
    if (out.size() > cap) throw CapExceeded("isotropic subgroup cap");
  };
  if (inv.size() == 1) {
    for (const auto& s : by_order[inv[0]]) consider({s});
  } else {
    for (const auto& s2 : by_order[inv[1]])
      for (const auto& s1 : by_order[inv[0]])
        if (a.b(s1, s2) == 0) consider({s1, s2});
  }
  return out;
}

}  // namespace

OverlatticeCensus overlattice_census(const Lattice& r, const std::string& group, const CensusOptions& opt) {
  require_even(r.gram);
  OverlatticeCensus c;
  c.root = r.name.empty() ? "R" : r.name;
  std::vector<Int> inv;
  if (group == "1" || group == "trivial") {
    c.group = "1";
  } else {
    const auto& g = tables::torsion_group(group);
    c.group = g.name;
    inv = g.invariants;
  }
  Int order = 1;
  for (Int n : inv) order *= n;
  BigInt d = abs(det(r));
  if (d % (BigInt(order) * order) != 0)
    throw PreconditionError("group " + c.group + " not admissible: " + std::to_string(order * order) + " does not divide det " +
                            d.str());
  DiscriminantForm a = discriminant_form(r);
  auto subs = isotropic_subgroups(a, inv, opt.subgroup_cap);
  c.subgroups = subs.size();

  AutGroup aut = automorphism_group(r, opt.aut_node_cap);
  c.complete = aut.complete;
  std::vector<FormMap> acts;
  for (const auto& m : aut.generators) acts.push_back(induced_discriminant_action(r, a, m));

  std::map<Key, std::size_t> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index[subs[i].key] = i;
  std::vector<int> orbit(subs.size(), -1);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (orbit[i] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(i);
    orbit[i] = id;
    std::vector<std::size_t> queue{i};
    while (!queue.empty()) {
      std::size_t cur = queue.back();
      queue.pop_back();
      for (const auto& act : acts) {
        std::vector<Elem> img;
        for (std::size_t idx : subs[cur].key) img.push_back(apply_form_map(a, act, a.from_index(idx)));
        auto it = index.find(subgroup_key(a, img));
        if (it == index.end()) throw std::logic_error("automorphism moved an isotropic subgroup out of the list");
        if (orbit[it->second] < 0) {
          orbit[it->second] = id;
          queue.push_back(it->second);
        }
      }
    }
  }
  c.orbits = reps.size();

  const std::size_t base_roots = roots(r).size();
  for (std::size_t i : reps) {
    Overlattice m = overlattice(r, a, subs[i].gens);
    if (roots(m.lattice).size() > base_roots) {
      ++c.discarded_norm2;
      continue;
    }
    bool dup = false;
    for (const auto& e : c.overlattices)
      if (same_genus(e.lattice, m.lattice) == Tri::yes) {
        dup = true;
        break;
      }
    if (!dup) c.overlattices.push_back({m.lattice, subs[i].gens});
  }
  return c;
}

const char* to_string(Main10Verdict::Status s) {
  switch (s) {
    case Main10Verdict::Status::witness: return "witness";
    case Main10Verdict::Status::excluded: return "excluded";
    default: return "unknown";
  }
}

const char* to_string(AdeRecord::Status s) {
  switch (s) {
    case AdeRecord::Status::added: return "added";
    case AdeRecord::Status::covered: return "covered";
    default: return "error-exit";
  }
}

namespace {

bool good_witness(const Lattice& n) {
  Int m = minimum(n);
  return (m == 2 || m == -2) && !is_root_overlattice(n);
}

// Sub-sums R_J of r ordered by rank then name, each multiset once; the full sum comes last.
std::vector<std::pair<RootSystem, RootSystem>> sub_sums(const RootSystem& r) {
  std::map<RootComponent, int, decltype(&canonical_less)> count(&canonical_less);
  for (const auto& c : r.parts) count[c]++;
  std::vector<std::pair<RootComponent, int>> kinds(count.begin(), count.end());
  std::vector<std::pair<RootSystem, RootSystem>> out;
  std::vector<int> take(kinds.size(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < kinds.size() && ++take[i] > kinds[i].second) take[i++] = 0;
    if (i == kinds.size()) break;
    RootSystem j, rest;
    for (std::size_t t = 0; t < kinds.size(); ++t) {
      for (int u = 0; u < take[t]; ++u) j.parts.push_back(kinds[t].first);
      for (int u = take[t]; u < kinds[t].second; ++u) rest.parts.push_back(kinds[t].first);
    }
    j.normalize();
    rest.normalize();
    out.emplace_back(j, rest);
  }
  std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    bool fx = x.second.parts.empty(), fy = y.second.parts.empty();
    if (fx != fy) return fy;
    if (x.first.rank() != y.first.rank()) return x.first.rank() < y.first.rank();
    return x.first.name() < y.first.name();
  });
  return out;
}

std::optional<Lattice> subsum_witness(const RootSystem& j, Main10Context& ctx, const Main10Options& opt) {
  std::string key = j.name();
  auto it = ctx.subsum_witness.find(key);
  if (it != ctx.subsum_witness.end()) return it->second;
  std::optional<Lattice> w;
  bool complete = false;
  try {
    WitnessSearch s = genus_non_root_overlattice_witness(j.lattice(), opt.explore);
    w = s.witness;
    complete = s.status != WitnessSearch::Status::unknown;
  } catch (const PreconditionError&) {
  }
  ctx.subsum_witness[key] = w;
  ctx.subsum_complete[key] = complete;
  return w;
}

// Glue of r_prime over its root sublattice, as generators in A_R.
std::vector<Elem> glue_of(const Lattice& r_prime, const RootSublattice& rs, const DiscriminantForm& a) {
  BigMat b = to_big(rs.basis);
  const std::size_t n = b.size();
  BigInt d = determinant(b);
  // rows of adj(B) / det(B) express the basis of R' in the basis of R
  BigMat adj(n, BigVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BigMat minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        BigVec row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(b[r][c]);
        minor.push_back(row);
      }
      BigInt m = determinant(minor);
      adj[i][j] = ((i + j) % 2 ? -m : m);
    }
  if (d < 0) {
    d = -d;
    for (auto& row : adj)
      for (auto& x : row) x = -x;
  }
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Elem e = a.reduce_dual(rs.lattice.gram, to_small(adj[i]), to_small(d));
    if (a.element_order(e) > 1) gens.push_back(e);
  }
  (void)r_prime;
  return gens;
}

}  // namespace

Main10Verdict main10_verify(const Lattice& r_prime, Main10Context& ctx, const Main10Options& opt) {
  require_even(r_prime.gram);
  Main10Verdict v;
  for (const auto& ex : tables::finite_automorphism_exceptions()) {
    Lattice e = parse_builtin(ex);
    if (e.rank() == r_prime.rank() && abs(det(e)) == abs(det(r_prime)) && is_isometric(e, r_prime).found == Tri::yes) {
      v.status = Main10Verdict::Status::excluded;
      v.method = "exception";
      v.detail = ex + " has finite automorphism group";
      return v;
    }
  }
  RootSublattice rs = root_sublattice(r_prime);
  if (rs.lattice.rank() != r_prime.rank()) throw PreconditionError("not a root-overlattice");
  RootSystem sys;
  for (const auto& name : root_system_type(r_prime)) sys.parts.push_back({name[0], std::stoi(name.substr(1))});
  sys.normalize();
  const bool glued = abs(det(rs.lattice)) != abs(det(r_prime));

  DiscriminantForm a_r;
  std::vector<Elem> glue;
  if (glued) {
    a_r = discriminant_form(rs.lattice);
    glue = glue_of(r_prime, rs, a_r);
  }

  for (const auto& [j, rest] : sub_sums(sys)) {
    auto nj = subsum_witness(j, ctx, opt);
    if (!nj) continue;
    std::vector<Lattice> parts{*nj};
    if (!rest.parts.empty()) parts.push_back(rest.lattice());
    Lattice n = direct_sum(parts);
    if (!glued) {
      if (good_witness(n) && same_genus(n, r_prime) == Tri::yes) {
        v.status = Main10Verdict::Status::witness;
        v.witness = n;
        v.method = "sub-sum";
        v.detail = "genus-mate of " + j.name() + (rest.parts.empty() ? "" : " plus " + rest.name());
        return v;
      }
      continue;
    }
    // transport the glue of R' through A_R ≅ A_N, then scan other isotropic subgroups of A_N
    DiscriminantForm a_n = discriminant_form(n);
    FormIsoResult phi = find_form_isometry(a_r, a_n);
    if (phi.found != Tri::yes) continue;
    std::vector<std::vector<Elem>> tries;
    {
      std::vector<Elem> img;
      for (const auto& g : glue) img.push_back(apply_form_map(a_n, phi.map, g));
      tries.push_back(img);
    }
    Int order = static_cast<Int>(subgroup_elements(a_r, glue).size());
    std::vector<Int> inv;
    {
      // invariants of the glue group from its element orders
      Int expo = 1;
      for (const auto& e : subgroup_elements(a_r, glue)) expo = std::lcm(expo, a_r.element_order(e));
      inv = expo == order ? std::vector<Int>{order} : std::vector<Int>{order / expo, expo};
    }
    try {
      for (auto& s : isotropic_subgroups(a_n, inv, opt.subgroup_cap)) tries.push_back(s.gens);
    } catch (const CapExceeded&) {
    }
    for (const auto& t : tries) {
      if (!is_isotropic_set(a_n, t)) continue;
      Lattice p = overlattice(n, a_n, t).lattice;
      if (good_witness(p) && same_genus(p, r_prime) == Tri::yes) {
        v.status = Main10Verdict::Status::witness;
        v.witness = p;
        v.method = "sub-sum overlattice";
        v.detail = "overlattice of a genus-mate of " + j.name() + (rest.parts.empty() ? "" : " plus " + rest.name());
        return v;
      }
    }
  }

  std::size_t visited = 0;
  for (Int p : {2, 3, 5}) {
    if (!neighbor_prime_admissible(r_prime, p)) continue;
    std::optional<Lattice> found;
    for_each_neighbor(r_prime, p, [&](const Lattice& nb) {
      if (++visited > opt.neighbor_cap) return false;
      if (good_witness(nb)) {
        found = nb;
        return false;
      }
      return true;
    });
    if (found) {
      v.status = Main10Verdict::Status::witness;
      v.witness = found;
      v.method = "p-neighbor";
      v.detail = "p = " + std::to_string(p);
      return v;
    }
    if (visited > opt.neighbor_cap) break;
  }
  v.detail = "no witness among sub-sums and " + std::to_string(std::min(visited, opt.neighbor_cap)) + " neighbors";
  return v;
}

std::vector<AdeRecord> ade_cover(const std::vector<RootSystem>& census, Main10Context& ctx, const Main10Options& opt) {
  std::vector<AdeRecord> out;
  std::vector<RootSystem> covers;
  auto contains = [](const RootSystem& big, const RootSystem& small) {
    std::multiset<RootComponent> b(big.parts.begin(), big.parts.end());
    for (const auto& c : small.parts) {
      auto it = b.find(c);
      if (it == b.end()) return false;
      b.erase(it);
    }
    return true;
  };
  for (const auto& r : census) {
    AdeRecord rec;
    rec.system = r;
    for (const auto& c : covers)
      if (contains(r, c)) {
        rec.status = AdeRecord::Status::covered;
        rec.via = c;
        break;
      }
    if (rec.status != AdeRecord::Status::covered) {
      for (const auto& [j, rest] : sub_sums(r)) {
        if (subsum_witness(j, ctx, opt)) {
          rec.status = AdeRecord::Status::added;
          rec.via = j;
          covers.push_back(j);
          break;
        }
      }
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace k3e
