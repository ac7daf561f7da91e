#include "k3e/genus.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace k3e {

Tri same_genus(const Lattice& a, const Lattice& b, std::size_t node_cap) {
  if (a.rank() != b.rank()) return Tri::no;
  if (!is_even(a.gram) || !is_even(b.gram)) throw PreconditionError("same_genus needs even lattices");
  Signature sa = signature(a.gram), sb = signature(b.gram);
  if (sa.pos != sb.pos || sa.neg != sb.neg || sa.zero != sb.zero) return Tri::no;
  if (det(a) != det(b)) return Tri::no;
  return find_form_isometry(discriminant_form(a), discriminant_form(b), node_cap).found;
}

Int gram_content(const Lattice& l) {
  Int g = 0;
  for (const auto& row : l.gram)
    for (Int x : row) g = std::gcd(g, x);
  return g == 0 ? 1 : g;
}

static Mat divide(const Mat& g, Int c) {
  Mat r = g;
  for (auto& row : r)
    for (auto& x : row) x /= c;
  return r;
}

bool neighbor_prime_admissible(const Lattice& l, Int p) {
  BigInt d = determinant(divide(l.gram, gram_content(l)));
  return d % p != 0;
}

namespace {

Lattice reduced_form(const Mat& gram) {
  int sign = gram[0][0] < 0 ? -1 : 1;
  Mat g = gram;
  if (sign < 0)
    for (auto& row : g)
      for (auto& x : row) x = -x;
  Mat r = lll_reduce(g).gram;
  if (sign < 0)
    for (auto& row : r)
      for (auto& x : row) x = -x;
  return Lattice(r);
}

}  // namespace

void for_each_neighbor(const Lattice& l, Int p, const std::function<bool(const Lattice&)>& f) {
  if (p != 2 && p != 3 && p != 5 && p != 7) throw PreconditionError("neighbor prime must be 2, 3, 5 or 7");
  require_even(l.gram);
  Definiteness d = definiteness(l);
  if (d != Definiteness::positive && d != Definiteness::negative)
    throw PreconditionError("p-neighbors need a definite lattice");
  if (!neighbor_prime_admissible(l, p))
    throw PreconditionError("prime " + std::to_string(p) + " divides det(L/content)");
  const Int c = gram_content(l);
  const Mat g = divide(l.gram, c);
  const bool reduced_even = is_even(g);
  const bool guaranteed = c == 1;  // then every neighbor lies in the genus of l
  const std::size_t n = l.rank();

  auto emit = [&](const Vec& vlift, std::size_t j, const Vec& w) -> bool {
    // generators of p * N: p*p*e_j, p*(e_i - a_i e_j), vlift
    Mat rows;
    Vec e(n, 0);
    e[j] = p * p;
    rows.push_back(e);
    Int inv = mod_inverse(w[j], p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      Vec r(n, 0);
      r[i] = p;
      r[j] = -p * floor_mod(w[i] * inv, p);
      rows.push_back(r);
    }
    rows.push_back(vlift);
    Spanned sp = lattice_from_generators(g, rows, p);
    Mat ng = sp.gram;
    for (auto& row : ng)
      for (auto& x : row) x *= c;
    if (!is_even(ng)) return true;
    Lattice nb = reduced_form(ng);
    Tri sg = same_genus(l, nb);
    if (sg != Tri::yes) {
      if (guaranteed) throw std::logic_error("p-neighbor left the genus");
      return true;
    }
    return f(nb);
  };

  Vec v(n, 0);
  // projective representatives: first nonzero coordinate equal to 1
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    while (true) {
      Vec w = k3e::apply(g, v);
      Int s = norm(g, v);
      std::size_t j = n;
      for (std::size_t i = 0; i < n; ++i)
        if (floor_mod(w[i], p) != 0) {
          j = i;
          break;
        }
      if (j == n) throw std::logic_error("isotropic vector in the radical mod p");
      if (p == 2) {
        for (int t = 0; t < 2; ++t) {
          Vec vl = v;
          if (t == 1) vl[j] += 2;
          Int sl = norm(g, vl);
          if (floor_mod(sl, reduced_even ? 8 : 4) != 0) continue;
          if (!emit(vl, j, w)) return;
        }
      } else if (floor_mod(s, p) == 0) {
        Int k = floor_mod(-(s / p) * mod_inverse(2 * w[j], p), p);
        Vec vl = v;
        vl[j] += p * k;
        if (floor_mod(norm(g, vl), p * p) != 0) throw std::logic_error("neighbor lift failed");
        if (!emit(vl, j, w)) return;
      }
      // next vector with this lead: coordinates after `lead` run over [0, p)
      std::size_t i = n;
      while (i-- > lead + 1) {
        if (++v[i] < p) break;
        v[i] = 0;
      }
      if (i == lead || i > n) break;
    }
  }
}

std::vector<Lattice> p_neighbors(const Lattice& l, Int p) {
  std::vector<Lattice> out;
  for_each_neighbor(l, p, [&](const Lattice& nb) {
    out.push_back(nb);
    return true;
  });
  return out;
}

const char* to_string(WitnessSearch::Status s) {
  switch (s) {
    case WitnessSearch::Status::found: return "found";
    case WitnessSearch::Status::none_in_explored: return "none-in-explored";
    default: return "unknown";
  }
}

std::string default_cache_dir() {
  const char* env = std::getenv("K3E_CACHE");
  return env && *env ? std::string(env) : std::string("./k3e-cache");
}

std::string genus_cache_key(const Lattice& l) {
  DiscriminantForm a = discriminant_form(l);
  std::ostringstream os;
  Signature s = signature(l.gram);
  os << "r" << l.rank() << ";s" << s.pos << "," << s.neg << ";d" << det(l) << ";o";
  for (Int o : a.orders) os << o << ",";
  os << ";D" << a.exponent << ";p";
  std::map<std::pair<Int, Int>, Int> counts;
  for (const auto& pr : a.value_profile()) counts[pr]++;
  for (const auto& [k, v] : counts) os << k.first << ":" << k.second << ":" << v << ",";
  std::string text = os.str();
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << h;
  return hex.str();
}

namespace {

using nlohmann::json;

std::filesystem::path cache_file(const std::string& dir, const std::string& key) {
  return std::filesystem::path(dir) / (key + ".json");
}

std::optional<GenusExploration> cache_lookup(const Lattice& l, const ExploreOptions& opt) {
  if (!opt.cache_dir) return std::nullopt;
  auto path = cache_file(*opt.cache_dir, genus_cache_key(l));
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are ignored and later overwritten
  }
  for (const auto& e : j.value("entries", json::array())) {
    if (!e.value("complete", false)) continue;
    Lattice seed(e.at("seed").get<Mat>());
    if (same_genus(l, seed) != Tri::yes) continue;  // revalidate every hit
    GenusExploration g;
    g.seed = l;
    g.classes.push_back(l);
    // keep the caller's lattice first, then the stored classes not isometric to it
    for (const auto& c : e.at("classes")) {
      Lattice cl(c.get<Mat>());
      if (is_isometric(l, cl).found == Tri::yes) continue;
      g.classes.push_back(cl);
    }
    if (g.classes.size() != e.at("classes").size()) continue;
    g.primes_used = e.at("primes").get<std::vector<Int>>();
    g.complete = true;
    g.steps = 0;
    g.stop_reason = "closed";
    g.from_cache = true;
    return g;
  }
  return std::nullopt;
}

void cache_store(const GenusExploration& g, const ExploreOptions& opt) {
  if (!opt.cache_dir || !g.complete) return;
  std::filesystem::create_directories(*opt.cache_dir);
  auto path = cache_file(*opt.cache_dir, genus_cache_key(g.seed));
  json j = {{"version", kToolVersion}, {"entries", json::array()}};
  {
    std::ifstream in(path);
    if (in) try {
        in >> j;
      } catch (const std::exception&) {
        j = {{"version", kToolVersion}, {"entries", json::array()}};
      }
  }
  json e = {{"seed", g.seed.gram}, {"complete", true}, {"primes", g.primes_used}, {"classes", json::array()}};
  for (const auto& c : g.classes) e["classes"].push_back(c.gram);
  j["entries"].push_back(e);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(static_cast<long long>(std::hash<std::string>{}(g.seed.name + std::to_string(g.steps))));
  {
    std::ofstream out(tmp);
    out << j.dump(1);
  }
  std::filesystem::rename(tmp, path);  // atomic replace
}

}  // namespace

GenusExploration genus_explore(const Lattice& l, const ExploreOptions& opt) {
  require_even(l.gram);
  if (auto hit = cache_lookup(l, opt)) return *hit;
  GenusExploration g;
  g.seed = l;
  std::vector<Int> primes;
  if (opt.primes.empty()) {
    for (Int p : {2, 3, 5})
      if (neighbor_prime_admissible(l, p)) {
        primes.push_back(p);
        break;
      }
  } else {
    for (Int p : opt.primes)
      if (neighbor_prime_admissible(l, p)) primes.push_back(p);
  }
  if (primes.empty()) throw PreconditionError("unsupported seed: no admissible neighbor prime");
  g.primes_used = primes;
  g.classes.push_back(l);
  std::vector<Fingerprint> fps{fingerprint(l)};
  bool inconclusive = false;
  std::string stop;
  for (std::size_t k = 0; k < g.classes.size() && stop.empty(); ++k) {
    for (Int p : primes) {
      Lattice current = g.classes[k];
      for_each_neighbor(current, p, [&](const Lattice& nb) {
        if (++g.steps > opt.max_steps) {
          stop = "step cap";
          return false;
        }
        Fingerprint fp = fingerprint(nb);
        for (std::size_t c = 0; c < g.classes.size(); ++c) {
          if (fps[c] != fp) continue;
          Tri t = is_isometric(nb, g.classes[c], opt.iso_node_cap).found;
          if (t == Tri::yes) return true;
          if (t == Tri::unknown) {
            inconclusive = true;
            return true;
          }
        }
        if (g.classes.size() >= opt.max_classes) {
          stop = "class cap";
          return false;
        }
        g.classes.push_back(nb);
        fps.push_back(fp);
        return true;
      });
      if (!stop.empty()) break;
    }
  }
  if (g.steps > opt.max_steps) g.steps = opt.max_steps;
  if (!stop.empty()) {
    g.stop_reason = stop;
  } else if (inconclusive) {
    g.stop_reason = "inconclusive isometry";
  } else {
    g.complete = true;
    g.stop_reason = "closed";
  }
  cache_store(g, opt);
  return g;
}

WitnessSearch genus_non_root_overlattice_witness(const Lattice& l, const ExploreOptions& opt) {
  WitnessSearch w;
  w.exploration = genus_explore(l, opt);
  for (const auto& c : w.exploration.classes) {
    Int m = minimum(c);
    if ((m == 2 || m == -2) && !is_root_overlattice(c)) {
      w.status = WitnessSearch::Status::found;
      w.witness = c;
      return w;
    }
  }
  w.status = w.exploration.complete ? WitnessSearch::Status::none_in_explored : WitnessSearch::Status::unknown;
  return w;
}

Uniqueness unique_in_genus(const Lattice& l, const ExploreOptions& opt) {
  Uniqueness u;
  u.exploration = genus_explore(l, opt);
  if (u.exploration.classes.size() > 1)
    u.unique = Tri::no;
  else
    u.unique = u.exploration.complete ? Tri::yes : Tri::unknown;
  return u;
}

}  // namespace k3e
