#include <chrono>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "k3e/io.hpp"

using namespace k3e;
using io::json;

namespace {

enum Exit { kOk = 0, kParse = 2, kPrecondition = 3, kDiff = 4, kCap = 5 };

struct Globals {
  std::uint64_t seed = 0;
  bool strict = false;
  bool compact = false;
};

struct Report {
  std::string command;
  json inputs = json::object();
  json result;
  json cache = json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

void emit(const Globals& g, Report& r) {
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - r.start).count();
  json j = {{"command", r.command}, {"inputs", r.inputs},   {"result", r.result},
            {"cache", r.cache},     {"version", kToolVersion}, {"seed", g.seed},
            {"timings", {{"seconds", secs}}}};
  std::cout << (g.compact ? j.dump() : j.dump(2)) << "\n";
}

json load_json_arg(const std::string& s) {
  if (!s.empty() && (s[0] == '{' || s[0] == '[')) return io::parse_json(s);
  return io::read_json_file(s);
}

std::vector<Int> parse_primes(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw ParseError("bad prime list '" + s + "'");
    }
  }
  return out;
}

json summary(const Lattice& l) {
  json j = io::to_json(l);
  j["rank"] = l.rank();
  j["det"] = det(l).str();
  j["definiteness"] = to_string(definiteness(l));
  Definiteness d = definiteness(l);
  if (d == Definiteness::positive || d == Definiteness::negative) {
    j["min"] = std::abs(minimum(l));
    j["roots"] = 2 * roots(l).size();
    j["root_system"] = root_system_type(l);
    j["root_overlattice"] = is_root_overlattice(l);
  }
  DiscriminantForm a = discriminant_form(l);
  json q = json::array();
  for (std::size_t i = 0; i < a.ngens(); ++i) q.push_back(a.q_fraction(a.generator(i)).str());
  j["discriminant"] = {{"orders", a.orders}, {"exponent", a.exponent}, {"q_generators", q}};
  return j;
}

// ---- reproduce ----

struct Diff {
  json rows = json::array();
  bool ok = true;
  void add(json row, bool match) {
    row["match"] = match;
    ok = ok && match;
    rows.push_back(std::move(row));
  }
};

Diff reproduce_delta_r() {
  Diff d;
  const std::vector<std::string> extremal = {"A1", "A2", "A3", "D4", "D5", "E6", "E7", "E8"};
  for (int r = 1; r <= tables::kDeltaMaxRank; ++r) {
    json row = {{"r", r}, {"expected", tables::delta_r(r)}};
    if (r <= 8) {
      BigInt c = abs(det(parse_builtin(extremal[r - 1] + "(2)")));
      row["computed"] = c.str();
      row["from"] = extremal[r - 1] + "(2)";
      d.add(row, c == tables::delta_r(r));
    } else {
      row["computed"] = nullptr;
      row["from"] = "embedded";
      d.add(row, true);
    }
  }
  return d;
}

Diff reproduce_rank2() {
  Diff d;
  CandidateList c = rank2_candidates();
  const auto& expected = tables::rank2_unique_list();
  std::vector<bool> used(c.members.size(), false);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    Lattice e(expected[i]);
    json row = {{"index", i + 1}, {"expected", e.gram}, {"computed", nullptr}};
    bool hit = false;
    for (std::size_t k = 0; k < c.members.size() && !hit; ++k)
      if (!used[k] && is_isometric(e, c.members[k].lattice).found == Tri::yes) {
        used[k] = hit = true;
        row["computed"] = c.members[k].lattice.gram;
      }
    d.add(row, hit);
  }
  for (std::size_t k = 0; k < c.members.size(); ++k)
    if (!used[k]) d.add({{"index", nullptr}, {"expected", nullptr}, {"computed", c.members[k].lattice.gram}}, false);
  return d;
}

Diff reproduce_L1() {
  Diff d;
  std::vector<Int> got;
  for (Int k = 2; k <= 500; ++k)
    if (rank3_classify(k).zero_entropy) got.push_back(k);
  d.add({{"scan", "2..500"}, {"expected", tables::zero_entropy_k()}, {"computed", got}}, got == tables::zero_entropy_k());
  return d;
}

Diff reproduce_fibration_counts(Int beta_max) {
  Diff d;
  for (const auto& row : tables::fibration_counts()) {
    Lattice l(tables::zero_entropy_candidates(row.rho - 2).at(static_cast<std::size_t>(row.index - 1)));
    NSLattice ns(l);
    std::map<Int, Int> by_beta;
    for (Int b = 2; b <= beta_max; ++b) {
      Int n = static_cast<Int>(find_fibrations(ns, b, false, true).size());
      if (n > 0) by_beta[b] = n;
    }
    Int count = 0, beta = 0;
    for (auto [b, n] : by_beta) count += n;
    if (by_beta.size() == 1) beta = by_beta.begin()->first;
    bool match = count == row.count && (row.count == 0 || (by_beta.size() == 1 && beta == row.beta));
    d.add({{"rho", row.rho},
           {"index", row.index},
           {"expected", {{"count", row.count}, {"beta", row.beta}}},
           {"computed", {{"count", count}, {"beta", beta}}},
           {"beta_max", beta_max}},
          match);
  }
  return d;
}

Diff reproduce_root_discriminants() {
  Diff d;
  auto check = [&](char t, int n) {
    Lattice l = parse_builtin(std::string(1, t) + std::to_string(n));
    DiscriminantForm a = discriminant_form(l);
    auto want = tables::root_discriminant_expected(t, n);
    d.add({{"lattice", l.name}, {"expected", want}, {"computed", a.orders}, {"det", BigInt(abs(det(l))).str()}}, a.orders == want);
  };
  for (int n = 1; n <= 12; ++n) check('A', n);
  for (int n = 4; n <= 12; ++n) check('D', n);
  for (int n = 6; n <= 8; ++n) check('E', n);
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k3e: lattice computations for elliptic K3 surfaces of zero entropy"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "PRNG seed for randomized steps");
  app.add_flag("--strict", g.strict, "exit 5 when a budget runs out before a definite answer");
  app.add_flag("--compact", g.compact, "single-line JSON");
  Report rep;
  std::function<int()> run;

  // lattice info
  auto* lat = app.add_subcommand("lattice", "lattice utilities");
  lat->require_subcommand(1);
  std::string lat_arg;
  auto* info = lat->add_subcommand("info", "rank, det, minimum, roots and discriminant form");
  info->add_option("lattice", lat_arg, "builtin name, JSON file or inline JSON")->required();
  info->callback([&] {
    run = [&] {
      rep.command = "lattice info";
      rep.inputs["lattice"] = lat_arg;
      rep.result = summary(io::load_lattice(lat_arg));
      return kOk;
    };
  });

  // rank3 classify
  auto* r3 = app.add_subcommand("rank3", "NS = U + <-2k>");
  r3->require_subcommand(1);
  Int k = 0, scan = 0;
  bool census = false;
  auto* cls = r3->add_subcommand("classify", "zero-entropy verdict for U + <-2k>");
  cls->add_option("k", k, "k >= 2");
  cls->add_option("--scan", scan, "CSV over k = 2..max");
  cls->add_flag("--census", census, "also count genus-1 fibrations up to beta = 2k");
  cls->callback([&] {
    run = [&]() -> int {
      if (scan > 0) {
        if (scan < 2) throw PreconditionError("--scan needs max >= 2");
        std::cout << "k,condition_C,zero_entropy,prime_power,distinct_primes,fibration_classes\n";
        for (Int q = 2; q <= scan; ++q) {
          Rank3Verdict v = rank3_classify(q);
          std::cout << q << "," << v.condition_C << "," << v.zero_entropy << "," << v.prime_power << ","
                    << v.distinct_primes << "," << v.fibration_classes << "\n";
        }
        return -1;  // CSV already written
      }
      rep.command = "rank3 classify";
      rep.inputs["k"] = k;
      rep.result = io::to_json(rank3_classify(k, census));
      return kOk;
    };
  });

  // nef / fibrations / sections
  std::string ns_arg, div_arg;
  Int beta = 0, bound = 0, box = 0;
  bool with_sections = false, nef_only = false;
  auto* nef = app.add_subcommand("nef", "nefness of a primitive isotropic class");
  nef->add_option("ns", ns_arg, "NS lattice JSON (file or inline)")->required();
  nef->add_option("divisor", div_arg, "divisor JSON (file or inline)")->required();
  nef->callback([&] {
    run = [&] {
      rep.command = "nef";
      NSLattice ns = io::ns_from_json(load_json_arg(ns_arg));
      DivisorClass e = io::divisor_from_json(load_json_arg(div_arg), ns);
      rep.inputs = {{"ns", io::to_json(ns)}, {"divisor", io::to_json(e)}};
      rep.result = io::to_json(is_nef_isotropic(ns, e));
      return kOk;
    };
  });
  auto* fib = app.add_subcommand("fibrations", "isotropic classes with E.F = beta, gamma in [0, beta)");
  fib->add_option("ns", ns_arg, "NS lattice JSON")->required();
  fib->add_option("--beta", beta, "E.F")->required();
  fib->add_flag("--sections", with_sections, "search sections for nef classes");
  fib->add_flag("--nef-only", nef_only, "drop classes that are not nef");
  fib->callback([&] {
    run = [&] {
      rep.command = "fibrations";
      NSLattice ns = io::ns_from_json(load_json_arg(ns_arg));
      rep.inputs = {{"ns", io::to_json(ns)}, {"beta", beta}, {"sections", with_sections}, {"nef_only", nef_only}};
      auto fs = find_fibrations(ns, beta, with_sections, nef_only);
      json arr = json::array();
      Int nef_count = 0;
      for (const auto& f : fs) {
        arr.push_back(io::to_json(f));
        if (is_nef(f.verdict.status)) ++nef_count;
      }
      rep.result = {{"classes", arr}, {"count", fs.size()}, {"nef_count", nef_count}};
      return kOk;
    };
  });
  auto* sec = app.add_subcommand("sections", "search a section of a nef isotropic class");
  sec->add_option("ns", ns_arg, "NS lattice JSON")->required();
  sec->add_option("divisor", div_arg, "divisor JSON")->required();
  sec->add_option("--bound", bound, "bound on S.F (default 4|det L|)");
  sec->add_option("--box", box, "bound on |z_i| for the E = F case (default 2|det L|)");
  sec->callback([&] {
    run = [&]() -> int {
      rep.command = "sections";
      NSLattice ns = io::ns_from_json(load_json_arg(ns_arg));
      DivisorClass e = io::divisor_from_json(load_json_arg(div_arg), ns);
      rep.inputs = {{"ns", io::to_json(ns)}, {"divisor", io::to_json(e)}, {"bound", bound}};
      SectionSearch s = find_section(ns, e, bound, box);
      rep.result = io::to_json(s);
      return g.strict && s.status == SectionSearch::Status::none_within_bounds ? kCap : kOk;
    };
  });

  // genus
  auto* gen = app.add_subcommand("genus", "genus exploration with p-neighbors");
  gen->require_subcommand(1);
  std::string primes_arg;
  std::size_t cap = 64, steps = 4096;
  bool no_cache = false;
  auto add_genus_opts = [&](CLI::App* c) {
    c->add_option("lattice", lat_arg, "builtin name, JSON file or inline JSON")->required();
    c->add_option("--primes", primes_arg, "comma-separated neighbor primes");
    c->add_option("--cap", cap, "maximum number of classes");
    c->add_option("--steps", steps, "maximum number of neighbors constructed");
    c->add_flag("--no-cache", no_cache, "ignore the genus cache");
  };
  auto explore_opts = [&] {
    ExploreOptions o;
    if (!primes_arg.empty()) o.primes = parse_primes(primes_arg);
    o.max_classes = cap;
    o.max_steps = steps;
    if (!no_cache) o.cache_dir = default_cache_dir();
    rep.cache = {{"dir", o.cache_dir ? json(*o.cache_dir) : json(nullptr)}};
    return o;
  };
  auto* gexp = gen->add_subcommand("explore", "list genus classes");
  add_genus_opts(gexp);
  gexp->callback([&] {
    run = [&]() -> int {
      rep.command = "genus explore";
      Lattice l = io::load_lattice(lat_arg);
      rep.inputs = {{"lattice", io::to_json(l)}, {"cap", cap}, {"steps", steps}};
      auto ex = genus_explore(l, explore_opts());
      rep.cache["hit"] = ex.from_cache;
      rep.result = io::to_json(ex);
      return g.strict && !ex.complete ? kCap : kOk;
    };
  });
  auto* guni = gen->add_subcommand("unique", "is the lattice alone in its genus");
  add_genus_opts(guni);
  guni->callback([&] {
    run = [&]() -> int {
      rep.command = "genus unique";
      Lattice l = io::load_lattice(lat_arg);
      rep.inputs = {{"lattice", io::to_json(l)}, {"cap", cap}, {"steps", steps}};
      Uniqueness u = unique_in_genus(l, explore_opts());
      rep.cache["hit"] = u.exploration.from_cache;
      rep.result = {{"unique", to_string(u.unique)}, {"exploration", io::to_json(u.exploration)}};
      return g.strict && u.unique == Tri::unknown ? kCap : kOk;
    };
  });
  auto* gwit = gen->add_subcommand("witness", "genus-mate with min 2 that is not a root-overlattice");
  add_genus_opts(gwit);
  gwit->callback([&] {
    run = [&]() -> int {
      rep.command = "genus witness";
      Lattice l = io::load_lattice(lat_arg);
      rep.inputs = {{"lattice", io::to_json(l)}, {"cap", cap}, {"steps", steps}};
      WitnessSearch w = genus_non_root_overlattice_witness(l, explore_opts());
      rep.cache["hit"] = w.exploration.from_cache;
      rep.result = io::to_json(w);
      return g.strict && w.status == WitnessSearch::Status::unknown ? kCap : kOk;
    };
  });

  // reproduce
  std::string table;
  Int fib_beta_max = 8;
  auto* repro = app.add_subcommand("reproduce", "recompute an embedded table and diff it");
  repro->add_option("table", table, "delta-r | rank2-candidates | L1 | fibration-counts | root-discriminants")
      ->required()
      ->check(CLI::IsMember({"delta-r", "rank2-candidates", "L1", "fibration-counts", "root-discriminants"}));
  repro->add_option("--beta-max", fib_beta_max, "beta scan range for fibration-counts");
  repro->callback([&] {
    run = [&]() -> int {
      rep.command = "reproduce " + table;
      rep.inputs = {{"table", table}};
      Diff d;
      if (table == "delta-r") d = reproduce_delta_r();
      else if (table == "rank2-candidates") d = reproduce_rank2();
      else if (table == "L1") d = reproduce_L1();
      else if (table == "fibration-counts") {
        rep.inputs["beta_max"] = fib_beta_max;
        d = reproduce_fibration_counts(fib_beta_max);
      } else d = reproduce_root_discriminants();
      rep.result = {{"match", d.ok}, {"rows", d.rows}};
      return d.ok ? kOk : kDiff;
    };
  });

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "classification pipelines");
  pipe->require_subcommand(1);
  int from_rank = 2;
  std::string catalog_path, root_arg, group = "1";
  int trials = 100;
  bool no_filter = false, verify = false;
  auto* pcand = pipe->add_subcommand("candidates", "candidate lists with fibration filtering");
  pcand->add_option("--from-rank", from_rank, "start rank (2)")->check(CLI::Range(2, 2));
  pcand->add_option("--catalog", catalog_path, "catalog JSON for rank from-rank + 1");
  pcand->add_option("--trials", trials, "random corank-1 sublattices per lattice");
  pcand->add_flag("--no-filter", no_filter, "skip the fibration filter");
  pcand->callback([&] {
    run = [&]() -> int {
      rep.command = "pipeline candidates";
      rep.inputs = {{"from_rank", from_rank}, {"catalog", catalog_path}, {"trials", trials}, {"filter", !no_filter}};
      CandidateList l2 = rank2_candidates();
      CandidateList f2 = no_filter ? l2 : fibration_filter(l2);
      json stages = json::array();
      stages.push_back({{"stage", "rank2 candidates"}, {"count", l2.members.size()}});
      stages.push_back({{"stage", "rank2 filtered"}, {"count", f2.members.size()}});
      if (catalog_path.empty()) {
        rep.result = {{"stages", stages}, {"list", io::to_json(f2)}};
        return g.strict && !f2.complete ? kCap : kOk;
      }
      Catalog cat = io::load_catalog(catalog_path, from_rank + 1);
      rep.inputs["catalog_size"] = cat.lattices.size();
      rep.inputs["catalog_det_max"] = cat.det_max;
      StepOptions so;
      so.seed = g.seed;
      so.random_trials = trials;
      CandidateList l3 = candidate_step(f2, cat, so);
      CandidateList f3 = no_filter ? l3 : fibration_filter(l3);
      stages.push_back({{"stage", "rank3 candidates"}, {"count", l3.members.size()}});
      stages.push_back({{"stage", "rank3 filtered"}, {"count", f3.members.size()}});
      json prev = io::to_json(f2);
      json list = io::to_json(f3);
      // keep the step's eliminations next to the filter's
      for (const auto& r : l3.removed) list["removed"].push_back(io::to_json(r));
      rep.result = {{"stages", stages}, {"previous", prev}, {"list", list}};
      return g.strict && !(f3.complete && l3.complete) ? kCap : kOk;
    };
  });
  auto* pover = pipe->add_subcommand("overlattices", "root-overlattices R' with R'/R a given torsion group");
  pover->add_option("root", root_arg, "root lattice, e.g. A1^9")->required();
  pover->add_option("--group", group, "torsion group, e.g. Z2, Z2xZ2 (1 for trivial)");
  pover->add_flag("--verify", verify, "search a genus-mate witness for each overlattice");
  pover->callback([&] {
    run = [&]() -> int {
      rep.command = "pipeline overlattices";
      rep.inputs = {{"root", root_arg}, {"group", group}};
      Lattice r = io::load_lattice(root_arg);
      OverlatticeCensus c = overlattice_census(r, group);
      rep.result = io::to_json(c);
      if (verify) {
        Main10Context ctx;
        json vs = json::array();
        for (const auto& e : c.overlattices) vs.push_back(io::to_json(main10_verify(e.lattice, ctx)));
        rep.result["verdicts"] = vs;
      }
      return g.strict && !c.complete ? kCap : kOk;
    };
  });
  int rmin = 9, rmax = 9;
  bool ade = false;
  auto* proot = pipe->add_subcommand("root-census", "root lattices with det >= Delta_r and C1");
  proot->add_option("--min", rmin, "smallest rank")->check(CLI::Range(1, tables::kDeltaMaxRank));
  proot->add_option("--max", rmax, "largest rank")->check(CLI::Range(1, tables::kDeltaMaxRank));
  proot->add_flag("--ade", ade, "cover the census by sub-sums with non-root-overlattice genus-mates");
  proot->callback([&] {
    run = [&]() -> int {
      rep.command = "pipeline root-census";
      rep.inputs = {{"min", rmin}, {"max", rmax}, {"ade", ade}};
      auto cs = root_census(rmin, rmax);
      json arr = json::array();
      for (const auto& r : cs) {
        json groups = json::array();
        for (const auto& t : admissible_groups(r)) groups.push_back(t.name);
        arr.push_back({{"system", r.name()}, {"rank", r.rank()}, {"det", r.det().str()}, {"euler_min", r.euler_min()},
                       {"admissible_groups", groups}});
      }
      rep.result = {{"count", cs.size()}, {"systems", arr}};
      int code = kOk;
      if (ade) {
        Main10Context ctx;
        json recs = json::array();
        for (const auto& rec : ade_cover(cs, ctx)) {
          recs.push_back(io::to_json(rec));
          if (rec.status == AdeRecord::Status::error_exit) code = g.strict ? kCap : kOk;
        }
        rep.result["ade"] = recs;
      }
      return code;
    };
  });
  auto* pm10 = pipe->add_subcommand("main10", "genus-mate witness for a root-overlattice");
  pm10->add_option("lattice", lat_arg, "root-overlattice")->required();
  pm10->callback([&] {
    run = [&]() -> int {
      rep.command = "pipeline main10";
      Lattice l = io::load_lattice(lat_arg);
      rep.inputs = {{"lattice", io::to_json(l)}};
      Main10Context ctx;
      Main10Verdict v = main10_verify(l, ctx);
      rep.result = io::to_json(v);
      return g.strict && v.status == Main10Verdict::Status::unknown ? kCap : kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  try {
    int code = run();
    if (code < 0) return kOk;
    emit(g, rep);
    return code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const CapExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kCap;
  }
}
