#include "k3e/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace k3e::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

Int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string("expected integer for ") + what);
  return j.get<Int>();
}

Vec as_vec(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string("expected integer array for ") + what);
  Vec v;
  for (const auto& x : j) v.push_back(as_int(x, what));
  return v;
}

Mat as_mat(const json& j) {
  if (!j.is_array()) fail("gram must be an array of rows");
  Mat m;
  for (const auto& row : j) m.push_back(as_vec(row, "gram entry"));
  for (const auto& row : m)
    if (row.size() != m.size()) fail("gram must be square");
  return m;
}

std::string big(const BigInt& x) { return x.str(); }

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

json to_json(const Lattice& l) { return {{"name", l.name}, {"gram", l.gram}}; }

Lattice lattice_from_json(const json& j) {
  if (j.is_array()) return Lattice(as_mat(j));
  if (!j.is_object() || !j.contains("gram")) fail("lattice must be an object with a \"gram\" field");
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("lattice name must be a string");
    name = j["name"].get<std::string>();
  }
  Lattice l(as_mat(j["gram"]), name);
  try {
    require_even(l.gram);
  } catch (const PreconditionError& e) {
    fail(e.what());
  }
  return l;
}

Lattice load_lattice(const std::string& arg) {
  std::string s = arg;
  if (!s.empty() && (s[0] == '{' || s[0] == '[')) return lattice_from_json(parse_json(s));
  if (std::filesystem::exists(s)) return lattice_from_json(read_json_file(s));
  return parse_builtin(s);
}

json to_json(const Catalog& c) {
  json a = json::array();
  for (const auto& l : c.lattices) a.push_back(to_json(l));
  return a;
}

Catalog catalog_from_json(const json& j, int rank) {
  if (!j.is_array()) fail("catalog must be a JSON array of lattices");
  Catalog c;
  c.rank = rank;
  for (const auto& e : j) {
    Lattice l = lattice_from_json(e);
    if (static_cast<int>(l.rank()) != rank) continue;
    c.det_max = std::max<Int>(c.det_max, to_small(abs(det(l))));
    c.lattices.push_back(l);
  }
  if (c.lattices.empty()) throw PreconditionError("catalog has no lattices of rank " + std::to_string(rank));
  return c;
}

Catalog load_catalog(const std::string& path, int rank) { return catalog_from_json(read_json_file(path), rank); }

NSLattice ns_from_json(const json& j) {
  if (!j.is_object() || !j.contains("L")) fail("NS lattice must be an object with an \"L\" field");
  return NSLattice(lattice_from_json(j["L"]));
}

json to_json(const NSLattice& ns) { return {{"U", "implicit"}, {"L", to_json(ns.L())}}; }

json to_json(const DivisorClass& c) { return {{"x", c.x}, {"y", c.y}, {"z", c.z}}; }

DivisorClass divisor_from_json(const json& j, const NSLattice& ns) {
  DivisorClass c;
  if (j.is_array()) {
    Vec v = as_vec(j, "divisor");
    if (v.size() != ns.rank_L() + 2) fail("divisor needs rank(L) + 2 coordinates");
    c.x = v[0];
    c.y = v[1];
    c.z.assign(v.begin() + 2, v.end());
  } else if (j.is_object() && j.contains("x") && j.contains("y") && j.contains("z")) {
    c.x = as_int(j["x"], "x");
    c.y = as_int(j["y"], "y");
    c.z = as_vec(j["z"], "z");
    if (c.z.size() != ns.rank_L()) fail("divisor z has the wrong length");
  } else {
    fail("divisor must be {\"x\",\"y\",\"z\"} or an array");
  }
  return c;
}

json to_json(const NefVerdict& v) {
  json j = {{"status", to_string(v.status)}, {"divisibility", v.divisibility}};
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  return j;
}

json to_json(const SectionSearch& s) {
  json j = {{"status", to_string(s.status)}, {"divisibility", s.divisibility}, {"y_bound", s.y_bound}, {"z_box", s.z_box}};
  j["section"] = s.section ? to_json(*s.section) : json(nullptr);
  return j;
}

json to_json(const FibrationClass& f) {
  json j = {{"E", to_json(f.e)}, {"verdict", to_json(f.verdict)}};
  j["section"] = f.section ? to_json(*f.section) : json(nullptr);
  return j;
}

json to_json(const Genus1Census& c) { return {{"count", c.count}, {"betas", c.betas}, {"beta_max", c.beta_max}}; }

json to_json(const Rank3Verdict& v) {
  json j = {{"k", v.k},
            {"condition_C", v.condition_C},
            {"zero_entropy", v.zero_entropy},
            {"prime_power", v.prime_power},
            {"distinct_primes", v.distinct_primes},
            {"fibration_classes", v.fibration_classes}};
  j["genus1"] = v.genus1 ? to_json(*v.genus1) : json(nullptr);
  return j;
}

json to_json(const GenusExploration& g) {
  json cls = json::array();
  for (const auto& c : g.classes) cls.push_back(to_json(c));
  return {{"seed", to_json(g.seed)}, {"classes", cls},       {"class_count", g.classes.size()},
          {"complete", g.complete},  {"steps", g.steps},     {"stop_reason", g.stop_reason},
          {"primes", g.primes_used}, {"from_cache", g.from_cache}};
}

json to_json(const WitnessSearch& w) {
  json j = {{"status", to_string(w.status)}, {"exploration", to_json(w.exploration)}};
  j["witness"] = w.witness ? to_json(*w.witness) : json(nullptr);
  return j;
}

json to_json(const CandidateRecord& r) {
  json j = {{"lattice", to_json(r.lattice)},
            {"det", big(det(r.lattice))},
            {"source", r.source},
            {"multiple", r.multiple},
            {"b", r.b},
            {"c", r.c},
            {"d", r.d}};
  if (r.eliminated) {
    j["eliminated"] = *r.eliminated;
    if (!r.elim_sub.empty()) {
      j["sublattice"] = r.elim_sub;
      j["sublattice_det"] = big(r.elim_sub_det);
    }
    if (r.elim_fiber) j["fiber"] = to_json(*r.elim_fiber);
    if (r.elim_section) j["section"] = to_json(*r.elim_section);
  }
  return j;
}

json to_json(const CandidateList& l) {
  json m = json::array(), r = json::array();
  for (const auto& x : l.members) m.push_back(to_json(x));
  for (const auto& x : l.removed) r.push_back(to_json(x));
  return {{"rank", l.rank}, {"complete", l.complete}, {"count", l.members.size()}, {"members", m}, {"removed", r}};
}

json to_json(const OverlatticeCensus& c) {
  json out = json::array();
  for (const auto& e : c.overlattices) {
    json g = json::array();
    for (const auto& x : e.glue) g.push_back(x);
    out.push_back({{"lattice", to_json(e.lattice)}, {"det", big(det(e.lattice))}, {"glue", g}});
  }
  return {{"root", c.root},       {"group", c.group},   {"subgroups", c.subgroups},
          {"orbits", c.orbits},   {"discarded_norm2", c.discarded_norm2},
          {"complete", c.complete}, {"overlattices", out}};
}

json to_json(const Main10Verdict& v) {
  json j = {{"status", to_string(v.status)}, {"method", v.method}, {"detail", v.detail}};
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  return j;
}

json to_json(const AdeRecord& r) {
  json j = {{"system", r.system.name()}, {"status", to_string(r.status)}};
  j["via"] = r.via ? json(r.via->name()) : json(nullptr);
  return j;
}

}  // namespace k3e::io
