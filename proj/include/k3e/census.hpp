#pragma once

#include <map>
#include <optional>
#include <string>

#include "k3e/genus.hpp"
#include "k3e/tables.hpp"

namespace k3e {

struct RootComponent {
  char type = 'A';  // 'A', 'D' or 'E'
  int n = 1;
  bool operator==(const RootComponent&) const = default;
  auto operator<=>(const RootComponent&) const = default;
};

// Direct sum of irreducible root lattices, kept sorted (E before D before A,
// larger n first) so equal systems compare equal.
struct RootSystem {
  std::vector<RootComponent> parts;

  static RootSystem parse(const std::string& s);  // "D4+A1^5"; throws ParseError
  static RootSystem of_lattice(const Lattice& l);  // throws PreconditionError unless l is a root lattice
  void normalize();
  std::string name() const;
  int rank() const;
  BigInt det() const;
  int euler_min() const;  // sum of n+1 (A_n) and n+2 (D_n, E_n)
  bool has_DE() const;
  Lattice lattice() const;
  bool operator==(const RootSystem&) const = default;
};

// C1: the reducible fibers fit in e(X) = 24.
bool c1_euler(const RootSystem& r);
// C2: with a D/E summand, k divides the gcd of the D/E determinants.
bool c2_torsion(const RootSystem& r, Int k);

// Root lattices with rank in [rmin, rmax], det >= Δ_r and C1, sorted by rank then name.
std::vector<RootSystem> root_census(int rmin, int rmax);

// Torsion groups S with |S|² | det R, det R / |S|² >= Δ_r and C2.
std::vector<tables::TorsionGroup> admissible_groups(const RootSystem& r);

struct CensusOptions {
  std::size_t aut_node_cap = 10000000;
  std::size_t subgroup_cap = 200000;
};

struct CensusEntry {
  Lattice lattice;
  std::vector<Elem> glue;  // generators of the isotropic subgroup in A_R
};

struct OverlatticeCensus {
  std::string root;
  std::string group;
  std::size_t subgroups = 0;        // isotropic subgroups isomorphic to the group
  std::size_t orbits = 0;           // after the O(R) action
  std::size_t discarded_norm2 = 0;  // glue creating new roots
  std::vector<CensusEntry> overlattices;  // one per genus
  bool complete = true;             // O(R) generators found without hitting the cap
};
// group may be "1" for the trivial group. Throws PreconditionError if |S|² ∤ det R.
OverlatticeCensus overlattice_census(const Lattice& r, const std::string& group, const CensusOptions& opt = {});

struct Main10Options {
  ExploreOptions explore = [] {
    ExploreOptions o;
    o.max_classes = 16;
    o.max_steps = 1024;
    return o;
  }();
  std::size_t neighbor_cap = 4096;
  std::size_t subgroup_cap = 20000;
};

struct Main10Verdict {
  enum class Status { witness, excluded, unknown } status = Status::unknown;
  std::optional<Lattice> witness;  // genus-mate with min 2, not a root-overlattice
  std::string method;              // "sub-sum", "sub-sum overlattice", "p-neighbor", "exception"
  std::string detail;
};
const char* to_string(Main10Verdict::Status s);

// Memo of non-root-overlattice genus-mates of root lattices, keyed by name.
struct Main10Context {
  std::map<std::string, std::optional<Lattice>> subsum_witness;
  std::map<std::string, bool> subsum_complete;
};

Main10Verdict main10_verify(const Lattice& r_prime, Main10Context& ctx, const Main10Options& opt = {});

struct AdeRecord {
  RootSystem system;
  enum class Status { added, covered, error_exit } status = Status::error_exit;
  std::optional<RootSystem> via;  // the sub-sum R_i that carries a genus witness
};
const char* to_string(AdeRecord::Status s);
// Cover a census by sub-sums with non-root-overlattice genus-mates.
std::vector<AdeRecord> ade_cover(const std::vector<RootSystem>& census, Main10Context& ctx, const Main10Options& opt = {});

}  // namespace k3e
