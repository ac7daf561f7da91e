#pragma once

#include <functional>
#include <optional>
#include <string>

#include "k3e/enumeration.hpp"

namespace k3e {

// Same rank, signature and isomorphic discriminant forms (even lattices).
// `unknown` only when the form-isomorphism search exhausts its node cap.
Tri same_genus(const Lattice& a, const Lattice& b, std::size_t node_cap = 10000000);

// Content c = gcd of all Gram entries; neighbors are formed in L / c.
Int gram_content(const Lattice& l);
// Primes p for which p-neighbors of l are available (p does not divide det(l / c)).
bool neighbor_prime_admissible(const Lattice& l, Int p);

// Visits the p-neighbors of a definite even lattice in a deterministic
// lexicographic sweep of isotropic lines, keeping only those in the genus of l.
// Each neighbor is LLL-reduced. The callback returns false to stop early.
void for_each_neighbor(const Lattice& l, Int p, const std::function<bool(const Lattice&)>& f);
std::vector<Lattice> p_neighbors(const Lattice& l, Int p);

struct ExploreOptions {
  std::vector<Int> primes;        // empty: smallest admissible prime in {2, 3, 5}
  std::size_t max_classes = 64;
  std::size_t max_steps = 4096;   // neighbor lattices constructed
  std::size_t iso_node_cap = 10000000;
  std::optional<std::string> cache_dir;  // disabled when empty
};

struct GenusExploration {
  Lattice seed;
  std::vector<Lattice> classes;  // classes[0] is the seed
  std::vector<Int> primes_used;
  bool complete = false;
  std::size_t steps = 0;
  std::string stop_reason;  // "closed", "class cap", "step cap", "inconclusive isometry"
  bool from_cache = false;
};

GenusExploration genus_explore(const Lattice& l, const ExploreOptions& opt = {});

struct WitnessSearch {
  enum class Status { found, none_in_explored, unknown } status = Status::unknown;
  std::optional<Lattice> witness;  // min 2 and not a root overlattice
  GenusExploration exploration;
};
const char* to_string(WitnessSearch::Status s);
WitnessSearch genus_non_root_overlattice_witness(const Lattice& l, const ExploreOptions& opt = {});

struct Uniqueness {
  Tri unique = Tri::unknown;
  GenusExploration exploration;
};
Uniqueness unique_in_genus(const Lattice& l, const ExploreOptions& opt = {});

// Stable 64-bit key of (rank, det, discriminant-form value profile), hex encoded.
std::string genus_cache_key(const Lattice& l);
// Cache directory from K3E_CACHE, falling back to ./k3e-cache.
std::string default_cache_dir();

}  // namespace k3e
