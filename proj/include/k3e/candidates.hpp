#pragma once

#include <optional>
#include <string>

#include "k3e/genus.hpp"
#include "k3e/ns.hpp"

namespace k3e {

// All isometry classes of even negative-definite lattices of rank 2 or 3 with
// |det| <= det_max, one reduced representative each, sorted by (|det|, gram).
std::vector<Lattice> enumerate_classes(int rank, Int det_max);

// Members of `classes` (a complete class list for their determinants) that are
// alone in their genus.
std::vector<Lattice> one_class_genera(const std::vector<Lattice>& classes);

struct Catalog {
  int rank = 0;
  Int det_max = 0;                // completeness bound for the source enumeration
  std::vector<Lattice> lattices;  // b(L) = 1 and unique in genus
};
Catalog build_catalog(int rank, Int det_max);

struct CatalogCheck {
  std::size_t checked = 0, confirmed = 0, skipped = 0;
  std::vector<std::string> mismatches;
};
// Re-verifies the uniqueness flag with neighbor exploration on small entries.
CatalogCheck verify_catalog(const Catalog& c, Int det_limit = 200, int rank_limit = 6);

struct CandidateRecord {
  Lattice lattice;
  std::string source;  // provenance, e.g. "catalog #12, m=2"
  Int multiple = 1;
  Int b = 0, c = 0, d = 0;  // b_n, c(L), d_n(L) of the parent catalog entry
  std::optional<std::string> eliminated;  // reason
  Mat elim_sub;                           // sublattice rows used for elimination
  BigInt elim_sub_det;
  std::optional<DivisorClass> elim_fiber, elim_section;
};

struct CandidateList {
  int rank = 0;
  std::vector<CandidateRecord> members;
  std::vector<CandidateRecord> removed;
  bool complete = true;  // false if some budget was exhausted
};

// Reduced rank-2 lattices unique in their genus with no primitive <-2k>,
// k outside the zero-entropy list, and |det| >= 4k.
CandidateList rank2_candidates();

struct StepOptions {
  std::uint64_t seed = 0;
  int random_trials = 100;
  Int height = 8;
  bool exhaustive = true;  // finish with every corank-1 sublattice small enough to matter
};
// One step of the multiple-bounded list construction from rank n to n + 1.
CandidateList candidate_step(const CandidateList& ln, const Catalog& catalog, const StepOptions& opt = {});

struct FilterOptions {
  Int gamma_budget = 200000;  // max β^rank per tested β
  Int y_bound = 0, z_box = 0;  // section search bounds (0: defaults)
};
// Removes lattices whose NS carries a second elliptic fibration with a section.
CandidateList fibration_filter(const CandidateList& in, const FilterOptions& opt = {});

// True if some member of `list` is in the genus of l.
bool genus_in_list(const Lattice& l, const std::vector<Lattice>& list);

}  // namespace k3e
