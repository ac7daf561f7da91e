#pragma once

#include <string>
#include <vector>

#include "k3e/types.hpp"

namespace k3e::tables {

// Lower bounds Δ_r (r = 1..18) for |det| of even definite lattices without roots.
Int delta_r(int r);
constexpr int kDeltaMaxRank = 18;

// k with U ⊕ <-2k> of zero entropy.
const std::vector<Int>& zero_entropy_k();

struct TorsionGroup {
  std::string name;          // e.g. "Z2xZ4"
  std::vector<Int> invariants;  // invariant factors n1 | n2
  Int order() const;
};
// The twelve finite Mordell–Weil groups of elliptic K3 surfaces.
const std::vector<TorsionGroup>& torsion_groups();
const TorsionGroup& torsion_group(const std::string& name);  // throws PreconditionError

// Rank-2 lattices unique in their genus that escape the rank-2 extension criterion.
const std::vector<Mat>& rank2_unique_list();
// Candidate lattices L of zero entropy with 2 <= rank(L) <= 5, in published order.
const std::vector<Mat>& zero_entropy_candidates(int rank);

struct FibrationCountRow {
  int rho = 0;        // Picard rank = rank(L) + 2
  int index = 0;      // 1-based position within zero_entropy_candidates(rho - 2)
  Int count = 0;      // genus-1 fibrations with 0 <= γ < β
  Int beta = 0;       // 0 when count is 0
};
const std::vector<FibrationCountRow>& fibration_counts();

// Discriminant group invariant factors of the irreducible root lattices.
std::vector<Int> root_discriminant_expected(char type, int n);

// L with U ⊕ E8 ⊕ L of finite automorphism group (excluded upstream).
const std::vector<std::string>& finite_automorphism_exceptions();

}  // namespace k3e::tables
