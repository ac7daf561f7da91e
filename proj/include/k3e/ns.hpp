#pragma once

#include <optional>

#include "k3e/enumeration.hpp"

namespace k3e {

// Class x F + y S0 + z in U ⊕ L, with U = [[0,1],[1,-2]] on {F, S0}.
// For an isotropic E the coordinates are written [α, β, γ].
struct DivisorClass {
  Int x = 0, y = 0;
  Vec z;
  bool operator==(const DivisorClass&) const = default;
  auto operator<=>(const DivisorClass&) const = default;
  std::string str() const;
};

// NS(X) = U ⊕ L with L even and negative definite.
class NSLattice {
 public:
  explicit NSLattice(Lattice l);
  const Lattice& L() const { return l_; }
  std::size_t rank_L() const { return l_.rank(); }
  Mat full_gram() const;  // basis F, S0, e_1..e_r
  Int pair(const DivisorClass& a, const DivisorClass& b) const;
  Int self(const DivisorClass& a) const { return pair(a, a); }
  Int l_pair(const Vec& a, const Vec& b) const { return bilinear(l_.gram, a, b); }
  // -½‖z‖_L, a nonnegative integer.
  Int half_neg_norm(const Vec& z) const { return -bilinear(l_.gram, z, z) / 2; }
  DivisorClass fiber() const { return {1, 0, Vec(rank_L(), 0)}; }
  DivisorClass zero_section() const { return {0, 1, Vec(rank_L(), 0)}; }
  void check(const DivisorClass& c) const;  // coordinate count

 private:
  Lattice l_;
};

// α = β + (-½‖γ‖)/β when integral.
std::optional<DivisorClass> complete_isotropic(const NSLattice& ns, Int beta, const Vec& gamma);

// Representative with every γ-coordinate in [0, β).
DivisorClass reduce_periodic(const NSLattice& ns, const DivisorClass& e);

enum class NefStatus { not_nef, nef_with_orthogonal_root, nef_maximal_rank, nef };
const char* to_string(NefStatus s);
inline bool is_nef(NefStatus s) { return s != NefStatus::not_nef; }

struct NefVerdict {
  NefStatus status = NefStatus::not_nef;
  std::optional<DivisorClass> witness;
  Int divisibility = 0;  // gcd of E·D over NS; 1 iff a section class exists
};

// Error categories for is_nef_isotropic preconditions.
struct NotPrimitiveError : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct FiberClassError : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct NonPositiveBetaError : PreconditionError {
  using PreconditionError::PreconditionError;
};
struct NotIsotropicError : PreconditionError {
  using PreconditionError::PreconditionError;
};

NefVerdict is_nef_isotropic(const NSLattice& ns, const DivisorClass& e);

// Independent one-sided oracle: scans C = [x,y,z] with C² = -2, 0 < y <= y_bound,
// |z_i| <= z_box, and returns a class with the most negative E·C if it is < 0.
std::optional<DivisorClass> nef_brute_oracle(const NSLattice& ns, const DivisorClass& e, Int y_bound, Int z_box);

struct SectionSearch {
  enum class Status { found, none_within_bounds, impossible } status = Status::none_within_bounds;
  std::optional<DivisorClass> section;
  Int divisibility = 0;
  Int y_bound = 0, z_box = 0;
};
const char* to_string(SectionSearch::Status s);
// y_bound / z_box <= 0 select the defaults 4|det L| and 2|det L|.
SectionSearch find_section(const NSLattice& ns, const DivisorClass& e, Int y_bound = 0, Int z_box = 0);

struct FibrationClass {
  DivisorClass e;
  NefVerdict verdict;
  std::optional<SectionSearch> section;  // filled only for nef classes when requested
};
// Every primitive isotropic E with E·F = β and γ in [0, β)^r, with verdicts,
// ordered lexicographically by (γ, α).
std::vector<FibrationClass> find_fibrations(const NSLattice& ns, Int beta, bool with_sections = false,
                                            bool nef_only = false);

enum class ExtensionVerdict { positive_entropy, inconclusive };
const char* to_string(ExtensionVerdict v);
// sub: rows spanning a corank-1 primitive sublattice L' of L.
ExtensionVerdict extension_criterion(const Lattice& l, const Mat& sub, bool sub_has_positive_entropy);
// Determinant part only: |det L| > 2|det L'|, or equality with rank(L) + 2 <= 10.
bool extension_det_condition(const BigInt& det_l, const BigInt& det_sub, std::size_t rank_l);

}  // namespace k3e
