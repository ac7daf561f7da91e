#pragma once

#include <optional>

#include "k3e/lattice.hpp"

namespace k3e {

// Vector with its norm under the lattice's own Gram matrix.
struct ShortVector {
  Vec v;
  Int norm;
};

// All nonzero v with |v^T G v| <= bound in a definite lattice, one per ±pair
// (first nonzero coordinate positive), sorted by |norm| then lexicographically.
std::vector<ShortVector> short_vectors(const Lattice& l, Int bound);

// Smallest |norm| of a nonzero vector.
Int minimum(const Lattice& l);

// Root pairs (|norm| = 2), canonical sign.
std::vector<Vec> roots(const Lattice& l);

struct RootSublattice {
  Lattice lattice;
  Mat basis;  // rows in the coordinates of the ambient lattice
};
RootSublattice root_sublattice(const Lattice& l);
bool is_root_overlattice(const Lattice& l);

// ADE components of the root system, e.g. {"A1","A1","E8"}; sorted.
std::vector<std::string> root_system_type(const Lattice& l);

struct IsometryResult {
  Tri found = Tri::no;
  Mat witness;  // M with M^T G1 M = G2 (columns: basis of l2 in l1 coordinates)
  std::size_t nodes = 0;
};
// Isometry search between definite lattices. `unknown` when the node cap is hit.
IsometryResult is_isometric(const Lattice& l1, const Lattice& l2, std::size_t node_cap = 10000000);

// Cheap invariant used to bucket lattices before isometry tests.
struct Fingerprint {
  Int rank = 0;
  BigInt det;
  std::vector<Int> counts;  // number of ±pairs with |norm| = 2, 4, ..., 2*counts.size()
  bool operator==(const Fingerprint& o) const = default;
  auto operator<=>(const Fingerprint& o) const = default;
};
Fingerprint fingerprint(const Lattice& l, Int max_norm = 4);

struct AutGroup {
  std::vector<Mat> generators;  // matrices A with A^T G A = G
  BigInt order;                 // exact when complete
  bool complete = true;
};
// Generators of O(L) for a definite lattice via a stabilizer chain.
AutGroup automorphism_group(const Lattice& l, std::size_t node_cap = 10000000);

// Action of an automorphism A (A^T G A = G) on the discriminant group, as the
// images of the form's generators.
FormMap induced_discriminant_action(const Lattice& l, const DiscriminantForm& a, const Mat& aut);

// Is O(L) -> O(A_L) surjective?
struct Surjectivity {
  Tri surjective = Tri::unknown;
  std::size_t image_order = 0;
  std::size_t target_order = 0;
};
Surjectivity restriction_surjective(const Lattice& l, std::size_t aut_node_cap = 10000000,
                                    std::size_t order_cap = 10000);

}  // namespace k3e
