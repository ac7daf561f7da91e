#pragma once

#include <optional>
#include <string>

#include "k3e/discform.hpp"
#include "k3e/intmath.hpp"
#include "k3e/types.hpp"

namespace k3e {

// An integral lattice given by a Gram matrix in some basis.
struct Lattice {
  Mat gram;
  std::string name;

  Lattice() = default;
  explicit Lattice(Mat g, std::string n = {}) : gram(std::move(g)), name(std::move(n)) {}
  std::size_t rank() const { return gram.size(); }
};

enum class Definiteness { positive, negative, indefinite, degenerate };
const char* to_string(Definiteness d);

// Throws PreconditionError unless gram is square, symmetric and has even diagonal.
void require_even(const Mat& gram);
bool is_even(const Mat& gram);

BigInt det(const Lattice& l);
Definiteness definiteness(const Lattice& l);
bool is_hyperbolic(const Lattice& l);
Lattice negate(const Lattice& l);

// Largest b such that gram / b is still even integral.
Int primitive_scale_divisor(const Lattice& l);
Lattice rescale(const Lattice& l, Int m);
Lattice direct_sum(const std::vector<Lattice>& parts);
bool is_primitive_vector(const Vec& v);

DiscriminantForm discriminant_form(const Lattice& l);

struct Complement {
  Lattice lattice;
  Mat basis;                     // rows, in coordinates of the ambient lattice
  bool saturated_changed = false;  // input sublattice was not primitive
};
// Orthogonal complement of the sublattice spanned by `sub` (rows).
Complement orthogonal_complement(const Lattice& l, const Mat& sub);

struct Overlattice {
  Lattice lattice;
  Mat basis_num;  // rows: basis of M in L coordinates, numerators over `den` (row HNF)
  Int den = 1;
  Int index = 1;  // [M : L]
};
// Overlattice L + <lifts of gens>. gens must span an isotropic subgroup of A_L.
Overlattice overlattice(const Lattice& l, const std::vector<Elem>& gens);
Overlattice overlattice(const Lattice& l, const DiscriminantForm& a, const std::vector<Elem>& gens);

// Lattice spanned by integer rows `gens` divided by `den`, inside (Z^n, gram).
struct Spanned {
  Mat gram;
  Mat basis_num;  // row HNF numerators
};
Spanned lattice_from_generators(const Mat& gram, const Mat& gens, Int den);

// Builtin constructors; negative-definite sign convention for root lattices.
Lattice root_lattice_A(int n);
Lattice root_lattice_D(int n);
Lattice root_lattice_E(int n);
Lattice hyperbolic_plane();

// Parses names like "A1^8", "E8(2)+A1", "D4+<-12>", "U+E8". Throws ParseError.
Lattice parse_builtin(const std::string& name);

}  // namespace k3e
