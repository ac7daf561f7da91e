#pragma once

#include <functional>
#include <optional>
#include <string>

#include "k3e/types.hpp"

namespace k3e {

// Reduced fraction with positive denominator.
struct Fraction {
  Int num = 0, den = 1;
  static Fraction make(Int n, Int d);
  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
  std::string str() const;
};

// Element of A = ⊕ Z/d_i, coordinates in [0, d_i).
using Elem = std::vector<Int>;

// Finite quadratic form (A_L, q mod 2Z, b mod 1Z) on generators g_i of order
// d_i. Values are stored scaled by the exponent D:
//   qnum[i] = q(g_i) * D  (mod 2D),   bnum[i][j] = b(g_i, g_j) * D  (mod D).
struct DiscriminantForm {
  std::vector<Int> orders;
  Int exponent = 1;
  std::vector<Int> qnum;
  Mat bnum;

  // Link back to the lattice (empty for abstract forms):
  // generator g_i lifts to the dual vector lift[i] / orders[i] (L coordinates),
  // and a dual vector x maps to coordinates (urow[i] . (G x)) mod orders[i].
  Mat lift;
  Mat urow;

  std::size_t ngens() const { return orders.size(); }
  Int size() const;  // |A|, throws CapExceeded past 2^62

  Int q(const Elem& a) const;                 // q(a) * D mod 2D
  Int b(const Elem& a, const Elem& c) const;  // b(a, c) * D mod D
  Fraction q_fraction(const Elem& a) const;
  Fraction b_fraction(const Elem& a, const Elem& c) const;

  Elem zero() const { return Elem(orders.size(), 0); }
  Elem add(const Elem& a, const Elem& c) const;
  Elem scale(const Elem& a, Int k) const;
  Int element_order(const Elem& a) const;
  Elem generator(std::size_t i) const;

  // Iterate every element in mixed-radix order; stops early if f returns false.
  void for_each(const std::function<bool(const Elem&)>& f) const;
  std::size_t index(const Elem& a) const;
  Elem from_index(std::size_t idx) const;

  // Dual-vector lift of a, as numerator vector over denominator `exponent`.
  Vec lift_numerator(const Elem& a) const;
  // Coordinates of the class of the dual vector y / den (G y / den must be integral).
  Elem reduce_dual(const Mat& gram, const Vec& y, Int den) const;

  // Sorted multiset of (order, q) over all elements; an isomorphism invariant.
  std::vector<std::pair<Int, Int>> value_profile() const;
};

// All elements of the subgroup generated by gens (BFS, capped).
std::vector<Elem> subgroup_elements(const DiscriminantForm& a, const std::vector<Elem>& gens,
                                    std::size_t cap = 1000000);
bool is_isotropic_set(const DiscriminantForm& a, const std::vector<Elem>& gens);

// An isometry A -> B of finite quadratic forms, recorded as images of A's generators.
using FormMap = std::vector<Elem>;

struct FormIsoResult {
  Tri found = Tri::no;
  FormMap map;
};
// Backtracking search with a node cap; `unknown` means the cap was hit.
FormIsoResult find_form_isometry(const DiscriminantForm& a, const DiscriminantForm& b,
                                 std::size_t node_cap = 10000000);

struct FormGroup {
  std::vector<FormMap> elements;
  bool complete = true;
};
// O(A) by brute force. Throws CapExceeded when |A| > order_cap.
FormGroup form_orthogonal_group(const DiscriminantForm& a, std::size_t order_cap = 10000,
                                std::size_t node_cap = 10000000);

Elem apply_form_map(const DiscriminantForm& a, const FormMap& m, const Elem& x);
FormMap compose_form_maps(const DiscriminantForm& a, const FormMap& f, const FormMap& g);  // f∘g

}  // namespace k3e
