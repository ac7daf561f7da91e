#include "k3e/tables.hpp"

#include <array>

namespace k3e::tables {

Int delta_r(int r) {
  static constexpr std::array<Int, kDeltaMaxRank> kDelta{4,   12,  32,  64,  128, 192, 256, 256, 278,
                                                         283, 266, 233, 191, 146, 106, 73,  47,  29};
  if (r < 1 || r > kDeltaMaxRank) throw PreconditionError("Δ_r is tabulated for 1 <= r <= 18");
  return kDelta[static_cast<std::size_t>(r - 1)];
}

const std::vector<Int>& zero_entropy_k() {
  static const std::vector<Int> k{2, 3, 4, 5, 7, 9, 13, 25};
  return k;
}

Int TorsionGroup::order() const {
  Int o = 1;
  for (Int n : invariants) o *= n;
  return o;
}

const std::vector<TorsionGroup>& torsion_groups() {
  static const std::vector<TorsionGroup> g{
      {"Z2", {2}},         {"Z3", {3}},         {"Z4", {4}},         {"Z2xZ2", {2, 2}},
      {"Z5", {5}},         {"Z6", {6}},         {"Z7", {7}},         {"Z8", {8}},
      {"Z2xZ4", {2, 4}},   {"Z3xZ3", {3, 3}},   {"Z2xZ6", {2, 6}},   {"Z4xZ4", {4, 4}},
  };
  return g;
}

const TorsionGroup& torsion_group(const std::string& name) {
  for (const auto& g : torsion_groups())
    if (g.name == name) return g;
  throw PreconditionError("unknown torsion group '" + name + "' (expected one of Z2..Z8, Z2xZ2, Z2xZ4, Z3xZ3, Z2xZ6, Z4xZ4)");
}

const std::vector<Mat>& rank2_unique_list() {
  static const std::vector<Mat> l{
      {{-14, 3}, {3, -6}}, {{-10, 2}, {2, -4}}, {{-10, 0}, {0, -4}}, {{-8, 0}, {0, -6}},
      {{-8, 2}, {2, -4}},  {{-6, 3}, {3, -6}},  {{-6, 1}, {1, -6}},  {{-6, 2}, {2, -4}},
      {{-6, 0}, {0, -4}},  {{-4, 2}, {2, -4}},  {{-4, 1}, {1, -4}},  {{-4, 0}, {0, -4}},
  };
  return l;
}

const std::vector<Mat>& zero_entropy_candidates(int rank) {
  static const std::vector<Mat> r2{
      {{-14, 3}, {3, -6}}, {{-10, 2}, {2, -4}}, {{-10, 0}, {0, -4}}, {{-6, 3}, {3, -6}}, {{-6, 1}, {1, -6}},
      {{-6, 2}, {2, -4}},  {{-6, 0}, {0, -4}},  {{-4, 2}, {2, -4}},  {{-4, 1}, {1, -4}}, {{-4, 0}, {0, -4}},
  };
  static const std::vector<Mat> r3{
      {{-4, -2, -2}, {-2, -4, -2}, {-2, -2, -6}}, {{-4, -1, -1}, {-1, -4, 1}, {-1, 1, -4}},
      {{-4, 2, 2}, {2, -6, -1}, {2, -1, -6}},     {{-4, 1, 2}, {1, -4, 1}, {2, 1, -4}},
      {{-4, 1, 1}, {1, -4, -1}, {1, -1, -4}},     {{-4, 2, 0}, {2, -4, 0}, {0, 0, -6}},
      {{-4, -2, 2}, {-2, -4, 0}, {2, 0, -4}},
  };
  static const std::vector<Mat> r4{
      {{-4, 0, 0, -2}, {0, -4, 0, -2}, {0, 0, -4, -2}, {-2, -2, -2, -4}},
      {{-4, -2, -1, 1}, {-2, -4, 1, -1}, {-1, 1, -4, 1}, {1, -1, 1, -4}},
      {{-4, 1, 1, 1}, {1, -4, 1, 1}, {1, 1, -4, 1}, {1, 1, 1, -4}},
      {{-4, -1, -2, 2}, {-1, -4, 1, -1}, {-2, 1, -4, 1}, {2, -1, 1, -4}},
  };
  static const std::vector<Mat> r5{
      {{-4, -1, -1, -1, -2}, {-1, -4, -1, -1, -2}, {-1, -1, -4, -1, -2}, {-1, -1, -1, -4, 1}, {-2, -2, -2, 1, -4}},
  };
  switch (rank) {
    case 2: return r2;
    case 3: return r3;
    case 4: return r4;
    case 5: return r5;
    default: throw PreconditionError("candidate lists exist for ranks 2..5");
  }
}

const std::vector<FibrationCountRow>& fibration_counts() {
  static const std::vector<FibrationCountRow> rows{
      {4, 1, 4, 5}, {4, 2, 2, 3}, {4, 3, 0, 0}, {4, 4, 2, 3}, {4, 5, 0, 0}, {4, 6, 0, 0}, {4, 7, 0, 0},
      {4, 8, 0, 0}, {4, 9, 0, 0}, {4, 10, 1, 2}, {5, 1, 0, 0}, {5, 2, 0, 0}, {5, 3, 8, 3}, {5, 4, 0, 0},
      {5, 5, 2, 3}, {5, 6, 4, 3}, {5, 7, 2, 2}, {6, 1, 3, 2}, {6, 2, 8, 3}, {6, 3, 24, 5}, {6, 4, 2, 3},
      {7, 1, 20, 3},
  };
  return rows;
}

std::vector<Int> root_discriminant_expected(char type, int n) {
  switch (type) {
    case 'A': return {n + 1};
    case 'D': return n % 2 == 0 ? std::vector<Int>{2, 2} : std::vector<Int>{4};
    case 'E':
      if (n == 6) return {3};
      if (n == 7) return {2};
      if (n == 8) return {};
      break;
    default: break;
  }
  throw PreconditionError("not an irreducible root lattice");
}

const std::vector<std::string>& finite_automorphism_exceptions() {
  static const std::vector<std::string> e{"E8+A1"};
  return e;
}

}  // namespace k3e::tables
