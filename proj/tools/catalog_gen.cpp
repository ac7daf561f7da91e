// Writes a catalog of rank-n even negative-definite lattices with b(L) = 1 that
// are alone in their genus, complete up to the given |det| bound.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "k3e/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"k3e catalog generator"};
  int rank = 3;
  k3e::Int det_max = 1000;
  std::string out;
  app.add_option("--rank", rank, "lattice rank (2 or 3)")->check(CLI::Range(2, 3));
  app.add_option("--det-max", det_max, "largest |det| enumerated")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "output file (default stdout)");
  CLI11_PARSE(app, argc, argv);
  k3e::Catalog c = k3e::build_catalog(rank, det_max);
  std::string text = "[\n";
  for (std::size_t i = 0; i < c.lattices.size(); ++i) {
    auto& l = c.lattices[i];
    l.name = "r" + std::to_string(rank) + "-d" + k3e::BigInt(abs(k3e::det(l))).str() + "-" + std::to_string(i + 1);
    text += " " + k3e::io::to_json(l).dump() + (i + 1 < c.lattices.size() ? ",\n" : "\n");
  }
  text += "]\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    f << text;
  }
  std::cerr << c.lattices.size() << " lattices of rank " << rank << " with |det| <= " << det_max << "\n";
  return 0;
}
