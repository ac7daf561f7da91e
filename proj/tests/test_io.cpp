#include <gtest/gtest.h>

#include "k3e/io.hpp"

using namespace k3e;
using io::json;

TEST(IO, LatticeRoundTrip) {
  Lattice l = parse_builtin("D4+A1");
  Lattice back = io::lattice_from_json(io::to_json(l));
  EXPECT_EQ(back.gram, l.gram);
  EXPECT_EQ(back.name, l.name);
  EXPECT_EQ(io::lattice_from_json(json::parse("[[-2,1],[1,-2]]")).gram, parse_builtin("A2").gram);
}

TEST(IO, MalformedInputRaisesParseError) {
  EXPECT_THROW(io::parse_json("{\"gram\": [[-2,1],[1,"), ParseError);
  EXPECT_THROW(io::lattice_from_json(json::parse("{\"gram\": [[-2,1]]}")), ParseError);
  EXPECT_THROW(io::lattice_from_json(json::parse("{\"gram\": [[-3]]}")), ParseError);
  EXPECT_THROW(io::lattice_from_json(json::parse("{\"gram\": [[\"a\"]]}")), ParseError);
  EXPECT_THROW(io::lattice_from_json(json::parse("{\"name\": \"x\"}")), ParseError);
  EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), ParseError);
  EXPECT_THROW(io::load_lattice("Q5"), ParseError);
}

TEST(IO, NSAndDivisors) {
  NSLattice ns = io::ns_from_json(json::parse(R"({"L": {"gram": [[-8,0],[0,-6]]}})"));
  EXPECT_EQ(ns.rank_L(), 2u);
  DivisorClass a = io::divisor_from_json(json::parse(R"({"x":25,"y":12,"z":[6,2]})"), ns);
  DivisorClass b = io::divisor_from_json(json::parse("[25,12,6,2]"), ns);
  EXPECT_EQ(a, b);
  EXPECT_EQ(io::divisor_from_json(io::to_json(a), ns), a);
  EXPECT_THROW(io::divisor_from_json(json::parse("[25,12,6]"), ns), ParseError);
  EXPECT_THROW(io::divisor_from_json(json::parse(R"({"x":1,"y":0})"), ns), ParseError);
  EXPECT_THROW(io::ns_from_json(json::parse(R"({"M": 1})")), ParseError);
}

TEST(IO, VerdictsIncludeWitnesses) {
  NSLattice ns(Lattice(Mat{{-4}}));
  json v = io::to_json(is_nef_isotropic(ns, DivisorClass{3, 1, {1}}));
  EXPECT_EQ(v["status"], "not-nef");
  EXPECT_TRUE(v["witness"].is_object());
  json s = io::to_json(find_section(NSLattice(Lattice(Mat{{-8}})), DivisorClass{4, 2, {1}}));
  EXPECT_EQ(s["status"], "none-exists");
  EXPECT_TRUE(s["section"].is_null());
}

TEST(IO, CatalogRoundTrip) {
  Catalog c = build_catalog(3, 60);
  ASSERT_FALSE(c.lattices.empty());
  Catalog back = io::catalog_from_json(io::to_json(c), 3);
  ASSERT_EQ(back.lattices.size(), c.lattices.size());
  for (std::size_t i = 0; i < c.lattices.size(); ++i) EXPECT_EQ(back.lattices[i].gram, c.lattices[i].gram);
  EXPECT_THROW(io::catalog_from_json(io::to_json(c), 4), PreconditionError);
  EXPECT_THROW(io::catalog_from_json(json::parse("{}"), 3), ParseError);
}

TEST(IO, ShippedCatalogVerifies) {
  Catalog c = io::load_catalog(std::string(K3E_DATA_DIR) + "/catalog_rank3.json", 3);
  EXPECT_GT(c.lattices.size(), 100u);
  CatalogCheck chk = verify_catalog(c);
  EXPECT_TRUE(chk.mismatches.empty());
  EXPECT_GT(chk.confirmed, 0u);
  for (const auto& l : c.lattices) EXPECT_EQ(primitive_scale_divisor(l), 1);
}
