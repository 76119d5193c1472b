#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace mcvrp;

TEST_CASE("lp export is byte-stable and sectioned") {
  const auto model = build_model(paper_instance(), Variant::Original);
  const auto a = export_lp(model);
  const auto b = export_lp(model);
  CHECK(a == b);
  CHECK(a.find("Minimize") != std::string::npos);
  CHECK(a.find("Subject To") != std::string::npos);
  CHECK(a.find("Bounds") != std::string::npos);
  CHECK(a.find("Binaries") != std::string::npos);
  CHECK(a.find("Generals") != std::string::npos);
  CHECK(a.rfind("End\n") == a.size() - 4);
  CHECK(a.find("C5_i1_j2_k1_p1:") != std::string::npos);
  CHECK(a.find("0 <= u_1_1_1 <= 500") != std::string::npos);
}

TEST_CASE("mps export is byte-stable and sectioned") {
  const auto model = build_model(paper_instance(), Variant::WithFix12);
  const auto a = export_mps(model);
  CHECK(a == export_mps(model));
  for (const char* section : {"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"}) {
    CHECK(a.find(section) != std::string::npos);
  }
  CHECK(a.find(" N  COST") != std::string::npos);
  CHECK(a.find("'INTORG'") != std::string::npos);
  CHECK(a.find("'INTEND'") != std::string::npos);
  CHECK(a.find(" BV ") != std::string::npos);
  CHECK(a.find(" E  F2") != std::string::npos);
}

TEST_CASE("empty model exports well-formed documents") {
  MilpModel empty;
  const auto lp = export_lp(empty);
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find("End") != std::string::npos);
  const auto mps = export_mps(empty);
  CHECK(mps.find("ROWS") != std::string::npos);
  CHECK(mps.find("ENDATA") != std::string::npos);
}

TEST_CASE("exports cover every variant without collisions") {
  const auto inst = paper_instance();
  for (auto variant :
       {Variant::Original, Variant::WithFix1, Variant::WithFix12, Variant::WithFix123, Variant::Strengthened}) {
    const auto model = build_model(inst, variant);
    std::set<std::string> names;
    for (const auto& c : model.constraints) {
      CHECK(names.insert(mcvrp::detail::sanitize_name(c.label)).second);
    }
    const auto lp = export_lp(model);
    CHECK(lp.size() > 1000);
    const auto mps = export_mps(model);
    CHECK(mps.size() > 1000);
  }
}

TEST_CASE("lp lines carry no unsanitized characters") {
  const auto model = build_model(paper_instance(), Variant::Strengthened);
  const auto lp = export_lp(model);
  for (char c : {'[', ']', ',', '='}) {
    // '=' may appear only as a relational operator surrounded by spaces
    if (c == '=') continue;
    CHECK(lp.find(c) == std::string::npos);
  }
}

TEST_CASE("objective terms match the distance matrix") {
  const auto inst = paper_instance();
  const auto model = build_model(inst, Variant::Original);
  Int total = 0;
  for (const auto& [coeff, ref] : model.objective) {
    CHECK(ref.kind == VarKind::X);
    CHECK(coeff == inst.dist(ref.i, ref.j));
    total += coeff;
  }
  Int expect = 0;
  for (Int k = 1; k <= 2; ++k)
    for (Int i = 0; i <= 10; ++i)
      for (Int j = 0; j <= 10; ++j)
        if (i != j) expect += inst.dist(i, j);
  CHECK(total == expect);
}
