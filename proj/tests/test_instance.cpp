#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace mcvrp;

TEST_CASE("built-in instance matches the published data") {
  const auto inst = paper_instance();
  CHECK(inst.hcf_count == 10);
  CHECK(inst.vehicle_count == 2);
  CHECK(inst.compartment_count == 3);
  CHECK(inst.capacity == std::vector<Int>{500, 500, 500});
  CHECK(inst.demand[0] == std::vector<Int>{7, 7, 6});
  CHECK(inst.demand[8] == std::vector<Int>{0, 4, 7});
  CHECK(inst.q(1, 1) == 7);
  CHECK(inst.q(9, 1) == 0);
  CHECK(inst.dist(0, 1) == 10);
  CHECK(inst.dist(1, 0) == 11);
  CHECK(inst.dist(2, 1) == 1);
  for (Int i = 0; i <= 10; ++i) CHECK(inst.dist(i, i) == 0);
  CHECK(validate_instance(inst).empty());
}

TEST_CASE("column totals of the built-in demands") {
  const auto inst = paper_instance();
  CHECK(total_demand(inst, 1) == 53);
  CHECK(total_demand(inst, 2) == 48);
  CHECK(total_demand(inst, 3) == 45);
  CHECK_THROWS_AS(total_demand(inst, 0), std::out_of_range);
  CHECK_THROWS_AS(total_demand(inst, 4), std::out_of_range);
}

TEST_CASE("parse round-trips serialize") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = testsupport::random_instance(rng);
    const auto text = serialize_instance(inst);
    const auto back = parse_instance(text);
    CHECK(back == inst);
    CHECK(serialize_instance(back) == text);
  }
}

TEST_CASE("demand above capacity is rejected with the offending entry named") {
  auto inst = paper_instance();
  inst.demand[0][0] = 600;
  const std::string text = serialize_instance(inst);
  try {
    parse_instance(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("q[1][1]") != std::string::npos);
  }
}

TEST_CASE("degenerate single-facility instance is valid") {
  WasteInstance inst;
  inst.hcf_count = 1;
  inst.vehicle_count = 1;
  inst.compartment_count = 1;
  inst.capacity = {1};
  inst.demand = {{0}};
  inst.distance = {{0, 1}, {1, 0}};
  CHECK(validate_instance(inst).empty());
  const auto back = parse_instance(serialize_instance(inst));
  CHECK(back == inst);
}

TEST_CASE("schema errors name the field") {
  CHECK_THROWS_AS(parse_instance("not json"), ParseError);
  CHECK_THROWS_AS(parse_instance("[1,2]"), ParseError);
  try {
    parse_instance(R"({"hcf_count": 1})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("vehicle_count") != std::string::npos);
  }
  try {
    parse_instance(R"({"hcf_count": "x"})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("hcf_count") != std::string::npos);
  }
}

TEST_CASE("fleet capacity shortfall is a warning, not an error") {
  WasteInstance inst;
  inst.hcf_count = 2;
  inst.vehicle_count = 1;
  inst.compartment_count = 1;
  inst.capacity = {5};
  inst.demand = {{4}, {4}};  // total 8 > 5 but each <= 5
  inst.distance = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  const auto issues = validate_instance(inst);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].severity == ValidationIssue::Severity::Warning);
  // parse accepts it: warnings do not block
  CHECK(parse_instance(serialize_instance(inst)) == inst);
}

TEST_CASE("dimension mismatches are reported") {
  auto inst = paper_instance();
  inst.distance.pop_back();
  CHECK_FALSE(validate_instance(inst).empty());
  auto inst2 = paper_instance();
  inst2.demand[3].pop_back();
  CHECK_FALSE(validate_instance(inst2).empty());
  auto inst3 = paper_instance();
  inst3.distance[2][2] = 5;
  CHECK_FALSE(validate_instance(inst3).empty());
}

TEST_CASE("penalty column is parsed and carried but optional") {
  auto inst = paper_instance();
  inst.penalty = {3, 4};
  const auto back = parse_instance(serialize_instance(inst));
  CHECK(back.penalty == std::vector<Int>{3, 4});
  // wrong length is an error
  inst.penalty = {3};
  CHECK_FALSE(validate_instance(inst).empty());
}

TEST_CASE("digest is stable and content-sensitive") {
  const auto a = instance_digest(paper_instance());
  const auto b = instance_digest(paper_instance());
  CHECK(a == b);
  auto inst = paper_instance();
  inst.demand[0][0] = 8;
  CHECK(instance_digest(inst) != a);
}
