#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace mcvrp;

TEST_CASE("reported solution pins, canonical indexing") {
  const auto asg = paper_reported_assignment();
  CHECK(asg.partial);

  // vehicle 1 serves facility 4 only
  CHECK(asg.value_or_zero(var_y(4, 1)) == 1);
  CHECK(asg.value_or_zero(var_x(0, 4, 1)) == 1);
  CHECK(asg.value_or_zero(var_x(4, 0, 1)) == 1);
  for (Int p = 1; p <= 3; ++p) CHECK(asg.value_or_zero(var_z(4, 1, p)) == 1);

  // the u listing is shifted by one facility label: the entry the listing
  // calls 7 lands at facility 8
  for (Int p = 1; p <= 3; ++p) {
    CHECK(asg.value_or_zero(var_u(8, 1, p)) == 500);
    CHECK(asg.value_or_zero(var_u(8, 2, p)) == 500);
  }
  CHECK(asg.value_or_zero(var_u(1, 1, 1)) == 7);   // listing row 0 = facility 1
  CHECK(asg.value_or_zero(var_u(9, 1, 1)) == 0);   // unlisted zero
  CHECK(asg.value_or_zero(var_u(9, 1, 2)) == 4);
  CHECK(asg.value_or_zero(var_u(6, 2, 1)) == 29);  // the highest credible load

  // vehicle 2 carries everything else, depot claimed by vehicle 2 only
  for (Int i : {1, 2, 3, 5, 6, 7, 8, 9, 10}) CHECK(asg.value_or_zero(var_y(i, 2)) == 1);
  CHECK(asg.value_or_zero(var_y(0, 2)) == 1);
  CHECK(asg.value_or_zero(var_y(0, 1)) == 0);
  CHECK(asg.value_or_zero(var_y(4, 2)) == 0);
}

TEST_CASE("reported solution satisfies every family of the original catalog") {
  const auto inst = paper_instance();
  const auto eval = evaluate(build_model(inst, Variant::Original), paper_reported_assignment());
  CHECK(eval.violations.empty());
}

TEST_CASE("reported solution violates the gated bounds") {
  const auto inst = paper_instance();
  const auto eval = evaluate(build_model(inst, Variant::WithFix1), paper_reported_assignment());
  REQUIRE_FALSE(eval.violations.empty());
  bool found_8_1 = false;
  for (const auto& v : eval.violations) {
    CHECK(v.family == Family::F1);
    if (v.label.find("F1hi[i=8,k=1") != std::string::npos) found_8_1 = true;
  }
  CHECK(found_8_1);  // u[8,1,p]=500 with y[8,1]=0
}

TEST_CASE("all-zero assignment violates exactly the forced families") {
  const auto inst = paper_instance();
  ModelAssignment zero;
  zero.partial = true;
  const auto eval = evaluate(build_model(inst, Variant::Original), zero);
  const auto counts = eval.family_counts();
  CHECK(counts.at("C1") == 10);
  CHECK(counts.at("C7") == 30);
  // every u floor with q > 0: one q entry is zero (facility 9, compartment
  // 1) and both vehicles share it
  CHECK(counts.at("C5b") == 58);
  CHECK(counts.size() == 3);
}

TEST_CASE("evaluate matches a naive re-evaluation on random inputs") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 25; ++trial) {
    const auto inst = testsupport::random_instance(rng);
    const auto model = build_model(inst, trial % 2 ? Variant::WithFix12 : Variant::Original);
    auto asg = testsupport::random_routing(rng, inst);
    // sprinkle some u values
    std::uniform_int_distribution<Int> pick_i(1, inst.hcf_count);
    for (int extra = 0; extra < 5; ++extra) {
      const Int i = pick_i(rng);
      const Int k = std::uniform_int_distribution<Int>(1, inst.vehicle_count)(rng);
      const Int p = std::uniform_int_distribution<Int>(1, inst.compartment_count)(rng);
      asg.set(var_u(i, k, p), std::uniform_int_distribution<Int>(0, inst.cap(p))(rng));
    }
    const auto eval = evaluate(model, asg);
    // independent re-check, straight off the definitions
    size_t failing = 0;
    for (const auto& c : model.constraints) {
      Int lhs = 0;
      for (const auto& [coeff, ref] : c.terms) lhs += coeff * asg.value_or_zero(ref);
      const bool ok = c.sense == Sense::LE ? lhs <= c.rhs : c.sense == Sense::EQ ? lhs == c.rhs : lhs >= c.rhs;
      if (!ok) ++failing;
    }
    CHECK(eval.violations.size() == failing);
    for (const auto& v : eval.violations) {
      const bool ok = v.sense == Sense::LE ? v.lhs <= v.rhs : v.sense == Sense::EQ ? v.lhs == v.rhs : v.lhs >= v.rhs;
      CHECK_FALSE(ok);
    }
  }
}

TEST_CASE("evaluate rejects undeclared variables and domain violations") {
  const auto inst = paper_instance();
  const auto model = build_model(inst, Variant::Original);
  ModelAssignment bad;
  bad.set(var_x(0, 1, 7), 1);  // vehicle 7 does not exist
  CHECK_THROWS_AS(evaluate(model, bad), std::invalid_argument);
  ModelAssignment two;
  two.set(var_x(0, 1, 1), 2);
  CHECK_THROWS_AS(evaluate(model, two), std::invalid_argument);
  ModelAssignment overcap;
  overcap.set(var_u(1, 1, 1), 501);
  CHECK_THROWS_AS(evaluate(model, overcap), std::invalid_argument);
}

TEST_CASE("total assignments must cover every variable") {
  const auto inst = paper_instance();
  const auto model = build_model(inst, Variant::Original);
  ModelAssignment asg = paper_reported_assignment();
  asg.partial = false;
  CHECK_THROWS_AS(evaluate(model, asg), std::invalid_argument);
}

TEST_CASE("partial evaluation records its zero defaults") {
  const auto inst = paper_instance();
  const auto model = build_model(inst, Variant::Original);
  ModelAssignment zero;
  zero.partial = true;
  CHECK(evaluate(model, zero).defaulted_variables > 0);
}

TEST_CASE("objective of the reported solution") {
  const auto inst = paper_instance();
  CHECK(objective_value(inst, paper_reported_assignment()) == 145);

  ModelAssignment zero;
  CHECK(objective_value(inst, zero) == 0);

  ModelAssignment petal;
  petal.set(var_x(0, 4, 1), 1);
  petal.set(var_x(4, 0, 1), 1);
  CHECK(objective_value(inst, petal) == 10 + 18);
}

TEST_CASE("objective is invariant under vehicle reindexing") {
  std::mt19937 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testsupport::random_instance(rng, {.min_k = 2});
    const auto asg = testsupport::random_routing(rng, inst);
    ModelAssignment swapped;
    for (const auto& [ref, value] : asg.values) {
      VariableRef r = ref;
      if (r.k == 1)
        r.k = 2;
      else if (r.k == 2)
        r.k = 1;
      swapped.set(r, value);
    }
    CHECK(objective_value(inst, asg) == objective_value(inst, swapped));
  }
}

TEST_CASE("assignment files round-trip") {
  const auto asg = paper_reported_assignment();
  const auto text = serialize_assignment(asg);
  const auto back = parse_assignment(text);
  // zero entries are dropped on write; compare nonzero content
  for (const auto& [ref, value] : asg.values) {
    CHECK(back.value_or_zero(ref) == (value == 0 ? 0 : value));
  }
  CHECK(serialize_assignment(back) == text);
  CHECK_THROWS_AS(parse_assignment("[]"), ParseError);
  CHECK_THROWS_AS(parse_assignment(R"({"x[1,2,1]": "one"})"), ParseError);
}
