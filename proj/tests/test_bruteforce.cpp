#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace mcvrp;

TEST_CASE("two facilities forced onto one vehicle match the exact tour") {
  std::mt19937 rng(401);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testsupport::random_instance(rng, {.min_n = 2, .max_n = 2, .max_k = 1, .max_p = 1});
    const auto bf = brute_force_milp(build_model(inst, Variant::Strengthened));
    REQUIRE(bf.status == BruteForceResult::Status::Optimal);
    CHECK(bf.objective == held_karp_tour(inst, {1, 2}).cost);
    // and the winning assignment is clean under the strengthened catalog
    const auto eval = evaluate(build_model(inst, Variant::Strengthened), bf.assignment);
    CHECK(eval.violations.empty());
  }
}

TEST_CASE("strengthened optimum equals the semantic optimum on tiny instances") {
  std::mt19937 rng(402);
  for (int trial = 0; trial < 8; ++trial) {
    const auto inst = testsupport::random_instance(rng, {.min_n = 1, .max_n = 3, .max_k = 2, .max_p = 1});
    const auto bf = brute_force_milp(build_model(inst, Variant::Strengthened));
    const auto sem = exact_semantic_solve(inst);
    REQUIRE(bf.status == BruteForceResult::Status::Optimal);
    REQUIRE(sem.status == SemanticSolveResult::Status::Optimal);
    INFO("trial " << trial);
    CHECK(bf.objective == sem.plan.total_distance);
  }
}

TEST_CASE("the written model relaxes the strengthened one") {
  std::mt19937 rng(403);
  for (int trial = 0; trial < 6; ++trial) {
    const auto inst = testsupport::random_instance(rng, {.min_n = 2, .max_n = 3, .max_k = 1, .max_p = 1});
    const auto original = brute_force_milp(build_model(inst, Variant::Original));
    const auto strengthened = brute_force_milp(build_model(inst, Variant::Strengthened));
    REQUIRE(original.status == BruteForceResult::Status::Optimal);
    REQUIRE(strengthened.status == BruteForceResult::Status::Optimal);
    CHECK(original.objective <= strengthened.objective);
  }
}

TEST_CASE("gap fixture: petals beat the tour, pinned values") {
  const auto inst = testsupport::gap3_instance();
  const auto bf = brute_force_milp(build_model(inst, Variant::Original));
  REQUIRE(bf.status == BruteForceResult::Status::Optimal);
  CHECK(bf.objective == 12);  // three petals
  const auto sem = exact_semantic_solve(inst);
  CHECK(sem.plan.total_distance == 21);  // single tour 0->2->3->1->0 or 0->1->3->2->0
  CHECK(sem.plan.total_distance - bf.objective == 9);

  // the model's winning assignment is admissible for the model but
  // semantically defective
  CHECK(evaluate(build_model(inst, Variant::Original), bf.assignment).violations.empty());
  const auto report = semantic_validate(inst, bf.assignment);
  CHECK_FALSE(report.violations.empty());
  CHECK(report.violation_kinds().count(RouteViolationKind::MultipleDepotDepartures) == 1);
}

TEST_CASE("contradictory rows are reported infeasible") {
  const auto inst = testsupport::gap3_instance();
  auto model = build_model(inst, Variant::Original);
  LinearConstraint force_up;
  force_up.family = Family::F3;
  force_up.sense = Sense::GE;
  force_up.rhs = 1;
  force_up.label = "force_up";
  force_up.terms.push_back({1, var_x(0, 1, 1)});
  LinearConstraint force_down;
  force_down.family = Family::F3;
  force_down.sense = Sense::LE;
  force_down.rhs = 0;
  force_down.label = "force_down";
  force_down.terms.push_back({1, var_x(0, 1, 1)});
  model.constraints.push_back(force_up);
  model.constraints.push_back(force_down);
  CHECK(brute_force_milp(model).status == BruteForceResult::Status::Infeasible);
}

TEST_CASE("node limit reports exhaustion instead of a wrong answer") {
  const auto inst = testsupport::gap3_instance();
  const auto bf = brute_force_milp(build_model(inst, Variant::Original), 10);
  CHECK(bf.status == BruteForceResult::Status::LimitExceeded);
}

TEST_CASE("binary guard fires on large models") {
  CHECK_THROWS_AS(brute_force_milp(build_model(paper_instance(), Variant::Original)), GuardError);
}

TEST_CASE("boundary cuts cannot repair the petal optimum, added rows can") {
  const auto inst = testsupport::gap3_instance();
  const auto plain = brute_force_milp(build_model(inst, Variant::Original));
  REQUIRE(plain.status == BruteForceResult::Status::Optimal);
  REQUIRE(plain.objective == 12);

  // every petal touches the depot: the separator has nothing to cut, and
  // even the exhaustive member scans reject nothing
  for (Int k = 1; k <= inst.vehicle_count; ++k) {
    CHECK_FALSE(separate_subtour(inst, plain.assignment, k).has_value());
  }
  CHECK_FALSE(scan_cut_members(inst, plain.assignment, CutFamily::Connectivity).found);
  CHECK_FALSE(scan_cut_members(inst, plain.assignment, CutFamily::Literal).found);

  // an extra row does participate in the search: capping the depot
  // departures at two merges a petal pair and the optimum rises
  LinearConstraint cap;
  cap.family = Family::F3;
  cap.sense = Sense::LE;
  cap.rhs = 2;
  cap.label = "depot_departure_cap";
  for (Int j = 1; j <= 3; ++j) cap.terms.push_back({1, var_x(0, j, 1)});
  const auto capped = brute_force_milp(build_model(inst, Variant::Original, {cap}));
  REQUIRE(capped.status == BruteForceResult::Status::Optimal);
  CHECK(capped.objective == 16);  // {2,3} pair plus the {1} petal
}

TEST_CASE("least-u witness accompanies the optimum") {
  const auto inst = testsupport::gap3_instance();
  const auto bf = brute_force_milp(build_model(inst, Variant::Original));
  REQUIRE(bf.status == BruteForceResult::Status::Optimal);
  // every facility visited by vehicle 1, so the floors are the demands
  for (Int i = 1; i <= 3; ++i) CHECK(bf.assignment.value_or_zero(var_u(i, 1, 1)) == 1);
}
