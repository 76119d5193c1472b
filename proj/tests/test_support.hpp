#pragma once

#include <random>

#include <mcvrp/mcvrp.hpp>

namespace testsupport {

using namespace mcvrp;

/// Three facilities, one vehicle: the petal structure (three separate depot
/// loops) is far cheaper than any single tour, so the written model's
/// optimum sits strictly below the true one.
inline WasteInstance gap3_instance() {
  WasteInstance inst;
  inst.hcf_count = 3;
  inst.vehicle_count = 1;
  inst.compartment_count = 1;
  inst.capacity = {10};
  inst.demand = {{1}, {1}, {1}};
  inst.distance = {
      {0, 1, 2, 3},
      {1, 0, 9, 9},
      {2, 9, 0, 9},
      {3, 9, 9, 0},
  };
  return inst;
}

struct InstanceOptions {
  Int min_n = 1, max_n = 6;
  Int min_k = 1, max_k = 3;
  Int min_p = 1, max_p = 3;
  Int max_q = 9;          // per-facility demand cap
  Int min_cap = 0;        // 0: derive from demands so q <= Q always holds
  Int max_cap = 0;
  Int max_dist = 20;
  bool positive_demands = false;
};

inline WasteInstance random_instance(std::mt19937& rng, const InstanceOptions& opt = {}) {
  auto pick = [&rng](Int lo, Int hi) {
    return std::uniform_int_distribution<Int>(lo, hi)(rng);
  };
  WasteInstance inst;
  inst.hcf_count = pick(opt.min_n, opt.max_n);
  inst.vehicle_count = pick(opt.min_k, opt.max_k);
  inst.compartment_count = pick(opt.min_p, opt.max_p);
  for (Int p = 0; p < inst.compartment_count; ++p) {
    inst.capacity.push_back(opt.min_cap > 0 ? pick(opt.min_cap, opt.max_cap) : 1);
  }
  for (Int i = 0; i < inst.hcf_count; ++i) {
    std::vector<Int> row;
    for (Int p = 0; p < inst.compartment_count; ++p) {
      const Int hi = opt.min_cap > 0 ? std::min(opt.max_q, inst.capacity[static_cast<size_t>(p)]) : opt.max_q;
      row.push_back(pick(opt.positive_demands ? 1 : 0, std::max<Int>(hi, 1)));
    }
    inst.demand.push_back(row);
  }
  if (opt.min_cap <= 0) {
    // generous capacities: everything always fits
    for (Int p = 0; p < inst.compartment_count; ++p) {
      Int total = 0;
      for (Int i = 0; i < inst.hcf_count; ++i) total += inst.demand[static_cast<size_t>(i)][static_cast<size_t>(p)];
      inst.capacity[static_cast<size_t>(p)] = std::max<Int>(total, 1) + pick(0, 5);
    }
  }
  const Int nn = inst.hcf_count + 1;
  for (Int i = 0; i < nn; ++i) {
    std::vector<Int> row;
    for (Int j = 0; j < nn; ++j) row.push_back(i == j ? 0 : pick(0, opt.max_dist));
    inst.distance.push_back(row);
  }
  return inst;
}

/// Random subset of arc and visit values; mostly garbage, occasionally
/// structured. Useful for property tests that only need coverage of the
/// value space, not feasibility.
inline ModelAssignment random_routing(std::mt19937& rng, const WasteInstance& inst, double arc_prob = 0.15) {
  std::bernoulli_distribution arc(arc_prob);
  ModelAssignment asg;
  asg.partial = true;
  for (Int k = 1; k <= inst.vehicle_count; ++k) {
    std::vector<uint8_t> touched(static_cast<size_t>(inst.hcf_count) + 1, 0);
    for (Int i = 0; i <= inst.hcf_count; ++i)
      for (Int j = 0; j <= inst.hcf_count; ++j) {
        if (i != j && arc(rng)) {
          asg.set(var_x(i, j, k), 1);
          touched[static_cast<size_t>(i)] = touched[static_cast<size_t>(j)] = 1;
        }
      }
    for (Int i = 1; i <= inst.hcf_count; ++i) {
      const double pr = touched[static_cast<size_t>(i)] ? 0.8 : 0.2;
      if (std::bernoulli_distribution(pr)(rng)) asg.set(var_y(i, k), 1);
    }
  }
  return asg;
}

}  // namespace testsupport
