#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assignment.hpp"
#include "export.hpp"
#include "oracle.hpp"
#include "routes.hpp"
#include "ufeas.hpp"

namespace mcvrp {

enum class IssueId { Issue1, Issue2, Issue3, Issue3Prime, Issue4, LowerBoundGap, Fix3Effectiveness };

inline const char* issue_name(IssueId id) {
  switch (id) {
    case IssueId::Issue1: return "Issue1";
    case IssueId::Issue2: return "Issue2";
    case IssueId::Issue3: return "Issue3";
    case IssueId::Issue3Prime: return "Issue3Prime";
    case IssueId::Issue4: return "Issue4";
    case IssueId::LowerBoundGap: return "LowerBoundGap";
    case IssueId::Fix3Effectiveness: return "Fix3Effectiveness";
  }
  return "?";
}

inline std::optional<IssueId> parse_issue_id(const std::string& s) {
  if (s == "1" || s == "Issue1") return IssueId::Issue1;
  if (s == "2" || s == "Issue2") return IssueId::Issue2;
  if (s == "3" || s == "Issue3") return IssueId::Issue3;
  if (s == "3p" || s == "Issue3Prime") return IssueId::Issue3Prime;
  if (s == "4" || s == "Issue4") return IssueId::Issue4;
  if (s == "gap" || s == "LowerBoundGap") return IssueId::LowerBoundGap;
  if (s == "fix3" || s == "Fix3Effectiveness") return IssueId::Fix3Effectiveness;
  return std::nullopt;
}

/// Self-contained, replayable evidence that a formulation variant admits a
/// defective solution (or under-bounds the true optimum). The certificate
/// embeds the instance and every input, so a certificate file alone
/// reproduces the claim.
struct FlawCertificate {
  IssueId issue = IssueId::Issue1;
  Variant variant = Variant::Original;
  std::string digest;
  WasteInstance instance;
  nlohmann::ordered_json inputs;    // replay inputs (assignment, guards, ...)
  nlohmann::ordered_json findings;  // computed evidence
  bool reproduced = false;
};

namespace detail {

inline nlohmann::ordered_json violations_to_json(const std::vector<ViolationRecord>& violations, size_t cap = 50) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (size_t i = 0; i < violations.size() && i < cap; ++i) {
    const auto& v = violations[i];
    arr.push_back({{"label", v.label},
                   {"family", family_name(v.family)},
                   {"lhs", v.lhs},
                   {"sense", sense_text(v.sense)},
                   {"rhs", v.rhs}});
  }
  return arr;
}

inline nlohmann::ordered_json report_to_json(const RouteReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json vehicles = nlohmann::ordered_json::array();
  for (const auto& vr : report.vehicles) {
    nlohmann::ordered_json walks = nlohmann::ordered_json::array();
    for (const auto& w : vr.walks) walks.push_back(w.nodes);
    vehicles.push_back({{"vehicle", vr.vehicle},
                        {"depot_out_degree", vr.depot_out_degree},
                        {"depot_in_degree", vr.depot_in_degree},
                        {"depot_visit_count", vr.depot_visit_count},
                        {"walks", walks}});
  }
  j["vehicles"] = vehicles;
  j["depot_visits_total"] = report.depot_visits_total;
  nlohmann::ordered_json flags = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    flags.push_back({{"kind", route_violation_name(v.kind)},
                     {"vehicle", v.vehicle},
                     {"node", v.node},
                     {"detail", v.detail}});
  }
  j["violations"] = flags;
  return j;
}

inline nlohmann::ordered_json scan_to_json(const CutScanResult& scan) {
  nlohmann::ordered_json j;
  j["members_checked"] = scan.members_checked;
  j["violated_members"] = scan.violated_members;
  j["found"] = scan.found;
  if (scan.found) {
    j["region"] = std::vector<Int>(scan.region.begin(), scan.region.end());
    j["witness"] = scan.witness;
    j["vehicle"] = scan.vehicle;
    j["lhs"] = scan.lhs;
  }
  return j;
}

/// Assignment with the given depot loops per vehicle: arcs, visit and load
/// indicators, per-loop cumulative carried quantities. Vehicles in
/// `claim_depot` get y[0,k] = 1. Under the ungated variant the unvisited
/// (i,k) pairs receive their forced floor q so the bound family holds.
inline ModelAssignment loops_assignment(const WasteInstance& inst,
                                        const std::vector<std::vector<std::vector<Int>>>& loops_per_vehicle,
                                        const std::vector<Int>& claim_depot, Variant variant) {
  ModelAssignment asg;
  asg.partial = true;
  const Int P = inst.compartment_count;
  std::vector<std::vector<uint8_t>> visited(static_cast<size_t>(inst.vehicle_count) + 1,
                                            std::vector<uint8_t>(static_cast<size_t>(inst.hcf_count) + 1, 0));
  for (Int k = 1; k <= static_cast<Int>(loops_per_vehicle.size()); ++k) {
    for (const auto& loop : loops_per_vehicle[static_cast<size_t>(k - 1)]) {
      if (loop.empty()) continue;
      Int prev = 0;
      std::vector<Int> acc(static_cast<size_t>(P), 0);
      for (Int i : loop) {
        asg.set(var_x(prev, i, k), 1);
        asg.set(var_y(i, k), 1);
        visited[static_cast<size_t>(k)][static_cast<size_t>(i)] = 1;
        for (Int p = 1; p <= P; ++p) {
          asg.set(var_z(i, k, p), 1);
          acc[static_cast<size_t>(p - 1)] += inst.q(i, p);
          if (acc[static_cast<size_t>(p - 1)] != 0) asg.set(var_u(i, k, p), acc[static_cast<size_t>(p - 1)]);
        }
        prev = i;
      }
      asg.set(var_x(prev, 0, k), 1);
    }
  }
  for (Int k : claim_depot) asg.set(var_y(0, k), 1);
  if (!variant_gates_u(variant)) {
    for (Int k = 1; k <= inst.vehicle_count; ++k)
      for (Int i = 1; i <= inst.hcf_count; ++i) {
        if (visited[static_cast<size_t>(k)][static_cast<size_t>(i)]) continue;
        for (Int p = 1; p <= P; ++p)
          if (inst.q(i, p) != 0) asg.set(var_u(i, k, p), inst.q(i, p));
      }
  }
  return asg;
}

/// Generic butterfly: one vehicle runs two depot loops covering everything.
/// Needs hcf_count >= 2; loops are {1} and {2..n}.
inline std::vector<std::vector<Int>> butterfly_loops(const WasteInstance& inst) {
  std::vector<Int> rest;
  for (Int i = 2; i <= inst.hcf_count; ++i) rest.push_back(i);
  return {{1}, rest};
}

inline bool is_paper_instance(const WasteInstance& inst) {
  return instance_digest(inst) == instance_digest(paper_instance());
}

}  // namespace detail

/// The unconditional load floor: with the ungated bounds every (facility,
/// vehicle) pair is forced to carry at least its demand even when the
/// vehicle never goes there; the gated bounds pin those quantities to zero.
inline FlawCertificate certify_issue1(const WasteInstance& inst,
                                      std::optional<ModelAssignment> assignment = std::nullopt) {
  FlawCertificate cert;
  cert.issue = IssueId::Issue1;
  cert.variant = Variant::Original;
  cert.instance = inst;
  cert.digest = instance_digest(inst);

  ModelAssignment asg;
  if (assignment) {
    asg = *assignment;
  } else if (detail::is_paper_instance(inst)) {
    asg = paper_reported_assignment();
  } else {
    asg.partial = true;  // empty routing: nothing visited anywhere
  }
  cert.inputs["assignment"] = assignment_to_json(asg);

  const BinaryRouting routing = BinaryRouting::from_assignment(inst, asg);
  const UFeasibility original = u_feasibility(inst, routing, Variant::Original);
  const UFeasibility gated = u_feasibility(inst, routing, Variant::WithFix1);

  bool reproduced = false;
  bool all_gated_zero = true;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Int k = 1; k <= inst.vehicle_count; ++k)
    for (Int p = 1; p <= inst.compartment_count; ++p) {
      const auto& ob = original.block(k, p);
      const auto& gb = gated.block(k, p);
      for (Int i = 1; i <= inst.hcf_count; ++i) {
        if (routing.y(i, k)) continue;
        const Int q = inst.q(i, p);
        nlohmann::ordered_json row;
        row["i"] = i;
        row["k"] = k;
        row["p"] = p;
        row["q"] = q;
        row["original_feasible"] = ob.feasible;
        if (ob.feasible) row["original_min_u"] = ob.min_u[static_cast<size_t>(i - 1)];
        row["gated_feasible"] = gb.feasible;
        if (gb.feasible) {
          row["gated_min_u"] = gb.min_u[static_cast<size_t>(i - 1)];
          row["gated_max_u"] = gb.max_u[static_cast<size_t>(i - 1)];
          if (gb.min_u[static_cast<size_t>(i - 1)] != 0 || gb.max_u[static_cast<size_t>(i - 1)] != 0) {
            all_gated_zero = false;
          }
        } else {
          all_gated_zero = false;
        }
        const bool forced_floor = ob.feasible && q > 0 && ob.min_u[static_cast<size_t>(i - 1)] >= q;
        const bool forced_zero =
            gb.feasible && gb.min_u[static_cast<size_t>(i - 1)] == 0 && gb.max_u[static_cast<size_t>(i - 1)] == 0;
        row["forced_floor"] = forced_floor;
        row["forced_zero"] = forced_zero;
        if (forced_floor && forced_zero) reproduced = true;
        rows.push_back(std::move(row));
      }
    }
  cert.findings["unvisited_pairs"] = rows;
  cert.findings["all_unvisited_forced_zero_when_gated"] = all_gated_zero;
  cert.reproduced = reproduced;
  return cert;
}

/// Depot-assignment mismatch: the depot is assigned to one vehicle while
/// many more depot edges are incident, and the departure-count equation
/// rejects the same assignment.
inline FlawCertificate certify_issue2(const WasteInstance& inst,
                                      std::optional<ModelAssignment> assignment = std::nullopt) {
  FlawCertificate cert;
  cert.issue = IssueId::Issue2;
  cert.variant = Variant::WithFix1;
  cert.instance = inst;
  cert.digest = instance_digest(inst);

  ModelAssignment asg;
  if (assignment) {
    asg = *assignment;
  } else if (detail::is_paper_instance(inst)) {
    // The post-repair shape: every facility on vehicle 2, three loops,
    // six depot-incident edges, depot assigned to one vehicle only.
    asg = detail::loops_assignment(inst, {{}, {{4}, {3, 7}, {5, 9, 2, 1, 10, 6, 8}}}, {2}, Variant::WithFix1);
  } else {
    // One petal per facility on vehicle 1.
    std::vector<std::vector<Int>> petals;
    for (Int i = 1; i <= inst.hcf_count; ++i) petals.push_back({i});
    asg = detail::loops_assignment(inst, {petals}, {1}, Variant::WithFix1);
  }
  cert.inputs["assignment"] = assignment_to_json(asg);

  const BinaryRouting routing = BinaryRouting::from_assignment(inst, asg);
  Int incidence = 0, sum_y0 = 0;
  for (Int k = 1; k <= inst.vehicle_count; ++k) {
    if (routing.y(0, k)) ++sum_y0;
    for (Int j = 1; j <= inst.hcf_count; ++j) {
      if (routing.x(0, j, k)) ++incidence;
      if (routing.x(j, 0, k)) ++incidence;
    }
  }
  const auto fix1_eval = evaluate(build_model(inst, Variant::WithFix1), asg);
  const auto fix12_eval = evaluate(build_model(inst, Variant::WithFix12), asg);
  bool f2_violated = false;
  nlohmann::ordered_json f2_rows = nlohmann::ordered_json::array();
  for (const auto& v : fix12_eval.violations) {
    if (v.family == Family::F2) {
      f2_violated = true;
      f2_rows.push_back({{"label", v.label}, {"lhs", v.lhs}, {"rhs", v.rhs}});
    }
  }

  cert.findings["depot_incidence"] = incidence;
  cert.findings["sum_y0"] = sum_y0;
  cert.findings["incidence_exceeds_2_sum_y0"] = incidence > 2 * sum_y0;
  cert.findings["fix1_violation_count"] = fix1_eval.violations.size();
  cert.findings["fix12_f2_violations"] = f2_rows;
  cert.reproduced = incidence > 2 * sum_y0 && f2_violated;
  return cert;
}

/// Residual defect after the departure-count repair: an idle vehicle may
/// claim the depot, balancing the equation while the working vehicle still
/// runs a multi-loop route. The assignment satisfies the repaired catalog
/// yet the decoded routes are defective.
inline FlawCertificate certify_issue3(const WasteInstance& inst) {
  FlawCertificate cert;
  cert.issue = IssueId::Issue3;
  cert.variant = Variant::WithFix12;
  cert.instance = inst;
  cert.digest = instance_digest(inst);

  if (inst.hcf_count < 2 || inst.vehicle_count < 2) {
    cert.inputs["assignment"] = nullptr;
    cert.findings["note"] = "needs at least two facilities and two vehicles";
    cert.reproduced = false;
    return cert;
  }
  const auto loops = detail::butterfly_loops(inst);
  ModelAssignment asg = detail::loops_assignment(inst, {{}, loops}, {1, 2}, Variant::WithFix12);
  cert.inputs["assignment"] = assignment_to_json(asg);

  const auto eval = evaluate(build_model(inst, Variant::WithFix12), asg);
  const auto report = semantic_validate(inst, asg);
  bool multiple_departures = false;
  for (const auto& v : report.violations)
    if (v.kind == RouteViolationKind::MultipleDepotDepartures) multiple_departures = true;

  cert.findings["model_violations"] = detail::violations_to_json(eval.violations);
  cert.findings["model_violation_count"] = eval.violations.size();
  cert.findings["route_report"] = detail::report_to_json(report);
  cert.findings["idle_vehicle_claims_depot"] = true;
  cert.reproduced = eval.violations.empty() && multiple_departures;
  return cert;
}

/// The butterfly: an assignment that satisfies every family of the original
/// catalog while one vehicle's route decodes into several depot loops.
inline FlawCertificate certify_butterfly(const WasteInstance& inst,
                                         std::optional<ModelAssignment> assignment = std::nullopt) {
  FlawCertificate cert;
  cert.issue = IssueId::Issue3Prime;
  cert.variant = Variant::Original;
  cert.instance = inst;
  cert.digest = instance_digest(inst);

  ModelAssignment asg;
  if (assignment) {
    asg = *assignment;
  } else if (detail::is_paper_instance(inst)) {
    asg = paper_reported_assignment();
  } else if (inst.hcf_count >= 2) {
    std::vector<std::vector<std::vector<Int>>> loops(static_cast<size_t>(inst.vehicle_count));
    loops[0] = detail::butterfly_loops(inst);
    asg = detail::loops_assignment(inst, loops, {1}, Variant::Original);
  } else {
    cert.inputs["assignment"] = nullptr;
    cert.findings["note"] = "needs at least two facilities";
    cert.reproduced = false;
    return cert;
  }
  cert.inputs["assignment"] = assignment_to_json(asg);

  const auto eval = evaluate(build_model(inst, Variant::Original), asg);
  const auto report = semantic_validate(inst, asg);
  bool multiple_departures = false;
  for (const auto& v : report.violations)
    if (v.kind == RouteViolationKind::MultipleDepotDepartures) multiple_departures = true;

  cert.findings["model_violations"] = detail::violations_to_json(eval.violations);
  cert.findings["model_violation_count"] = eval.violations.size();
  cert.findings["route_report"] = detail::report_to_json(report);
  nlohmann::ordered_json separator = nlohmann::ordered_json::array();
  for (Int k = 1; k <= inst.vehicle_count; ++k) {
    auto cut = separate_subtour(inst, asg, k);
    separator.push_back({{"vehicle", k}, {"cut_found", cut.has_value()}});
  }
  cert.findings["separator"] = separator;
  if (inst.hcf_count <= 11) {
    cert.findings["connectivity_scan"] = detail::scan_to_json(
        scan_cut_members(inst, asg, CutFamily::Connectivity));
  }
  cert.reproduced = eval.violations.empty() && multiple_departures;
  return cert;
}

/// Drifting load variables: the written constraints let a carried quantity
/// float far above the load the route actually accumulates (up to the full
/// compartment capacity), so the u values carry no flow meaning.
inline FlawCertificate certify_issue4(const WasteInstance& inst,
                                      std::optional<ModelAssignment> assignment = std::nullopt) {
  FlawCertificate cert;
  cert.issue = IssueId::Issue4;
  cert.variant = Variant::Original;
  cert.instance = inst;
  cert.digest = instance_digest(inst);

  ModelAssignment asg;
  if (assignment) {
    asg = *assignment;
  } else if (detail::is_paper_instance(inst)) {
    asg = paper_reported_assignment();
  } else if (inst.hcf_count >= 2) {
    std::vector<std::vector<std::vector<Int>>> loops(static_cast<size_t>(inst.vehicle_count));
    loops[0] = detail::butterfly_loops(inst);
    asg = detail::loops_assignment(inst, loops, {1}, Variant::Original);
  } else {
    std::vector<std::vector<std::vector<Int>>> loops(static_cast<size_t>(inst.vehicle_count));
    loops[0] = {{1}};
    asg = detail::loops_assignment(inst, loops, {1}, Variant::Original);
  }
  cert.inputs["assignment"] = assignment_to_json(asg);

  const BinaryRouting routing = BinaryRouting::from_assignment(inst, asg);
  const auto report = semantic_validate(inst, asg);
  const UFeasibility ufeas = u_feasibility(inst, routing, Variant::Original);

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  bool reproduced = false;
  for (const auto& vr : report.vehicles) {
    if (!vr.eulerian) continue;
    for (const auto& walk : vr.walks) {
      for (size_t t = 0; t < walk.nodes.size(); ++t) {
        const Int i = walk.nodes[t];
        if (i < 1) continue;
        for (Int p = 1; p <= inst.compartment_count; ++p) {
          const auto& block = ufeas.block(vr.vehicle, p);
          if (!block.feasible) continue;
          const Int actual = walk.load_after[static_cast<size_t>(p - 1)][t];
          const Int max_u = block.max_u[static_cast<size_t>(i - 1)];
          if (max_u > actual) {
            reproduced = true;
            nlohmann::ordered_json row;
            row["i"] = i;
            row["k"] = vr.vehicle;
            row["p"] = p;
            row["accumulated_load"] = actual;
            row["max_feasible_u"] = max_u;
            const auto asserted = asg.get(var_u(i, vr.vehicle, p));
            if (asserted) row["asserted_u"] = *asserted;
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  cert.findings["drift_rows"] = rows;
  cert.findings["drift_count"] = rows.size();
  cert.reproduced = reproduced;
  return cert;
}

/// Does the exponential boundary-cut family actually exclude the given
/// assignment? Exhaustive scan of every member, under both the literal and
/// the connectivity boundary readings; the verdict records whether the
/// connectivity family (the reading under which the family is a sound cut)
/// fails to exclude it. When the instance is small enough, the literal
/// family is additionally scanned against a provably correct plan to show
/// it cuts valid solutions too.
inline FlawCertificate certify_fix3_effectiveness(const WasteInstance& inst, const ModelAssignment& asg,
                                                  Int guard = 11) {
  FlawCertificate cert;
  cert.issue = IssueId::Fix3Effectiveness;
  cert.variant = Variant::WithFix123;
  cert.instance = inst;
  cert.digest = instance_digest(inst);
  cert.inputs["assignment"] = assignment_to_json(asg);
  cert.inputs["guard"] = guard;

  const auto connectivity = scan_cut_members(inst, asg, CutFamily::Connectivity, guard);
  const auto literal = scan_cut_members(inst, asg, CutFamily::Literal, guard);
  cert.findings["connectivity_scan"] = detail::scan_to_json(connectivity);
  cert.findings["literal_scan"] = detail::scan_to_json(literal);

  nlohmann::ordered_json separator = nlohmann::ordered_json::array();
  for (Int k = 1; k <= inst.vehicle_count; ++k) {
    auto cut = separate_subtour(inst, asg, k);
    nlohmann::ordered_json entry;
    entry["vehicle"] = k;
    entry["cut_found"] = cut.has_value();
    if (cut) {
      entry["witness"] = cut->witness;
      entry["region"] = std::vector<Int>(cut->region.begin(), cut->region.end());
    }
    separator.push_back(std::move(entry));
  }
  cert.findings["separator"] = separator;

  // Control: scan the literal family against a clean plan. A plan using
  // two vehicles exposes the literal reading's false rejections (regions a
  // vehicle never touches); the split plan is used when it fits, the
  // optimum otherwise.
  try {
    std::optional<OptimalPlan> control_plan;
    if (inst.vehicle_count >= 2 && inst.hcf_count >= 2) {
      OptimalPlan split;
      const Int half = inst.hcf_count / 2;
      split.routes.resize(2);
      for (Int i = 1; i <= inst.hcf_count; ++i) split.routes[i <= half ? 0 : 1].push_back(i);
      bool fits = true;
      for (const auto& route : split.routes)
        for (Int p = 1; p <= inst.compartment_count; ++p) {
          Int load = 0;
          for (Int i : route) load += inst.q(i, p);
          if (load > inst.cap(p)) fits = false;
        }
      if (fits) control_plan = split;
    }
    if (!control_plan) {
      const auto solved = exact_semantic_solve(inst);
      if (solved.status == SemanticSolveResult::Status::Optimal) control_plan = solved.plan;
    }
    if (control_plan) {
      const auto lifted = lift_plan(inst, *control_plan, Variant::Original);
      nlohmann::ordered_json control;
      control["plan_routes"] = control_plan->routes;
      control["plan_clean"] = semantic_validate(inst, lifted).violations.empty();
      control["literal_scan"] = detail::scan_to_json(scan_cut_members(inst, lifted, CutFamily::Literal, guard));
      control["connectivity_scan"] =
          detail::scan_to_json(scan_cut_members(inst, lifted, CutFamily::Connectivity, guard));
      cert.findings["clean_plan_control"] = control;
    }
  } catch (const GuardError&) {
    // instance too large for the control; the main scans stand alone
  }

  cert.reproduced = !connectivity.found;
  return cert;
}

/// Lower-bound gap: the written model's optimum sits strictly below the
/// true semantic optimum, so the model cannot certify heuristic solutions.
inline FlawCertificate certify_lower_bound_gap(const WasteInstance& inst,
                                               std::optional<Int> external_model_objective = std::nullopt,
                                               uint64_t node_limit = 50'000'000) {
  FlawCertificate cert;
  cert.issue = IssueId::LowerBoundGap;
  cert.variant = Variant::Original;
  cert.instance = inst;
  cert.digest = instance_digest(inst);
  cert.inputs["external_model_objective"] =
      external_model_objective ? nlohmann::ordered_json(*external_model_objective) : nlohmann::ordered_json(nullptr);

  const auto semantic = exact_semantic_solve(inst);
  if (semantic.status != SemanticSolveResult::Status::Optimal) {
    cert.findings["note"] = "instance has no capacity-feasible plan";
    cert.reproduced = false;
    return cert;
  }

  Int model_objective = 0;
  if (external_model_objective) {
    model_objective = *external_model_objective;
    cert.findings["model_objective_source"] = "external";
  } else {
    const auto bf = brute_force_milp(build_model(inst, Variant::Original), node_limit);
    if (bf.status != BruteForceResult::Status::Optimal) {
      throw GuardError("certify_lower_bound_gap: model optimum not computed (limit); supply an external objective");
    }
    model_objective = bf.objective;
    cert.findings["model_objective_source"] = "brute_force";
    cert.findings["model_assignment"] = assignment_to_json(bf.assignment);
  }
  cert.findings["model_objective"] = model_objective;
  cert.findings["semantic_objective"] = semantic.plan.total_distance;
  cert.findings["semantic_routes"] = semantic.plan.routes;
  cert.findings["gap"] = semantic.plan.total_distance - model_objective;
  cert.reproduced = semantic.plan.total_distance - model_objective > 0;
  return cert;
}

inline nlohmann::ordered_json certificate_to_json(const FlawCertificate& cert) {
  nlohmann::ordered_json j;
  j["issue"] = issue_name(cert.issue);
  j["variant"] = variant_name(cert.variant);
  j["instance_digest"] = cert.digest;
  j["instance"] = instance_to_json(cert.instance);
  j["inputs"] = cert.inputs;
  j["findings"] = cert.findings;
  j["verdict"] = cert.reproduced ? "reproduced" : "not-reproduced";
  return j;
}

inline std::string serialize_certificate(const FlawCertificate& cert) {
  return certificate_to_json(cert).dump(2) + "\n";
}

inline FlawCertificate parse_certificate(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid certificate document: ") + e.what());
  }
  FlawCertificate cert;
  const auto issue = parse_issue_id(j.at("issue").get<std::string>());
  if (!issue) throw ParseError("unknown issue id in certificate");
  cert.issue = *issue;
  const auto variant = parse_variant(j.at("variant").get<std::string>());
  if (!variant) throw ParseError("unknown variant in certificate");
  cert.variant = *variant;
  cert.digest = j.at("instance_digest").get<std::string>();
  cert.instance = parse_instance(j.at("instance").dump());
  cert.inputs = j.at("inputs");
  cert.findings = j.at("findings");
  cert.reproduced = j.at("verdict").get<std::string>() == "reproduced";
  return cert;
}

struct ReplayResult {
  bool matches = false;
  FlawCertificate recomputed;
  std::string note;
};

/// Re-run the embedded inputs through the same certification and compare
/// the result bit for bit.
inline ReplayResult replay_certificate(const FlawCertificate& cert) {
  ReplayResult result;
  std::optional<ModelAssignment> asg;
  if (cert.inputs.contains("assignment") && !cert.inputs.at("assignment").is_null()) {
    asg = parse_assignment(cert.inputs.at("assignment").dump());
  }
  switch (cert.issue) {
    case IssueId::Issue1: result.recomputed = certify_issue1(cert.instance, asg); break;
    case IssueId::Issue2: result.recomputed = certify_issue2(cert.instance, asg); break;
    case IssueId::Issue3: result.recomputed = certify_issue3(cert.instance); break;
    case IssueId::Issue3Prime: result.recomputed = certify_butterfly(cert.instance, asg); break;
    case IssueId::Issue4: result.recomputed = certify_issue4(cert.instance, asg); break;
    case IssueId::Fix3Effectiveness: {
      if (!asg) {
        result.note = "certificate lacks its assignment";
        return result;
      }
      Int guard = 11;
      if (cert.inputs.contains("guard")) guard = cert.inputs.at("guard").get<Int>();
      result.recomputed = certify_fix3_effectiveness(cert.instance, *asg, guard);
      break;
    }
    case IssueId::LowerBoundGap: {
      std::optional<Int> external;
      if (cert.inputs.contains("external_model_objective") && !cert.inputs.at("external_model_objective").is_null()) {
        external = cert.inputs.at("external_model_objective").get<Int>();
      }
      result.recomputed = certify_lower_bound_gap(cert.instance, external);
      break;
    }
  }
  result.matches = certificate_to_json(result.recomputed) == certificate_to_json(cert);
  if (!result.matches) result.note = "recomputed certificate differs";
  return result;
}

}  // namespace mcvrp
