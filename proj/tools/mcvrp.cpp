// mcvrp - audit tool for multi-compartment waste-collection route models.
//
// Exit codes: 0 = success (including semantic findings: reporting them is
// the tool working), 1 = the audit found model-level violations, instance
// errors, or a replay mismatch, 2 = usage or I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <mcvrp/mcvrp.hpp>

namespace {

using namespace mcvrp;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

WasteInstance load_instance(const std::string& path) {
  if (path == "@paper") return paper_instance();
  return parse_instance(read_file(path));
}

ModelAssignment load_assignment(const std::string& path) {
  if (path == "@paper-solution") return paper_reported_assignment();
  return parse_assignment(read_file(path));
}

Variant variant_flag(const std::string& name) {
  auto v = parse_variant(name);
  if (!v) throw CLI::ValidationError("--variant", "unknown variant '" + name + "'");
  return *v;
}

void emit_json(const std::optional<std::string>& path, const nlohmann::ordered_json& j) {
  if (path) write_file(*path, j.dump(2) + "\n");
}

int cmd_validate(const std::string& instance_path, const std::optional<std::string>& json_path) {
  // Schema and I/O problems propagate (exit 2); invariant findings are the
  // audit's subject and exit 1.
  const WasteInstance inst =
      instance_path == "@paper" ? paper_instance() : parse_instance_unchecked(read_file(instance_path));
  const std::vector<ValidationIssue> issues = validate_instance(inst);
  nlohmann::ordered_json j;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  bool errors = false;
  for (const auto& issue : issues) {
    const bool is_error = issue.severity == ValidationIssue::Severity::Error;
    errors = errors || is_error;
    std::cout << (is_error ? "error: " : "warning: ") << issue.message << "\n";
    list.push_back({{"severity", is_error ? "error" : "warning"}, {"message", issue.message}});
  }
  if (issues.empty()) std::cout << "instance valid\n";
  j["valid"] = !errors;
  j["issues"] = list;
  j["digest"] = instance_digest(inst);
  emit_json(json_path, j);
  return errors ? 1 : 0;
}

int cmd_solve(const std::string& instance_path, const std::optional<std::string>& out_path,
              const std::optional<std::string>& json_path, Int max_nodes) {
  const WasteInstance inst = load_instance(instance_path);
  const auto solved = exact_semantic_solve(inst, max_nodes);
  nlohmann::ordered_json j;
  if (solved.status == SemanticSolveResult::Status::Infeasible) {
    std::cout << "infeasible: no capacity-feasible plan with " << inst.vehicle_count << " vehicles\n";
    j["status"] = "infeasible";
    emit_json(json_path, j);
    return 0;
  }
  const auto& plan = solved.plan;
  std::cout << "optimal total distance: " << plan.total_distance << "\n";
  for (size_t r = 0; r < plan.routes.size(); ++r) {
    std::cout << "route " << (r + 1) << ": depot";
    for (Int i : plan.routes[r]) std::cout << " -> " << i;
    std::cout << " -> depot  (loads:";
    for (Int load : plan.route_loads[r]) std::cout << " " << load;
    std::cout << ")\n";
  }
  j["status"] = "optimal";
  j["total_distance"] = plan.total_distance;
  j["routes"] = plan.routes;
  j["route_loads"] = plan.route_loads;
  emit_json(json_path, j);
  if (out_path) write_file(*out_path, serialize_assignment(lift_plan(inst, plan, Variant::Original)));
  return 0;
}

int cmd_check(const std::string& instance_path, const std::string& assignment_path, const std::string& variant,
              const std::optional<std::string>& json_path, const std::optional<std::string>& dot_path) {
  const WasteInstance inst = load_instance(instance_path);
  const ModelAssignment asg = load_assignment(assignment_path);
  const Variant v = variant_flag(variant);
  const auto eval = evaluate(build_model(inst, v), asg);
  const auto report = semantic_validate(inst, asg);

  std::cout << eval.violations.size() << " model violation" << (eval.violations.size() == 1 ? "" : "s") << "; "
            << report.violations.size() << " semantic violation" << (report.violations.size() == 1 ? "" : "s");
  if (!report.violations.empty()) {
    std::cout << " (";
    for (size_t i = 0; i < report.violations.size(); ++i) {
      if (i) std::cout << ", ";
      std::cout << route_violation_name(report.violations[i].kind);
    }
    std::cout << ")";
  }
  std::cout << "\n";
  for (const auto& rec : eval.violations) {
    std::cout << "  " << rec.label << ": " << rec.lhs << " " << sense_text(rec.sense) << " " << rec.rhs
              << " fails\n";
  }
  for (const auto& rv : report.violations) {
    std::cout << "  " << route_violation_name(rv.kind) << ": " << rv.detail << "\n";
  }
  std::cout << "objective: " << objective_value(inst, asg) << "\n";
  std::cout << "depot visits: " << report.depot_visits_total << "\n";

  nlohmann::ordered_json j;
  j["variant"] = variant_name(v);
  j["objective"] = objective_value(inst, asg);
  j["model_violations"] = nlohmann::ordered_json::array();
  for (const auto& rec : eval.violations) {
    j["model_violations"].push_back({{"label", rec.label},
                                     {"family", family_name(rec.family)},
                                     {"lhs", rec.lhs},
                                     {"sense", sense_text(rec.sense)},
                                     {"rhs", rec.rhs}});
  }
  j["defaulted_variables"] = eval.defaulted_variables;
  j["route_report"] = mcvrp::detail::report_to_json(report);
  emit_json(json_path, j);
  if (dot_path) write_file(*dot_path, write_dot(inst, asg));
  return eval.violations.empty() ? 0 : 1;
}

int cmd_export(const std::string& instance_path, const std::string& variant, const std::string& format,
               const std::string& out_path) {
  const WasteInstance inst = load_instance(instance_path);
  const auto model = build_model(inst, variant_flag(variant));
  std::string text;
  if (format == "lp") {
    text = export_lp(model);
  } else if (format == "mps") {
    text = export_mps(model);
  } else {
    throw CLI::ValidationError("--format", "unknown format '" + format + "'");
  }
  write_file(out_path, text);
  std::cout << "wrote " << out_path << " (" << model.variables.size() << " variables, "
            << model.constraints.size() << " constraints)\n";
  return 0;
}

int cmd_separate(const std::string& instance_path, const std::string& assignment_path, Int vehicle,
                 const std::optional<std::string>& json_path) {
  const WasteInstance inst = load_instance(instance_path);
  const ModelAssignment asg = load_assignment(assignment_path);
  const auto cut = separate_subtour(inst, asg, vehicle);
  nlohmann::ordered_json j;
  j["vehicle"] = vehicle;
  if (!cut) {
    std::cout << "no violated cut: every supported component of vehicle " << vehicle << " touches the depot\n";
    j["cut_found"] = false;
    emit_json(json_path, j);
    return 0;
  }
  std::cout << "violated cut found: witness facility " << cut->witness << ", region {";
  bool first = true;
  for (Int s : cut->region) {
    if (!first) std::cout << " ";
    first = false;
    std::cout << s;
  }
  std::cout << "}\n" << cut->cut.label << "\n";
  j["cut_found"] = true;
  j["witness"] = cut->witness;
  j["region"] = std::vector<Int>(cut->region.begin(), cut->region.end());
  j["label"] = cut->cut.label;
  emit_json(json_path, j);
  return 0;
}

int cmd_certify(const std::string& instance_path, const std::string& issue,
                const std::optional<std::string>& assignment_path, const std::optional<std::string>& out_path,
                std::optional<Int> model_objective, Int max_nodes, const std::optional<std::string>& json_path) {
  const WasteInstance inst = load_instance(instance_path);
  const auto id = parse_issue_id(issue);
  if (!id) throw CLI::ValidationError("--issue", "unknown issue '" + issue + "'");
  std::optional<ModelAssignment> asg;
  if (assignment_path) asg = load_assignment(*assignment_path);

  FlawCertificate cert;
  switch (*id) {
    case IssueId::Issue1: cert = certify_issue1(inst, asg); break;
    case IssueId::Issue2: cert = certify_issue2(inst, asg); break;
    case IssueId::Issue3: cert = certify_issue3(inst); break;
    case IssueId::Issue3Prime: cert = certify_butterfly(inst, asg); break;
    case IssueId::Issue4: cert = certify_issue4(inst, asg); break;
    case IssueId::Fix3Effectiveness: {
      if (!asg && mcvrp::detail::is_paper_instance(inst)) asg = paper_reported_assignment();
      if (!asg) throw CLI::ValidationError("--assignment", "fix3 needs an assignment");
      cert = certify_fix3_effectiveness(inst, *asg, max_nodes > 0 ? max_nodes : 11);
      break;
    }
    case IssueId::LowerBoundGap:
      cert = certify_lower_bound_gap(inst, model_objective);
      break;
  }
  std::cout << issue_name(cert.issue) << ": " << (cert.reproduced ? "reproduced" : "not-reproduced") << "\n";
  const std::string text = serialize_certificate(cert);
  if (out_path) {
    write_file(*out_path, text);
    std::cout << "certificate written to " << *out_path << "\n";
  }
  emit_json(json_path, certificate_to_json(cert));
  return 0;
}

int cmd_replay(const std::string& cert_path, const std::optional<std::string>& json_path) {
  const FlawCertificate cert = parse_certificate(read_file(cert_path));
  const auto result = replay_certificate(cert);
  nlohmann::ordered_json j;
  j["issue"] = issue_name(cert.issue);
  j["matches"] = result.matches;
  j["verdict"] = result.recomputed.reproduced ? "reproduced" : "not-reproduced";
  if (!result.note.empty()) j["note"] = result.note;
  emit_json(json_path, j);
  if (result.matches) {
    std::cout << "replay ok: " << issue_name(cert.issue) << " "
              << (cert.reproduced ? "reproduced" : "not-reproduced") << "\n";
    return 0;
  }
  std::cout << "replay mismatch: " << result.note << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"audit multi-compartment waste-collection route formulations"};
  app.require_subcommand(1);

  std::string instance_path, assignment_path, variant = "original", format = "lp", out_path, issue, cert_path;
  std::optional<std::string> json_path, dot_path, opt_out, opt_assignment;
  Int vehicle = 1;
  Int max_nodes = 0;
  std::optional<Int> model_objective;

  auto* validate = app.add_subcommand("validate", "check an instance file");
  validate->add_option("instance", instance_path, "instance file or @paper")->required();
  validate->add_option("--json", json_path, "write a machine-readable report");

  auto* solve = app.add_subcommand("solve", "exact optimum of the routing problem itself");
  solve->add_option("instance", instance_path, "instance file or @paper")->required();
  solve->add_option("-o,--output", opt_out, "write the optimal plan as an assignment file");
  solve->add_option("--json", json_path, "write a machine-readable report");
  solve->add_option("--max-nodes", max_nodes, "raise the facility-count guard (default 14)");

  auto* check = app.add_subcommand("check", "evaluate an assignment against a variant and decode its routes");
  check->add_option("instance", instance_path, "instance file or @paper")->required();
  check->add_option("assignment", assignment_path, "assignment file or @paper-solution")->required();
  check->add_option("--variant", variant, "original|fix1|fix12|fix123|strengthened");
  check->add_option("--json", json_path, "write a machine-readable report");
  check->add_option("--dot", dot_path, "write the routes as a DOT graph");

  auto* exp = app.add_subcommand("export", "write the model in a solver text format");
  exp->add_option("instance", instance_path, "instance file or @paper")->required();
  exp->add_option("--variant", variant, "original|fix1|fix12|fix123|strengthened");
  exp->add_option("--format", format, "lp|mps");
  exp->add_option("-o,--output", out_path, "output path")->required();

  auto* separate = app.add_subcommand("separate", "find a violated boundary cut for one vehicle");
  separate->add_option("instance", instance_path, "instance file or @paper")->required();
  separate->add_option("assignment", assignment_path, "assignment file or @paper-solution")->required();
  separate->add_option("--vehicle", vehicle, "vehicle index (1-based)")->required();
  separate->add_option("--json", json_path, "write a machine-readable report");

  auto* certify = app.add_subcommand("certify", "produce a replayable defect certificate");
  certify->add_option("instance", instance_path, "instance file or @paper")->required();
  certify->add_option("--issue", issue, "1|2|3|3p|4|gap|fix3")->required();
  certify->add_option("--assignment", opt_assignment, "assignment file or @paper-solution");
  certify->add_option("-o,--output", opt_out, "write the certificate");
  certify->add_option("--model-objective", model_objective, "externally solved model optimum (for gap)");
  certify->add_option("--max-nodes", max_nodes, "raise the enumeration guard");
  certify->add_option("--json", json_path, "write a machine-readable report");

  auto* replay = app.add_subcommand("replay", "re-verify a certificate");
  replay->add_option("certificate", cert_path, "certificate file")->required();
  replay->add_option("--json", json_path, "write a machine-readable report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(instance_path, json_path);
    if (solve->parsed()) return cmd_solve(instance_path, opt_out, json_path, max_nodes > 0 ? max_nodes : 14);
    if (check->parsed()) return cmd_check(instance_path, assignment_path, variant, json_path, dot_path);
    if (exp->parsed()) return cmd_export(instance_path, variant, format, out_path);
    if (separate->parsed()) return cmd_separate(instance_path, assignment_path, vehicle, json_path);
    if (certify->parsed())
      return cmd_certify(instance_path, issue, opt_assignment, opt_out, model_objective, max_nodes, json_path);
    if (replay->parsed()) return cmd_replay(cert_path, json_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
