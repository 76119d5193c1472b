#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "assignment.hpp"
#include "ufeas.hpp"

namespace mcvrp {

enum class RouteViolationKind {
  MultipleDepotDepartures,
  DepotFreeSubtour,
  NodeVisitedTwice,
  NodeUnvisited,
  CompartmentOverflow,
  NonEulerianSupport,
};

inline const char* route_violation_name(RouteViolationKind k) {
  switch (k) {
    case RouteViolationKind::MultipleDepotDepartures: return "MultipleDepotDepartures";
    case RouteViolationKind::DepotFreeSubtour: return "DepotFreeSubtour";
    case RouteViolationKind::NodeVisitedTwice: return "NodeVisitedTwice";
    case RouteViolationKind::NodeUnvisited: return "NodeUnvisited";
    case RouteViolationKind::CompartmentOverflow: return "CompartmentOverflow";
    case RouteViolationKind::NonEulerianSupport: return "NonEulerianSupport";
  }
  return "?";
}

struct RouteViolation {
  RouteViolationKind kind;
  Int vehicle = 0;  // 0 when the finding is not tied to one vehicle
  Int node = -1;    // -1 when not tied to a node
  Int compartment = 0;
  std::string detail;
};

/// One decoded closed walk of a vehicle: depot -> nodes... -> depot.
/// Loads are recomputed from the demands only; the walk starts empty.
/// load_after[p-1][t] is the carried quantity of compartment p after the
/// pickup at nodes[t]; the load on arrival at nodes[t] is the previous entry.
struct DecodedWalk {
  std::vector<Int> nodes;
  std::vector<std::vector<Int>> load_after;

  Int total_load(Int p) const {
    const auto& prof = load_after.at(static_cast<size_t>(p - 1));
    return prof.empty() ? 0 : prof.back();
  }
  Int arrival_load(Int p, size_t t) const {
    const auto& prof = load_after.at(static_cast<size_t>(p - 1));
    return t == 0 ? 0 : prof.at(t - 1);
  }
  /// Greatest quantity carried into any facility of the walk. Loads only
  /// grow along a pickup walk, so this is the load entering the last stop.
  Int max_arrival_load(Int p) const {
    const auto& prof = load_after.at(static_cast<size_t>(p - 1));
    return prof.size() < 2 ? 0 : prof[prof.size() - 2];
  }
};

struct VehicleRoute {
  Int vehicle = 0;
  std::vector<std::pair<Int, Int>> arcs;          // sorted
  Int depot_out_degree = 0;
  Int depot_in_degree = 0;
  Int depot_visit_count = 0;                      // completed returns to the depot
  bool eulerian = true;                           // in-degree == out-degree everywhere
  std::vector<std::vector<Int>> components;       // node sets of the support graph
  std::vector<DecodedWalk> walks;                 // depot-rooted walks, then stray cycles
};

struct RouteReport {
  std::vector<VehicleRoute> vehicles;
  std::vector<RouteViolation> violations;
  /// Times the depot is visited over the whole plan: the initial stay plus
  /// one visit per completed return of any vehicle.
  Int depot_visits_total = 0;

  bool clean() const { return violations.empty(); }
  std::multiset<RouteViolationKind> violation_kinds() const {
    std::multiset<RouteViolationKind> kinds;
    for (const auto& v : violations) kinds.insert(v.kind);
    return kinds;
  }
};

namespace detail {

// Follow unused arcs from `home`, always taking the smallest-numbered next
// node, until the walk returns to `home` or gets stuck. Returns the node
// sequence after `home` and whether the walk closed.
inline std::pair<std::vector<Int>, bool> trace_walk(std::map<std::pair<Int, Int>, int>& remaining, Int home) {
  std::vector<Int> path;
  Int cur = home;
  while (true) {
    auto it = remaining.lower_bound({cur, std::numeric_limits<Int>::min()});
    while (it != remaining.end() && it->first.first == cur && it->second == 0) ++it;
    if (it == remaining.end() || it->first.first != cur) return {path, false};  // stuck
    --it->second;
    cur = it->first.second;
    if (cur == home) return {path, true};
    path.push_back(cur);
  }
}

}  // namespace detail

/// Decode each vehicle's arc support into depot-rooted walks and flag the
/// semantic defects. Carried quantities in the assignment are ignored by
/// design: loads are recomputed from the demands along the decoded walks.
/// Pathological supports produce reports, never errors.
inline RouteReport semantic_validate(const WasteInstance& inst, const ModelAssignment& asg) {
  const Int n = inst.hcf_count;
  const Int P = inst.compartment_count;
  RouteReport report;
  const BinaryRouting routing = BinaryRouting::from_assignment(inst, asg);

  std::vector<Int> visits_total(static_cast<size_t>(n + 1), 0);  // in-degree across vehicles

  for (Int k = 1; k <= inst.vehicle_count; ++k) {
    VehicleRoute vr;
    vr.vehicle = k;
    std::vector<Int> indeg(static_cast<size_t>(n + 1), 0), outdeg(static_cast<size_t>(n + 1), 0);
    for (Int i = 0; i <= n; ++i)
      for (Int j = 0; j <= n; ++j) {
        if (i == j || !routing.x(i, j, k)) continue;
        vr.arcs.push_back({i, j});
        ++outdeg[static_cast<size_t>(i)];
        ++indeg[static_cast<size_t>(j)];
      }
    vr.depot_out_degree = outdeg[0];
    vr.depot_in_degree = indeg[0];
    for (Int i = 1; i <= n; ++i) visits_total[static_cast<size_t>(i)] += indeg[static_cast<size_t>(i)];

    for (Int i = 0; i <= n; ++i) {
      if (indeg[static_cast<size_t>(i)] != outdeg[static_cast<size_t>(i)]) vr.eulerian = false;
    }

    // Support components: nodes with incident arcs, plus facilities the
    // y-values claim for this vehicle (a claimed node with no arcs is its
    // own depot-free component).
    {
      std::vector<Int> parent(static_cast<size_t>(n + 1));
      for (Int i = 0; i <= n; ++i) parent[static_cast<size_t>(i)] = i;
      std::function<Int(Int)> find = [&](Int a) {
        while (parent[static_cast<size_t>(a)] != a) {
          parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
          a = parent[static_cast<size_t>(a)];
        }
        return a;
      };
      for (const auto& [a, b] : vr.arcs) parent[static_cast<size_t>(find(a))] = find(b);
      std::map<Int, std::vector<Int>> comp;
      for (Int i = 0; i <= n; ++i) {
        const bool in_support = indeg[static_cast<size_t>(i)] + outdeg[static_cast<size_t>(i)] > 0;
        const bool claimed = i >= 1 && routing.y(i, k);
        if (in_support || claimed) comp[find(i)].push_back(i);
      }
      for (auto& [root, nodes] : comp) vr.components.push_back(std::move(nodes));
    }

    // Walk decoding: depot-rooted walks first, then stray cycles.
    std::map<std::pair<Int, Int>, int> remaining;
    for (const auto& [a, b] : vr.arcs) remaining[{a, b}]++;
    auto arcs_left_from = [&remaining](Int node) {
      auto it = remaining.lower_bound({node, std::numeric_limits<Int>::min()});
      while (it != remaining.end() && it->first.first == node && it->second == 0) ++it;
      return it != remaining.end() && it->first.first == node;
    };
    auto first_unused = [&remaining]() {
      for (const auto& [arc, c] : remaining)
        if (c > 0) return arc.first;
      return Int{-1};
    };
    auto push_walk = [&](Int home) {
      auto [path, closed] = detail::trace_walk(remaining, home);
      DecodedWalk walk;
      walk.nodes = std::move(path);
      if (home != 0) walk.nodes.insert(walk.nodes.begin(), home);
      walk.load_after.assign(static_cast<size_t>(P), {});
      for (Int p = 1; p <= P; ++p) {
        Int acc = 0;
        for (Int node : walk.nodes) {
          if (node >= 1) acc += inst.q(node, p);
          walk.load_after[static_cast<size_t>(p - 1)].push_back(acc);
        }
      }
      vr.walks.push_back(std::move(walk));
      return closed;
    };
    while (arcs_left_from(0)) {
      if (push_walk(0)) ++vr.depot_visit_count;  // completed return
    }
    for (Int start = first_unused(); start >= 0; start = first_unused()) push_walk(start);

    report.vehicles.push_back(std::move(vr));
  }

  // Violations, in a fixed order: per-vehicle structure first, then
  // node-level findings, then loads.
  for (const auto& vr : report.vehicles) {
    if (vr.depot_out_degree > 1) {
      report.violations.push_back({RouteViolationKind::MultipleDepotDepartures, vr.vehicle, 0, 0,
                                   "vehicle " + std::to_string(vr.vehicle) + " leaves the depot " +
                                       std::to_string(vr.depot_out_degree) + " times"});
    }
    if (!vr.eulerian) {
      report.violations.push_back({RouteViolationKind::NonEulerianSupport, vr.vehicle, -1, 0,
                                   "vehicle " + std::to_string(vr.vehicle) +
                                       " has a node with unequal in- and out-degree"});
    }
    for (const auto& comp : vr.components) {
      if (std::find(comp.begin(), comp.end(), Int{0}) != comp.end()) continue;
      std::string nodes;
      for (Int i : comp) {
        if (!nodes.empty()) nodes += ' ';
        nodes += std::to_string(i);
      }
      report.violations.push_back({RouteViolationKind::DepotFreeSubtour, vr.vehicle, comp.front(), 0,
                                   "vehicle " + std::to_string(vr.vehicle) + " component {" + nodes +
                                       "} never touches the depot"});
    }
    if (vr.depot_in_degree > 1) {
      report.violations.push_back({RouteViolationKind::NodeVisitedTwice, vr.vehicle, 0, 0,
                                   "depot visited " + std::to_string(vr.depot_in_degree) + " times by vehicle " +
                                       std::to_string(vr.vehicle)});
    }
  }
  for (Int i = 1; i <= n; ++i) {
    if (visits_total[static_cast<size_t>(i)] > 1) {
      report.violations.push_back({RouteViolationKind::NodeVisitedTwice, 0, i, 0,
                                   "facility " + std::to_string(i) + " visited " +
                                       std::to_string(visits_total[static_cast<size_t>(i)]) + " times"});
    }
    if (visits_total[static_cast<size_t>(i)] == 0) {
      report.violations.push_back(
          {RouteViolationKind::NodeUnvisited, 0, i, 0, "facility " + std::to_string(i) + " is never visited"});
    }
  }
  for (const auto& vr : report.vehicles) {
    if (vr.eulerian) {
      for (const auto& walk : vr.walks)
        for (Int p = 1; p <= P; ++p) {
          if (walk.total_load(p) > inst.cap(p)) {
            report.violations.push_back({RouteViolationKind::CompartmentOverflow, vr.vehicle,
                                         walk.nodes.empty() ? -1 : walk.nodes.front(), p,
                                         "walk load " + std::to_string(walk.total_load(p)) + " exceeds capacity " +
                                             std::to_string(inst.cap(p))});
          }
        }
    } else {
      // No reliable walk decomposition: bound the loads by component totals.
      for (const auto& comp : vr.components)
        for (Int p = 1; p <= P; ++p) {
          Int total = 0;
          for (Int i : comp)
            if (i >= 1) total += inst.q(i, p);
          if (total > inst.cap(p)) {
            report.violations.push_back({RouteViolationKind::CompartmentOverflow, vr.vehicle, comp.front(), p,
                                         "component load " + std::to_string(total) + " exceeds capacity " +
                                             std::to_string(inst.cap(p))});
          }
        }
    }
  }

  Int returns = 0;
  bool any_used = false;
  for (const auto& vr : report.vehicles) {
    returns += vr.depot_visit_count;
    if (!vr.arcs.empty()) any_used = true;
  }
  report.depot_visits_total = any_used ? returns + 1 : 0;
  return report;
}

/// DOT rendering of the arc support, one color per vehicle, depot
/// double-circled. Deterministic output.
inline std::string write_dot(const WasteInstance& inst, const ModelAssignment& asg) {
  static const char* palette[] = {"blue", "forestgreen", "red", "darkorange", "purple", "teal", "brown", "magenta"};
  std::string dot = "digraph routes {\n  0 [shape=doublecircle,label=\"depot\"];\n";
  for (Int i = 1; i <= inst.hcf_count; ++i) dot += "  " + std::to_string(i) + " [shape=circle];\n";
  const BinaryRouting routing = BinaryRouting::from_assignment(inst, asg);
  for (Int k = 1; k <= inst.vehicle_count; ++k) {
    const char* color = palette[static_cast<size_t>((k - 1) % 8)];
    for (Int i = 0; i <= inst.hcf_count; ++i)
      for (Int j = 0; j <= inst.hcf_count; ++j) {
        if (i == j || !routing.x(i, j, k)) continue;
        dot += "  " + std::to_string(i) + " -> " + std::to_string(j) + " [color=" + color + ",label=\"k" +
               std::to_string(k) + "\"];\n";
      }
  }
  dot += "}\n";
  return dot;
}

}  // namespace mcvrp
