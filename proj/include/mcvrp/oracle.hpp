#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "assignment.hpp"
#include "difference.hpp"
#include "model.hpp"
#include "routes.hpp"
#include "ufeas.hpp"

namespace mcvrp {

/// Thrown when an exact computation would exceed its scale guard.
class GuardError : public std::runtime_error {
public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

struct TourResult {
  Int cost = 0;
  std::vector<Int> order;  // facility sequence, depot implicit at both ends
};

/// Minimal directed depot-to-depot tour over the given facilities, by
/// dynamic programming over subsets. Deterministic: among minimum tours the
/// lexicographically smallest order is returned. The listing order of
/// `subset` does not matter.
inline TourResult held_karp_tour(const WasteInstance& inst, std::vector<Int> subset, Int guard = 14) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  for (Int i : subset) {
    if (i < 1 || i > inst.hcf_count) throw std::invalid_argument("held_karp_tour: facility out of range");
  }
  const size_t m = subset.size();
  if (static_cast<Int>(m) > guard) {
    throw GuardError("held_karp_tour: subset size " + std::to_string(m) + " exceeds guard " + std::to_string(guard));
  }
  if (m == 0) return {0, {}};

  // g[mask][t]: cost of visiting exactly `mask` and returning to the depot,
  // starting from subset[t-1] (t=0 is the depot), with `mask` still to do.
  const size_t full = (size_t{1} << m) - 1;
  const Int inf = std::numeric_limits<Int>::max() / 4;
  std::vector<std::vector<Int>> g(full + 1, std::vector<Int>(m + 1, inf));
  auto node_of = [&](size_t t) { return t == 0 ? Int{0} : subset[t - 1]; };
  for (size_t t = 0; t <= m; ++t) g[0][t] = inst.dist(node_of(t), 0);
  for (size_t mask = 1; mask <= full; ++mask) {
    for (size_t t = 0; t <= m; ++t) {
      if (t != 0 && (mask & (size_t{1} << (t - 1)))) continue;  // current node cannot be unvisited
      Int best = inf;
      for (size_t s = 0; s < m; ++s) {
        if (!(mask & (size_t{1} << s))) continue;
        const Int c = inst.dist(node_of(t), subset[s]) + g[mask ^ (size_t{1} << s)][s + 1];
        if (c < best) best = c;
      }
      g[mask][t] = best;
    }
  }

  TourResult result;
  result.cost = g[full][0];
  size_t mask = full, t = 0;
  while (mask != 0) {
    for (size_t s = 0; s < m; ++s) {
      if (!(mask & (size_t{1} << s))) continue;
      if (inst.dist(node_of(t), subset[s]) + g[mask ^ (size_t{1} << s)][s + 1] == g[mask][t]) {
        result.order.push_back(subset[s]);
        mask ^= size_t{1} << s;
        t = s + 1;
        break;  // smallest s first: lexicographically least optimal order
      }
    }
  }
  return result;
}

struct OptimalPlan {
  std::vector<std::vector<Int>> routes;       // facility sequences, one per used vehicle
  Int total_distance = 0;
  std::vector<std::vector<Int>> route_loads;  // [route][p-1]
};

struct SemanticSolveResult {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Infeasible;
  OptimalPlan plan;
};

/// True minimum-distance plan: a partition of the facilities into at most
/// |K| depot-rooted tours, each within every compartment capacity. Exact by
/// subset DP over capacity-feasible subsets with tour costs from the
/// Held-Karp table. Vehicles carry no fixed cost, so using fewer than |K|
/// routes is allowed.
inline SemanticSolveResult exact_semantic_solve(const WasteInstance& inst, Int guard = 14) {
  const Int n = inst.hcf_count;
  if (n > guard) {
    throw GuardError("exact_semantic_solve: " + std::to_string(n) + " facilities exceed guard " +
                     std::to_string(guard));
  }
  const size_t full = (size_t{1} << n) - 1;
  const Int inf = std::numeric_limits<Int>::max() / 4;

  // Path DP over the full ground set: dp[mask][j] = least cost of a path
  // depot -> ... -> facility j+1 visiting exactly `mask`.
  std::vector<std::vector<Int>> dp(full + 1, std::vector<Int>(static_cast<size_t>(n), inf));
  for (Int j = 1; j <= n; ++j) dp[size_t{1} << (j - 1)][static_cast<size_t>(j - 1)] = inst.dist(0, j);
  for (size_t mask = 1; mask <= full; ++mask) {
    for (Int j = 1; j <= n; ++j) {
      if (!(mask & (size_t{1} << (j - 1)))) continue;
      const Int cur = dp[mask][static_cast<size_t>(j - 1)];
      if (cur == inf) continue;
      for (Int t = 1; t <= n; ++t) {
        if (mask & (size_t{1} << (t - 1))) continue;
        const size_t next = mask | (size_t{1} << (t - 1));
        const Int c = cur + inst.dist(j, t);
        if (c < dp[next][static_cast<size_t>(t - 1)]) dp[next][static_cast<size_t>(t - 1)] = c;
      }
    }
  }

  // Tour cost per capacity-feasible subset.
  std::vector<Int> route_cost(full + 1, inf);
  route_cost[0] = 0;
  for (size_t mask = 1; mask <= full; ++mask) {
    bool fits = true;
    for (Int p = 1; p <= inst.compartment_count && fits; ++p) {
      Int load = 0;
      for (Int i = 1; i <= n; ++i)
        if (mask & (size_t{1} << (i - 1))) load += inst.q(i, p);
      if (load > inst.cap(p)) fits = false;
    }
    if (!fits) continue;
    Int best = inf;
    for (Int j = 1; j <= n; ++j) {
      if (!(mask & (size_t{1} << (j - 1)))) continue;
      if (dp[mask][static_cast<size_t>(j - 1)] == inf) continue;
      best = std::min(best, dp[mask][static_cast<size_t>(j - 1)] + inst.dist(j, 0));
    }
    route_cost[mask] = best;
  }

  // Partition DP: best[r][mask] = least cost covering `mask` with at most r
  // routes. Submasks always contain the lowest set bit, so each cover is
  // enumerated once.
  const Int maxr = std::min<Int>(inst.vehicle_count, n);
  std::vector<std::vector<Int>> best(static_cast<size_t>(maxr) + 1, std::vector<Int>(full + 1, inf));
  for (size_t r = 0; r <= static_cast<size_t>(maxr); ++r) best[r][0] = 0;
  for (size_t r = 1; r <= static_cast<size_t>(maxr); ++r) {
    for (size_t mask = 1; mask <= full; ++mask) {
      Int b = best[r - 1][mask];
      const size_t low = mask & (~mask + 1);
      for (size_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;
        if (route_cost[sub] == inf) continue;
        const Int rest = best[r - 1][mask ^ sub];
        if (rest == inf) continue;
        b = std::min(b, route_cost[sub] + rest);
      }
      best[r][mask] = b;
    }
  }

  SemanticSolveResult result;
  if (n == 0) {
    result.status = SemanticSolveResult::Status::Optimal;
    return result;
  }
  if (best[static_cast<size_t>(maxr)][full] >= inf) {
    result.status = SemanticSolveResult::Status::Infeasible;
    return result;
  }
  result.status = SemanticSolveResult::Status::Optimal;
  result.plan.total_distance = best[static_cast<size_t>(maxr)][full];

  // Reconstruct: peel off the route containing the smallest unrouted
  // facility; among optimal choices take the lexicographically smallest
  // tour order. Routes come out ordered by their smallest member.
  size_t mask = full;
  Int r = maxr;
  while (mask != 0) {
    while (r > 1 && best[static_cast<size_t>(r - 1)][mask] == best[static_cast<size_t>(r)][mask]) --r;
    const size_t low = mask & (~mask + 1);
    std::optional<std::vector<Int>> chosen;
    size_t chosen_sub = 0;
    for (size_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
      if (!(sub & low)) continue;
      if (route_cost[sub] == inf || best[static_cast<size_t>(r - 1)][mask ^ sub] == inf) continue;
      if (route_cost[sub] + best[static_cast<size_t>(r - 1)][mask ^ sub] != best[static_cast<size_t>(r)][mask])
        continue;
      std::vector<Int> nodes;
      for (Int i = 1; i <= n; ++i)
        if (sub & (size_t{1} << (i - 1))) nodes.push_back(i);
      auto tour = held_karp_tour(inst, nodes, guard);
      if (!chosen || tour.order < *chosen) {
        chosen = tour.order;
        chosen_sub = sub;
      }
    }
    result.plan.routes.push_back(*chosen);
    mask ^= chosen_sub;
    --r;
  }
  for (const auto& route : result.plan.routes) {
    std::vector<Int> loads;
    for (Int p = 1; p <= inst.compartment_count; ++p) {
      Int load = 0;
      for (Int i : route) load += inst.q(i, p);
      loads.push_back(load);
    }
    result.plan.route_loads.push_back(std::move(loads));
  }
  return result;
}

/// Turn a plan into model variables. Routes go to vehicles 1,2,... in plan
/// order. The carried quantities are the physical cumulative loads; under
/// the ungated variant the unvisited (i,k) pairs get their forced lower
/// bound q_ip, under gated variants they stay zero.
inline ModelAssignment lift_plan(const WasteInstance& inst, const OptimalPlan& plan, Variant variant) {
  ModelAssignment asg;
  asg.partial = true;
  const Int P = inst.compartment_count;
  std::vector<std::vector<uint8_t>> visited(static_cast<size_t>(inst.vehicle_count) + 1,
                                            std::vector<uint8_t>(static_cast<size_t>(inst.hcf_count) + 1, 0));
  for (size_t r = 0; r < plan.routes.size(); ++r) {
    const Int k = static_cast<Int>(r) + 1;
    const auto& route = plan.routes[r];
    if (route.empty()) continue;
    asg.set(var_y(0, k), 1);
    if (variant == Variant::Strengthened) asg.set(var_v(k), 1);
    Int prev = 0;
    std::vector<Int> acc(static_cast<size_t>(P), 0);
    // total route demand per compartment, for the flow values
    std::vector<Int> rest(static_cast<size_t>(P), 0);
    for (Int i : route)
      for (Int p = 1; p <= P; ++p) rest[static_cast<size_t>(p - 1)] += inst.q(i, p);
    for (Int i : route) {
      asg.set(var_x(prev, i, k), 1);
      if (variant == Variant::Strengthened) {
        for (Int p = 1; p <= P; ++p) {
          if (rest[static_cast<size_t>(p - 1)] != 0) asg.set(var_f(prev, i, k, p), rest[static_cast<size_t>(p - 1)]);
        }
      }
      asg.set(var_y(i, k), 1);
      visited[static_cast<size_t>(k)][static_cast<size_t>(i)] = 1;
      for (Int p = 1; p <= P; ++p) {
        asg.set(var_z(i, k, p), 1);
        acc[static_cast<size_t>(p - 1)] += inst.q(i, p);
        rest[static_cast<size_t>(p - 1)] -= inst.q(i, p);
        if (acc[static_cast<size_t>(p - 1)] != 0) asg.set(var_u(i, k, p), acc[static_cast<size_t>(p - 1)]);
      }
      prev = i;
    }
    asg.set(var_x(prev, 0, k), 1);
  }
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

// ---------------------------------------------------------------------------
// Subtour separation and exhaustive boundary-cut scans.

struct SeparatedCut {
  std::set<Int> region;  // S, contains the depot
  Int witness = 0;       // facility outside S with y = 1
  Int vehicle = 0;
  LinearConstraint cut;  // connectivity form; violated by the assignment
};

namespace detail {

// Connected components of vehicle k's support, treating a facility the
// y-values claim but no arc touches as its own component.
inline std::vector<std::vector<Int>> support_components(const WasteInstance& inst, const BinaryRouting& routing,
                                                        Int k) {
  const Int n = inst.hcf_count;
  std::vector<Int> parent(static_cast<size_t>(n + 1));
  for (Int i = 0; i <= n; ++i) parent[static_cast<size_t>(i)] = i;
  std::function<Int(Int)> find = [&](Int a) {
    while (parent[static_cast<size_t>(a)] != a) {
      parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
      a = parent[static_cast<size_t>(a)];
    }
    return a;
  };
  std::vector<Int> degree(static_cast<size_t>(n + 1), 0);
  for (Int i = 0; i <= n; ++i)
    for (Int j = 0; j <= n; ++j) {
      if (i == j || !routing.x(i, j, k)) continue;
      parent[static_cast<size_t>(find(i))] = find(j);
      ++degree[static_cast<size_t>(i)];
      ++degree[static_cast<size_t>(j)];
    }
  std::map<Int, std::vector<Int>> comp;
  for (Int i = 0; i <= n; ++i) {
    const bool in_support = degree[static_cast<size_t>(i)] > 0;
    const bool claimed = i >= 1 && routing.y(i, k);
    if (in_support || claimed) comp[find(i)].push_back(i);
  }
  std::vector<std::vector<Int>> out;
  for (auto& [root, nodes] : comp) out.push_back(std::move(nodes));
  return out;
}

}  // namespace detail

/// Find a violated boundary cut for vehicle k, or nothing. Looks for a
/// support component that misses the depot but contains a facility the
/// y-values claim; S is then everything outside that component. Integer
/// values only.
inline std::optional<SeparatedCut> separate_subtour(const WasteInstance& inst, const ModelAssignment& asg, Int k) {
  for (const auto& [ref, value] : asg.values) {
    if ((ref.kind == VarKind::X || ref.kind == VarKind::Y) && value != 0 && value != 1) {
      throw std::invalid_argument("separate_subtour: non-binary value for " + variable_name(ref));
    }
  }
  const BinaryRouting routing = BinaryRouting::from_assignment(inst, asg);
  const auto components = detail::support_components(inst, routing, k);
  std::optional<SeparatedCut> found;
  for (const auto& comp : components) {
    if (std::find(comp.begin(), comp.end(), Int{0}) != comp.end()) continue;
    Int witness = -1;
    for (Int i : comp) {
      if (routing.y(i, k)) {
        witness = i;
        break;
      }
    }
    if (witness < 0) continue;
    SeparatedCut cut;
    for (Int v = 0; v <= inst.hcf_count; ++v) cut.region.insert(v);
    for (Int v : comp) cut.region.erase(v);
    cut.witness = witness;
    cut.vehicle = k;
    cut.cut = make_connectivity_cut(inst, cut.region, k, witness);
    if (!found || witness < found->witness) found = std::move(cut);
  }
  return found;
}

/// Which boundary definition an exhaustive scan uses. Literal: the crossing
/// set of S minus the depot, pairs touching the depot included, regions of
/// size >= 2 (the S={0} member degenerates to 0 >= 2y and is excluded).
/// Connectivity: the crossing set of S itself, all S containing the depot.
enum class CutFamily { Literal, Connectivity };

struct CutScanResult {
  bool found = false;
  std::set<Int> region;
  Int witness = 0;
  Int vehicle = 0;
  Int lhs = 0;
  uint64_t members_checked = 0;
  uint64_t violated_members = 0;
};

/// Exhaustively test every member of the boundary-cut family against the
/// assignment. Returns the first violated member in (vehicle, region,
/// witness) order and counts all violated ones.
inline CutScanResult scan_cut_members(const WasteInstance& inst, const ModelAssignment& asg, CutFamily family,
                                      Int guard = 11) {
  const Int n = inst.hcf_count;
  if (n > guard) {
    throw GuardError("scan_cut_members: " + std::to_string(n) + " facilities exceed guard " + std::to_string(guard));
  }
  const BinaryRouting routing = BinaryRouting::from_assignment(inst, asg);
  CutScanResult result;
  for (Int k = 1; k <= inst.vehicle_count; ++k) {
    std::vector<std::pair<Int, Int>> arcs;
    for (Int i = 0; i <= n; ++i)
      for (Int j = 0; j <= n; ++j)
        if (i != j && routing.x(i, j, k)) arcs.push_back({i, j});
    for (size_t t = 0; t < (size_t{1} << n); ++t) {
      // T is S minus the depot, as a facility bitmask.
      if (family == CutFamily::Literal && t == 0) continue;
      auto in_t = [&](Int node) { return node >= 1 && (t & (size_t{1} << (node - 1))); };
      auto in_s = [&](Int node) { return node == 0 || in_t(node); };
      Int lhs = 0;
      for (const auto& [a, b] : arcs) {
        const bool cross = family == CutFamily::Literal ? in_t(a) != in_t(b) : in_s(a) != in_s(b);
        if (cross) ++lhs;
      }
      for (Int i = 1; i <= n; ++i) {
        if (in_t(i)) continue;  // witness must lie outside S
        ++result.members_checked;
        const Int rhs = routing.y(i, k) ? 2 : 0;
        if (lhs < rhs) {
          ++result.violated_members;
          if (!result.found) {
            result.found = true;
            result.vehicle = k;
            result.witness = i;
            result.lhs = lhs;
            result.region.insert(0);
            for (Int v = 1; v <= n; ++v)
              if (in_t(v)) result.region.insert(v);
          }
        }
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Exact search over a model's binary variables.

namespace detail {

/// Edmonds-Karp max flow on a small dense graph.
class MaxFlow {
public:
  explicit MaxFlow(size_t n) : n_(n), cap_(n * n, 0), orig_(n * n, 0) {}
  void add(size_t a, size_t b, Int c) {
    cap_[a * n_ + b] += c;
    orig_[a * n_ + b] += c;
  }
  Int run(size_t s, size_t t) {
    Int total = 0;
    while (true) {
      std::vector<size_t> pred(n_, n_);
      std::queue<size_t> bfs;
      bfs.push(s);
      pred[s] = s;
      while (!bfs.empty() && pred[t] == n_) {
        const size_t u = bfs.front();
        bfs.pop();
        for (size_t v = 0; v < n_; ++v) {
          if (pred[v] == n_ && cap_[u * n_ + v] > 0) {
            pred[v] = u;
            bfs.push(v);
          }
        }
      }
      if (pred[t] == n_) return total;
      Int push = std::numeric_limits<Int>::max();
      for (size_t v = t; v != s; v = pred[v]) push = std::min(push, cap_[pred[v] * n_ + v]);
      for (size_t v = t; v != s; v = pred[v]) {
        cap_[pred[v] * n_ + v] -= push;
        cap_[v * n_ + pred[v]] += push;
      }
      total += push;
    }
  }
  /// Net flow shipped along (a,b) after run().
  Int flow(size_t a, size_t b) const {
    const Int f = orig_[a * n_ + b] - cap_[a * n_ + b];
    return f > 0 ? f : 0;
  }

private:
  size_t n_;
  std::vector<Int> cap_, orig_;
};

}  // namespace detail

struct BruteForceResult {
  enum class Status { Optimal, Infeasible, LimitExceeded };
  Status status = Status::Infeasible;
  Int objective = 0;
  ModelAssignment assignment;  // binaries plus witness values for u and f
  uint64_t nodes_explored = 0;
};

/// Exact optimum of the model as written, by depth-first search over the
/// binary variables with interval and objective pruning. At each complete
/// binary leaf the carried quantities are decided by difference-constraint
/// feasibility and the flow variables (when present) by a max-flow check,
/// so those variables never enter the enumeration. Works for any model
/// produced by build_model, including added cuts.
inline BruteForceResult brute_force_milp(const MilpModel& model, uint64_t node_limit = 50'000'000,
                                         size_t binary_limit = 60) {
  // Order: Y, V, then X grouped by (vehicle, head) so the degree equalities
  // bind within short windows, then Z.
  std::vector<size_t> bins;
  auto push_kind = [&](VarKind kind) {
    for (size_t vi = 0; vi < model.variables.size(); ++vi)
      if (model.variables[vi].ref.kind == kind && model.variables[vi].binary) bins.push_back(vi);
  };
  push_kind(VarKind::Y);
  push_kind(VarKind::V);
  {
    std::vector<size_t> xs;
    for (size_t vi = 0; vi < model.variables.size(); ++vi)
      if (model.variables[vi].ref.kind == VarKind::X && model.variables[vi].binary) xs.push_back(vi);
    std::sort(xs.begin(), xs.end(), [&](size_t a, size_t b) {
      const auto& ra = model.variables[a].ref;
      const auto& rb = model.variables[b].ref;
      return std::tie(ra.k, ra.j, ra.i) < std::tie(rb.k, rb.j, rb.i);
    });
    bins.insert(bins.end(), xs.begin(), xs.end());
  }
  push_kind(VarKind::Z);
  for (size_t vi = 0; vi < model.variables.size(); ++vi) {
    const auto& d = model.variables[vi];
    if (d.binary) continue;
    if (d.ref.kind != VarKind::U && d.ref.kind != VarKind::F) {
      throw std::invalid_argument("brute_force_milp: non-binary variable of unsupported kind");
    }
  }
  if (bins.size() > binary_limit) {
    throw GuardError("brute_force_milp: " + std::to_string(bins.size()) + " binaries exceed guard " +
                     std::to_string(binary_limit));
  }
  std::vector<size_t> pos_of(model.variables.size(), SIZE_MAX);
  for (size_t d = 0; d < bins.size(); ++d) pos_of[bins[d]] = d;

  // Split constraints: pure-binary ones prune the search; the rest are
  // settled at leaves (u via differences, f via flow).
  struct PruneCons {
    Sense sense;
    Int rhs;
    Int neg_slack = 0, pos_slack = 0;  // min/max contribution of unfixed vars
    Int fixed = 0;
    std::vector<std::pair<size_t, Int>> by_depth;  // (depth, coeff)
  };
  std::vector<PruneCons> prune;
  std::vector<const LinearConstraint*> u_cons, f_cons;
  for (const auto& c : model.constraints) {
    bool has_u = false, has_f = false;
    for (const auto& [coeff, ref] : c.terms) {
      if (ref.kind == VarKind::U) has_u = true;
      if (ref.kind == VarKind::F) has_f = true;
    }
    if (has_u && has_f) throw std::invalid_argument("brute_force_milp: constraint mixes u and f");
    if (has_u) {
      u_cons.push_back(&c);
      continue;
    }
    if (has_f) {
      f_cons.push_back(&c);
      continue;
    }
    PruneCons pc;
    pc.sense = c.sense;
    pc.rhs = c.rhs;
    for (const auto& [coeff, ref] : c.terms) {
      const size_t depth = pos_of[model.index.at(ref)];
      pc.by_depth.push_back({depth, coeff});
      if (coeff < 0) pc.neg_slack += coeff;
      if (coeff > 0) pc.pos_slack += coeff;
    }
    prune.push_back(std::move(pc));
  }
  // occurrences[depth] -> list of (constraint idx, coeff)
  std::vector<std::vector<std::pair<size_t, Int>>> occurrences(bins.size());
  for (size_t ci = 0; ci < prune.size(); ++ci)
    for (const auto& [depth, coeff] : prune[ci].by_depth) occurrences[depth].push_back({ci, coeff});

  std::vector<Int> obj_coeff(bins.size(), 0);
  Int obj_neg_total = 0;
  for (const auto& [coeff, ref] : model.objective) {
    const size_t vi = model.index.at(ref);
    if (pos_of[vi] == SIZE_MAX) {
      if (coeff != 0) throw std::invalid_argument("brute_force_milp: objective touches non-binary variable");
      continue;
    }
    obj_coeff[pos_of[vi]] += coeff;
  }
  for (Int c : obj_coeff)
    if (c < 0) obj_neg_total += c;

  BruteForceResult result;
  std::vector<int8_t> value(bins.size(), -1);
  Int fixed_obj = 0;
  Int obj_neg_rest = obj_neg_total;
  bool have_best = false;
  Int best_obj = 0;
  std::vector<int8_t> best_values;
  ModelAssignment best_witness;

  auto feasible_now = [&](const PruneCons& pc) {
    const Int lo = pc.fixed + pc.neg_slack;
    const Int hi = pc.fixed + pc.pos_slack;
    switch (pc.sense) {
      case Sense::LE: return lo <= pc.rhs;
      case Sense::GE: return hi >= pc.rhs;
      case Sense::EQ: return lo <= pc.rhs && hi >= pc.rhs;
    }
    return true;
  };

  // Leaf check for the u variables: substitute the binaries into every
  // u-constraint; what remains must be one- or two-variable difference
  // constraints with unit coefficients. On success the least solution goes
  // into the witness.
  std::map<VariableRef, size_t> uidx;
  for (const auto& d : model.variables)
    if (d.ref.kind == VarKind::U) uidx.emplace(d.ref, uidx.size());
  auto check_u = [&](ModelAssignment& witness) {
    if (uidx.empty()) return true;
    DifferenceSystem sys(uidx.size());
    std::vector<std::array<Int, 2>> box(uidx.size());
    for (const auto& d : model.variables)
      if (d.ref.kind == VarKind::U) box[uidx.at(d.ref)] = {d.lower, d.upper};
    for (const LinearConstraint* c : u_cons) {
      Int rhs = c->rhs;
      std::vector<std::pair<Int, size_t>> uterm;
      for (const auto& [coeff, ref] : c->terms) {
        if (ref.kind == VarKind::U) {
          uterm.push_back({coeff, uidx.at(ref)});
        } else {
          rhs -= coeff * value[pos_of[model.index.at(ref)]];
        }
      }
      auto apply_le = [&](std::vector<std::pair<Int, size_t>> terms, Int bound) {
        if (terms.size() == 1) {
          const auto& [cf, ui] = terms[0];
          if (cf == 1) {
            box[ui][1] = std::min(box[ui][1], bound);
          } else if (cf == -1) {
            box[ui][0] = std::max(box[ui][0], -bound);
          } else {
            throw std::invalid_argument("brute_force_milp: non-unit u coefficient");
          }
        } else if (terms.size() == 2) {
          const auto& [c0, u0] = terms[0];
          const auto& [c1, u1] = terms[1];
          if (c0 == 1 && c1 == -1) {
            sys.add(u0, u1, bound);
          } else if (c0 == -1 && c1 == 1) {
            sys.add(u1, u0, bound);
          } else {
            throw std::invalid_argument("brute_force_milp: unsupported u pair");
          }
        } else {
          throw std::invalid_argument("brute_force_milp: u constraint with more than two u terms");
        }
      };
      if (c->sense == Sense::LE || c->sense == Sense::EQ) apply_le(uterm, rhs);
      if (c->sense == Sense::GE || c->sense == Sense::EQ) {
        auto flipped = uterm;
        for (auto& [cf, ui] : flipped) cf = -cf;
        apply_le(flipped, -rhs);
      }
    }
    for (const auto& [ref, ui] : uidx) {
      if (box[ui][0] > box[ui][1]) return false;
      sys.set_bounds(ui, box[ui][0], box[ui][1]);
    }
    auto res = sys.solve();
    if (!res.feasible) return false;
    for (const auto& [ref, ui] : uidx) {
      if (res.min_values[ui] != 0) witness.set(ref, res.min_values[ui]);
    }
    return true;
  };

  // Leaf check for the flow variables: per (vehicle, compartment), arc
  // capacities come from the coupling rows and facility demands from the
  // balance rows; feasible iff a depot-rooted flow saturates every demand.
  Int flow_nodes = 0;
  std::set<std::pair<Int, Int>> flow_blocks;
  for (const auto& d : model.variables) {
    if (d.ref.kind != VarKind::F) continue;
    flow_blocks.insert({d.ref.k, d.ref.p});
    flow_nodes = std::max(flow_nodes, std::max(d.ref.i, d.ref.j));
  }
  auto check_f = [&](ModelAssignment& witness) {
    for (const auto& [k, p] : flow_blocks) {
      std::map<std::pair<Int, Int>, Int> arc_cap;
      std::vector<Int> demand(static_cast<size_t>(flow_nodes) + 1, 0);
      for (const LinearConstraint* c : f_cons) {
        const VariableRef* fref = nullptr;
        for (const auto& [coeff, ref] : c->terms)
          if (ref.kind == VarKind::F) {
            fref = &ref;
            break;
          }
        if (fref == nullptr || fref->k != k || fref->p != p) continue;
        Int rhs = c->rhs;
        for (const auto& [coeff, ref] : c->terms) {
          if (ref.kind == VarKind::F) continue;
          rhs -= coeff * value[pos_of[model.index.at(ref)]];
        }
        if (c->family == Family::S2) {
          arc_cap[{fref->i, fref->j}] = rhs;  // f[i,j] <= rhs'
        } else if (c->family == Family::S3) {
          // Balance row of facility i: inflow (+1 on f[j,i]) minus outflow.
          Int fi = -1;
          for (const auto& [coeff, ref] : c->terms)
            if (ref.kind == VarKind::F) {
              fi = coeff > 0 ? ref.j : ref.i;
              break;
            }
          demand[static_cast<size_t>(fi)] = rhs;
        } else {
          throw std::invalid_argument("brute_force_milp: unsupported f constraint family");
        }
      }
      Int total_demand_kp = 0;
      for (Int i = 1; i <= flow_nodes; ++i) {
        if (demand[static_cast<size_t>(i)] < 0) return false;
        total_demand_kp += demand[static_cast<size_t>(i)];
      }
      const size_t sink = static_cast<size_t>(flow_nodes) + 1;
      detail::MaxFlow mf(sink + 1);
      for (const auto& [arc, cap] : arc_cap)
        if (cap > 0) mf.add(static_cast<size_t>(arc.first), static_cast<size_t>(arc.second), cap);
      for (Int i = 1; i <= flow_nodes; ++i)
        if (demand[static_cast<size_t>(i)] > 0) mf.add(static_cast<size_t>(i), sink, demand[static_cast<size_t>(i)]);
      if (mf.run(0, sink) != total_demand_kp) return false;
      for (const auto& [arc, cap] : arc_cap) {
        const Int fv = mf.flow(static_cast<size_t>(arc.first), static_cast<size_t>(arc.second));
        if (fv > 0) witness.set(var_f(arc.first, arc.second, k, p), fv);
      }
    }
    return true;
  };

  bool limit_hit = false;
  std::function<void(size_t)> dfs = [&](size_t depth) {
    if (limit_hit) return;
    ++result.nodes_explored;
    if (node_limit != 0 && result.nodes_explored > node_limit) {
      limit_hit = true;
      return;
    }
    if (depth == bins.size()) {
      ModelAssignment witness;
      witness.partial = true;
      if (check_u(witness) && check_f(witness)) {
        if (!have_best || fixed_obj < best_obj) {
          have_best = true;
          best_obj = fixed_obj;
          best_values.assign(value.begin(), value.end());
          best_witness = witness;
        }
      }
      return;
    }
    for (int8_t v = 0; v <= 1; ++v) {
      value[depth] = v;
      fixed_obj += obj_coeff[depth] * v;
      if (obj_coeff[depth] < 0) obj_neg_rest -= obj_coeff[depth];
      bool ok = true;
      for (const auto& [ci, coeff] : occurrences[depth]) {
        prune[ci].fixed += coeff * v;
        if (coeff < 0) prune[ci].neg_slack -= coeff;
        if (coeff > 0) prune[ci].pos_slack -= coeff;
        if (!feasible_now(prune[ci])) ok = false;
      }
      if (ok && have_best && fixed_obj + obj_neg_rest >= best_obj) ok = false;
      if (ok) dfs(depth + 1);
      for (const auto& [ci, coeff] : occurrences[depth]) {
        prune[ci].fixed -= coeff * v;
        if (coeff < 0) prune[ci].neg_slack += coeff;
        if (coeff > 0) prune[ci].pos_slack += coeff;
      }
      fixed_obj -= obj_coeff[depth] * v;
      if (obj_coeff[depth] < 0) obj_neg_rest += obj_coeff[depth];
      value[depth] = -1;
      if (limit_hit) return;
    }
  };
  dfs(0);

  if (limit_hit) {
    result.status = BruteForceResult::Status::LimitExceeded;
    return result;
  }
  if (!have_best) {
    result.status = BruteForceResult::Status::Infeasible;
    return result;
  }
  result.status = BruteForceResult::Status::Optimal;
  result.objective = best_obj;
  result.assignment = best_witness;
  for (size_t d = 0; d < bins.size(); ++d) {
    if (best_values[d] != 0) result.assignment.set(model.variables[bins[d]].ref, best_values[d]);
  }
  return result;
}

}  // namespace mcvrp
