#pragma once

#include <vector>

#include "assignment.hpp"
#include "difference.hpp"
#include "model.hpp"

namespace mcvrp {

/// Fixed binary routing values, the input to the load-feasibility check.
struct BinaryRouting {
  Int n = 0, K = 0;
  std::vector<uint8_t> xv;  // (k-1)*(n+1)*(n+1) + i*(n+1) + j
  std::vector<uint8_t> yv;  // (k-1)*(n+1) + i

  BinaryRouting(Int n_, Int K_) : n(n_), K(K_) {
    xv.assign(static_cast<size_t>(K * (n + 1) * (n + 1)), 0);
    yv.assign(static_cast<size_t>(K * (n + 1)), 0);
  }

  static BinaryRouting from_assignment(const WasteInstance& inst, const ModelAssignment& asg) {
    BinaryRouting r(inst.hcf_count, inst.vehicle_count);
    for (const auto& [ref, value] : asg.values) {
      if (value == 0) continue;
      if (ref.kind == VarKind::X) r.set_x(ref.i, ref.j, ref.k, value != 0);
      if (ref.kind == VarKind::Y) r.set_y(ref.i, ref.k, value != 0);
    }
    return r;
  }

  bool x(Int i, Int j, Int k) const {
    return xv[static_cast<size_t>((k - 1) * (n + 1) * (n + 1) + i * (n + 1) + j)] != 0;
  }
  bool y(Int i, Int k) const { return yv[static_cast<size_t>((k - 1) * (n + 1) + i)] != 0; }
  void set_x(Int i, Int j, Int k, bool v) {
    xv[static_cast<size_t>((k - 1) * (n + 1) * (n + 1) + i * (n + 1) + j)] = v ? 1 : 0;
  }
  void set_y(Int i, Int k, bool v) { yv[static_cast<size_t>((k - 1) * (n + 1) + i)] = v ? 1 : 0; }
};

/// Feasibility of the carried-quantity variables for one (vehicle,
/// compartment) block. When feasible, min_u/max_u give the componentwise
/// least/greatest integer solutions (indexed by facility, 1..n at offset
/// i-1); when not, `cycle` names an unsatisfiable constraint subset.
struct UBlockResult {
  Int k = 0, p = 0;
  bool feasible = false;
  std::vector<Int> min_u, max_u;
  std::vector<std::string> cycle;
};

struct UFeasibility {
  bool feasible = true;
  std::vector<UBlockResult> blocks;  // ordered by (k,p)

  const UBlockResult& block(Int k, Int p) const {
    for (const auto& b : blocks)
      if (b.k == k && b.p == p) return b;
    throw std::out_of_range("no such (vehicle, compartment) block");
  }
};

/// Decide whether integer carried quantities exist for the fixed routing,
/// independently per (vehicle, compartment). The load-ordering inequalities
/// u[i]-u[j] <= Q_p - q_jp - Q_p*x[i,j,k] are difference constraints; the
/// bound family of the chosen variant supplies the boxes. Always decides:
/// returns witnesses or an explicit negative cycle.
inline UFeasibility u_feasibility(const WasteInstance& inst, const BinaryRouting& routing, Variant variant) {
  const Int n = inst.hcf_count;
  UFeasibility out;
  for (Int k = 1; k <= inst.vehicle_count; ++k)
    for (Int p = 1; p <= inst.compartment_count; ++p) {
      DifferenceSystem sys(static_cast<size_t>(n));
      for (Int i = 1; i <= n; ++i) {
        if (variant_gates_u(variant)) {
          const Int y = routing.y(i, k) ? 1 : 0;
          sys.set_bounds(static_cast<size_t>(i - 1), inst.q(i, p) * y, inst.cap(p) * y);
        } else {
          sys.set_bounds(static_cast<size_t>(i - 1), inst.q(i, p), inst.cap(p));
        }
      }
      // u[i] - u[j] <= Q_p - q_jp - Q_p*x[i,j,k]. The x=0 members are
      // redundant under the unconditional boxes but can bind once the lower
      // bound of u[j] is gated away, so every pair goes in.
      for (Int i = 1; i <= n; ++i)
        for (Int j = 1; j <= n; ++j) {
          if (i == j) continue;
          const Int big = routing.x(i, j, k) ? inst.cap(p) : 0;
          sys.add(static_cast<size_t>(i - 1), static_cast<size_t>(j - 1), inst.cap(p) - inst.q(j, p) - big,
                  detail::idx_label("C5", {{"i", i}, {"j", j}, {"k", k}, {"p", p}}));
        }
      auto res = sys.solve();
      UBlockResult block;
      block.k = k;
      block.p = p;
      block.feasible = res.feasible;
      block.min_u = std::move(res.min_values);
      block.max_u = std::move(res.max_values);
      block.cycle = std::move(res.cycle);
      if (!block.feasible) out.feasible = false;
      out.blocks.push_back(std::move(block));
    }
  return out;
}

inline UFeasibility u_feasibility(const WasteInstance& inst, const ModelAssignment& asg, Variant variant) {
  return u_feasibility(inst, BinaryRouting::from_assignment(inst, asg), variant);
}

}  // namespace mcvrp
