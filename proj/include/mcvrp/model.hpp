#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "instance.hpp"

namespace mcvrp {

// Decision variables. X(i,j,k): vehicle k travels i->j. Y(i,k): vehicle k
// visits node i (the depot has a Y variable too). Z(i,k,p): waste of type p
// at facility i is loaded by vehicle k. U(i,k,p): carried quantity of type p
// after vehicle k leaves facility i. V(k) and F(i,j,k,p) exist only in the
// strengthened variant: vehicle-used indicator and per-compartment flow.
enum class VarKind { X, Y, Z, U, V, F };

struct VariableRef {
  VarKind kind = VarKind::X;
  Int i = 0, j = 0, k = 0, p = 0;

  friend bool operator==(const VariableRef& a, const VariableRef& b) {
    return a.kind == b.kind && a.i == b.i && a.j == b.j && a.k == b.k && a.p == b.p;
  }
  friend bool operator<(const VariableRef& a, const VariableRef& b) {
    return std::tie(a.kind, a.i, a.j, a.k, a.p) < std::tie(b.kind, b.i, b.j, b.k, b.p);
  }
};

inline VariableRef var_x(Int i, Int j, Int k) { return {VarKind::X, i, j, k, 0}; }
inline VariableRef var_y(Int i, Int k) { return {VarKind::Y, i, 0, k, 0}; }
inline VariableRef var_z(Int i, Int k, Int p) { return {VarKind::Z, i, 0, k, p}; }
inline VariableRef var_u(Int i, Int k, Int p) { return {VarKind::U, i, 0, k, p}; }
inline VariableRef var_v(Int k) { return {VarKind::V, 0, 0, k, 0}; }
inline VariableRef var_f(Int i, Int j, Int k, Int p) { return {VarKind::F, i, j, k, p}; }

/// Canonical display name, also the key syntax of assignment files.
inline std::string variable_name(const VariableRef& v) {
  switch (v.kind) {
    case VarKind::X: return "x[" + std::to_string(v.i) + "," + std::to_string(v.j) + "," + std::to_string(v.k) + "]";
    case VarKind::Y: return "y[" + std::to_string(v.i) + "," + std::to_string(v.k) + "]";
    case VarKind::Z: return "z[" + std::to_string(v.i) + "," + std::to_string(v.k) + "," + std::to_string(v.p) + "]";
    case VarKind::U: return "u[" + std::to_string(v.i) + "," + std::to_string(v.k) + "," + std::to_string(v.p) + "]";
    case VarKind::V: return "v[" + std::to_string(v.k) + "]";
    case VarKind::F:
      return "f[" + std::to_string(v.i) + "," + std::to_string(v.j) + "," + std::to_string(v.k) + "," +
             std::to_string(v.p) + "]";
  }
  return "?";
}

/// Parse "x[i,j,k]" / "y[i,k]" / "z[i,k,p]" / "u[i,k,p]" / "v[k]" / "f[i,j,k,p]".
inline VariableRef parse_variable_name(const std::string& name) {
  auto bad = [&name]() -> ParseError { return ParseError("bad variable name '" + name + "'"); };
  const size_t lb = name.find('[');
  if (lb == std::string::npos || name.empty() || name.back() != ']') throw bad();
  const std::string head = name.substr(0, lb);
  std::vector<Int> idx;
  std::string body = name.substr(lb + 1, name.size() - lb - 2);
  size_t pos = 0;
  while (pos <= body.size()) {
    const size_t comma = body.find(',', pos);
    const std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty()) throw bad();
    try {
      size_t used = 0;
      idx.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw bad();
    } catch (const std::logic_error&) {
      throw bad();
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (head == "x" && idx.size() == 3) return var_x(idx[0], idx[1], idx[2]);
  if (head == "y" && idx.size() == 2) return var_y(idx[0], idx[1]);
  if (head == "z" && idx.size() == 3) return var_z(idx[0], idx[1], idx[2]);
  if (head == "u" && idx.size() == 3) return var_u(idx[0], idx[1], idx[2]);
  if (head == "v" && idx.size() == 1) return var_v(idx[0]);
  if (head == "f" && idx.size() == 4) return var_f(idx[0], idx[1], idx[2], idx[3]);
  throw bad();
}

// Constraint families. C1..C8 are the base catalog, F1/F2/F3 the repairs,
// S1..S3 the strengthened additions (depot degree, flow capacity, flow
// balance). Integrality is carried on the variable declarations.
enum class Family { C1, C2, C3, C4, C5, C5b, C6, C7, C8, F1, F2, F3, S1, S2, S3 };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::C1: return "C1";
    case Family::C2: return "C2";
    case Family::C3: return "C3";
    case Family::C4: return "C4";
    case Family::C5: return "C5";
    case Family::C5b: return "C5b";
    case Family::C6: return "C6";
    case Family::C7: return "C7";
    case Family::C8: return "C8";
    case Family::F1: return "F1";
    case Family::F2: return "F2";
    case Family::F3: return "F3";
    case Family::S1: return "S1";
    case Family::S2: return "S2";
    case Family::S3: return "S3";
  }
  return "?";
}

enum class Sense { LE, EQ, GE };

inline const char* sense_text(Sense s) { return s == Sense::LE ? "<=" : s == Sense::EQ ? "=" : ">="; }

struct LinearConstraint {
  std::vector<std::pair<Int, VariableRef>> terms;  // no duplicate refs
  Sense sense = Sense::LE;
  Int rhs = 0;
  Family family = Family::C1;
  std::string label;
};

struct VariableDecl {
  VariableRef ref;
  Int lower = 0;
  Int upper = 1;
  bool binary = true;  // binary implies integer in {0,1}
};

struct MilpModel {
  std::vector<VariableDecl> variables;  // declaration order is the export order
  std::vector<LinearConstraint> constraints;
  std::vector<std::pair<Int, VariableRef>> objective;  // minimized
  std::map<VariableRef, size_t> index;

  void declare(const VariableDecl& d) {
    index.emplace(d.ref, variables.size());
    variables.push_back(d);
  }
  bool declared(const VariableRef& r) const { return index.count(r) != 0; }
  const VariableDecl& decl(const VariableRef& r) const { return variables.at(index.at(r)); }

  std::map<std::string, size_t> family_counts() const {
    std::map<std::string, size_t> counts;
    for (const auto& c : constraints) counts[family_name(c.family)]++;
    return counts;
  }
};

enum class Variant { Original, WithFix1, WithFix12, WithFix123, Strengthened };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Original: return "original";
    case Variant::WithFix1: return "fix1";
    case Variant::WithFix12: return "fix12";
    case Variant::WithFix123: return "fix123";
    case Variant::Strengthened: return "strengthened";
  }
  return "?";
}

inline std::optional<Variant> parse_variant(const std::string& s) {
  if (s == "original") return Variant::Original;
  if (s == "fix1") return Variant::WithFix1;
  if (s == "fix12") return Variant::WithFix12;
  if (s == "fix123") return Variant::WithFix123;
  if (s == "strengthened") return Variant::Strengthened;
  return std::nullopt;
}

/// True when the variant gates the carried-quantity bounds by the visit
/// indicator (q*y <= u <= Q*y) instead of the unconditional box (q <= u <= Q).
inline bool variant_gates_u(Variant v) { return v != Variant::Original; }

namespace detail {

inline std::string idx_label(const char* fam, std::initializer_list<std::pair<const char*, Int>> parts) {
  std::string out = fam;
  out += '[';
  bool first = true;
  for (const auto& [key, val] : parts) {
    if (!first) out += ',';
    first = false;
    out += key;
    out += '=';
    out += std::to_string(val);
  }
  out += ']';
  return out;
}

}  // namespace detail

/// Boundary cut in the literal reading: the region is S minus the depot, and
/// every undirected pair with exactly one endpoint in that region crosses
/// (pairs touching the depot included). S={0} therefore yields the empty sum
/// 0 >= 2*y[i,k]; meaningful callers use |S| >= 2.
inline LinearConstraint make_subtour_cut(const WasteInstance& inst, const std::set<Int>& S, Int k, Int i) {
  const Int n = inst.hcf_count;
  if (!S.count(0)) throw std::invalid_argument("make_subtour_cut: S must contain the depot");
  if (S.count(i)) throw std::invalid_argument("make_subtour_cut: node i must lie outside S");
  if (i < 1 || i > n) throw std::invalid_argument("make_subtour_cut: node i out of range");
  for (Int s : S) {
    if (s < 0 || s > n) throw std::invalid_argument("make_subtour_cut: S contains node out of range");
  }

  LinearConstraint cut;
  cut.family = Family::F3;
  cut.sense = Sense::GE;
  cut.rhs = 0;
  std::string snodes;
  for (Int s : S) {
    if (!snodes.empty()) snodes += ' ';
    snodes += std::to_string(s);
  }
  cut.label = "F3[S={" + snodes + "},k=" + std::to_string(k) + ",i=" + std::to_string(i) + "]";
  for (Int a = 1; a <= n; ++a) {
    if (!S.count(a)) continue;  // a ranges over S \ {0}
    for (Int b = 0; b <= n; ++b) {
      if (b == a || (b != 0 && S.count(b))) continue;  // b outside S \ {0}
      cut.terms.push_back({1, var_x(a, b, k)});
      cut.terms.push_back({1, var_x(b, a, k)});
    }
  }
  cut.terms.push_back({-2, var_y(i, k)});
  return cut;
}

/// Boundary cut in the connectivity reading: pairs crossing between S itself
/// and its complement. A vehicle serving i outside S must enter and leave S,
/// so the crossing count is at least 2*y[i,k]. This is the form the
/// separation oracle emits; it is violated exactly when vehicle k has a
/// depot-free support component claiming node i.
inline LinearConstraint make_connectivity_cut(const WasteInstance& inst, const std::set<Int>& S, Int k, Int i) {
  const Int n = inst.hcf_count;
  if (!S.count(0)) throw std::invalid_argument("make_connectivity_cut: S must contain the depot");
  if (S.count(i)) throw std::invalid_argument("make_connectivity_cut: node i must lie outside S");
  if (i < 1 || i > n) throw std::invalid_argument("make_connectivity_cut: node i out of range");

  LinearConstraint cut;
  cut.family = Family::F3;
  cut.sense = Sense::GE;
  cut.rhs = 0;
  std::string snodes;
  for (Int s : S) {
    if (!snodes.empty()) snodes += ' ';
    snodes += std::to_string(s);
  }
  cut.label = "F3c[S={" + snodes + "},k=" + std::to_string(k) + ",i=" + std::to_string(i) + "]";
  for (Int a = 0; a <= n; ++a) {
    if (!S.count(a)) continue;
    for (Int b = 0; b <= n; ++b) {
      if (b == a || S.count(b)) continue;
      cut.terms.push_back({1, var_x(a, b, k)});
      cut.terms.push_back({1, var_x(b, a, k)});
    }
  }
  cut.terms.push_back({-2, var_y(i, k)});
  return cut;
}

/// Assemble the chosen variant into an explicit model. Pure: identical
/// inputs give identical models, label for label. Boundary cuts are never
/// materialized here (the family is exponential); pass any lazily separated
/// ones through `cuts`.
inline MilpModel build_model(const WasteInstance& inst, Variant variant,
                             const std::vector<LinearConstraint>& cuts = {}) {
  const Int n = inst.hcf_count;
  const Int K = inst.vehicle_count;
  const Int P = inst.compartment_count;
  MilpModel m;

  // Variables in a fixed kind-major order.
  for (Int i = 0; i <= n; ++i)
    for (Int j = 0; j <= n; ++j) {
      if (i == j) continue;
      for (Int k = 1; k <= K; ++k) m.declare({var_x(i, j, k), 0, 1, true});
    }
  for (Int i = 0; i <= n; ++i)
    for (Int k = 1; k <= K; ++k) m.declare({var_y(i, k), 0, 1, true});
  for (Int i = 1; i <= n; ++i)
    for (Int k = 1; k <= K; ++k)
      for (Int p = 1; p <= P; ++p) m.declare({var_z(i, k, p), 0, 1, true});
  for (Int i = 1; i <= n; ++i)
    for (Int k = 1; k <= K; ++k)
      for (Int p = 1; p <= P; ++p) m.declare({var_u(i, k, p), 0, inst.cap(p), false});
  if (variant == Variant::Strengthened) {
    for (Int k = 1; k <= K; ++k) m.declare({var_v(k), 0, 1, true});
    for (Int i = 0; i <= n; ++i)
      for (Int j = 0; j <= n; ++j) {
        if (i == j) continue;
        for (Int k = 1; k <= K; ++k)
          for (Int p = 1; p <= P; ++p) m.declare({var_f(i, j, k, p), 0, inst.cap(p), false});
      }
  }

  for (Int k = 1; k <= K; ++k)
    for (Int i = 0; i <= n; ++i)
      for (Int j = 0; j <= n; ++j) {
        if (i == j) continue;
        if (inst.dist(i, j) != 0) m.objective.push_back({inst.dist(i, j), var_x(i, j, k)});
      }

  auto add = [&m](LinearConstraint c) { m.constraints.push_back(std::move(c)); };

  // C1: every facility is assigned to exactly one vehicle.
  for (Int i = 1; i <= n; ++i) {
    LinearConstraint c;
    c.family = Family::C1;
    c.sense = Sense::EQ;
    c.rhs = 1;
    c.label = detail::idx_label("C1", {{"i", i}});
    for (Int k = 1; k <= K; ++k) c.terms.push_back({1, var_y(i, k)});
    add(std::move(c));
  }

  // C2: fleet bound at the depot. The strengthened variant states it over
  // the vehicle-used indicators instead of y[0,k].
  {
    LinearConstraint c;
    c.family = Family::C2;
    c.sense = Sense::LE;
    c.rhs = K;
    c.label = "C2";
    for (Int k = 1; k <= K; ++k)
      c.terms.push_back({1, variant == Variant::Strengthened ? var_v(k) : var_y(0, k)});
    add(std::move(c));
  }

  // C3/C4: in- and out-degree of a facility on vehicle k equal y[i,k].
  for (Int j = 1; j <= n; ++j)
    for (Int k = 1; k <= K; ++k) {
      LinearConstraint c;
      c.family = Family::C3;
      c.sense = Sense::EQ;
      c.rhs = 0;
      c.label = detail::idx_label("C3", {{"j", j}, {"k", k}});
      for (Int i = 0; i <= n; ++i)
        if (i != j) c.terms.push_back({1, var_x(i, j, k)});
      c.terms.push_back({-1, var_y(j, k)});
      add(std::move(c));
    }
  for (Int i = 1; i <= n; ++i)
    for (Int k = 1; k <= K; ++k) {
      LinearConstraint c;
      c.family = Family::C4;
      c.sense = Sense::EQ;
      c.rhs = 0;
      c.label = detail::idx_label("C4", {{"i", i}, {"k", k}});
      for (Int j = 0; j <= n; ++j)
        if (j != i) c.terms.push_back({1, var_x(i, j, k)});
      c.terms.push_back({-1, var_y(i, k)});
      add(std::move(c));
    }

  // C5: load-ordering inequalities between facility pairs (big-M = Q_p).
  for (Int i = 1; i <= n; ++i)
    for (Int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (Int k = 1; k <= K; ++k)
        for (Int p = 1; p <= P; ++p) {
          LinearConstraint c;
          c.family = Family::C5;
          c.sense = Sense::LE;
          c.rhs = inst.cap(p) - inst.q(j, p);
          c.label = detail::idx_label("C5", {{"i", i}, {"j", j}, {"k", k}, {"p", p}});
          c.terms.push_back({1, var_u(i, k, p)});
          c.terms.push_back({-1, var_u(j, k, p)});
          c.terms.push_back({inst.cap(p), var_x(i, j, k)});
          add(std::move(c));
        }
    }

  // C5b or F1: lower/upper bounds on the carried quantities. The
  // unconditional upper bound u <= Q_p already lives in the variable domain,
  // so C5b contributes one explicit constraint per (i,k,p) while F1
  // contributes the gated pair.
  for (Int i = 1; i <= n; ++i)
    for (Int k = 1; k <= K; ++k)
      for (Int p = 1; p <= P; ++p) {
        if (!variant_gates_u(variant)) {
          LinearConstraint c;
          c.family = Family::C5b;
          c.sense = Sense::GE;
          c.rhs = inst.q(i, p);
          c.label = detail::idx_label("C5b", {{"i", i}, {"k", k}, {"p", p}});
          c.terms.push_back({1, var_u(i, k, p)});
          add(std::move(c));
        } else {
          LinearConstraint lo;
          lo.family = Family::F1;
          lo.sense = Sense::GE;
          lo.rhs = 0;
          lo.label = detail::idx_label("F1lo", {{"i", i}, {"k", k}, {"p", p}});
          lo.terms.push_back({1, var_u(i, k, p)});
          lo.terms.push_back({-inst.q(i, p), var_y(i, k)});
          add(std::move(lo));
          LinearConstraint hi;
          hi.family = Family::F1;
          hi.sense = Sense::LE;
          hi.rhs = 0;
          hi.label = detail::idx_label("F1hi", {{"i", i}, {"k", k}, {"p", p}});
          hi.terms.push_back({1, var_u(i, k, p)});
          hi.terms.push_back({-inst.cap(p), var_y(i, k)});
          add(std::move(hi));
        }
      }

  // C6: a facility's load indicator requires an incoming arc of the vehicle.
  for (Int j = 1; j <= n; ++j)
    for (Int k = 1; k <= K; ++k)
      for (Int p = 1; p <= P; ++p) {
        LinearConstraint c;
        c.family = Family::C6;
        c.sense = Sense::LE;
        c.rhs = 0;
        c.label = detail::idx_label("C6", {{"j", j}, {"k", k}, {"p", p}});
        c.terms.push_back({1, var_z(j, k, p)});
        for (Int i = 0; i <= n; ++i)
          if (i != j) c.terms.push_back({-1, var_x(i, j, k)});
        add(std::move(c));
      }

  // C7: each facility's waste of each type is collected exactly once.
  for (Int j = 1; j <= n; ++j)
    for (Int p = 1; p <= P; ++p) {
      LinearConstraint c;
      c.family = Family::C7;
      c.sense = Sense::EQ;
      c.rhs = 1;
      c.label = detail::idx_label("C7", {{"j", j}, {"p", p}});
      for (Int k = 1; k <= K; ++k) c.terms.push_back({1, var_z(j, k, p)});
      add(std::move(c));
    }

  // C8: compartment capacity per vehicle.
  for (Int k = 1; k <= K; ++k)
    for (Int p = 1; p <= P; ++p) {
      LinearConstraint c;
      c.family = Family::C8;
      c.sense = Sense::LE;
      c.rhs = inst.cap(p);
      c.label = detail::idx_label("C8", {{"k", k}, {"p", p}});
      for (Int j = 1; j <= n; ++j)
        if (inst.q(j, p) != 0) c.terms.push_back({inst.q(j, p), var_z(j, k, p)});
      add(std::move(c));
    }

  // F2: depot assignments must equal depot departures.
  if (variant == Variant::WithFix12 || variant == Variant::WithFix123) {
    LinearConstraint c;
    c.family = Family::F2;
    c.sense = Sense::EQ;
    c.rhs = 0;
    c.label = "F2";
    for (Int k = 1; k <= K; ++k) c.terms.push_back({1, var_y(0, k)});
    for (Int k = 1; k <= K; ++k)
      for (Int j = 1; j <= n; ++j) c.terms.push_back({-1, var_x(0, j, k)});
    add(std::move(c));
  }

  if (variant == Variant::Strengthened) {
    // S1: each vehicle leaves the depot at most once and returns exactly as
    // often as it leaves, tied to the used indicator.
    for (Int k = 1; k <= K; ++k) {
      LinearConstraint out;
      out.family = Family::S1;
      out.sense = Sense::EQ;
      out.rhs = 0;
      out.label = detail::idx_label("S1out", {{"k", k}});
      for (Int j = 1; j <= n; ++j) out.terms.push_back({1, var_x(0, j, k)});
      out.terms.push_back({-1, var_v(k)});
      add(std::move(out));
      LinearConstraint in;
      in.family = Family::S1;
      in.sense = Sense::EQ;
      in.rhs = 0;
      in.label = detail::idx_label("S1in", {{"k", k}});
      for (Int j = 1; j <= n; ++j) in.terms.push_back({1, var_x(j, 0, k)});
      in.terms.push_back({-1, var_v(k)});
      add(std::move(in));
    }
    // S2: flow only travels along used arcs.
    for (Int i = 0; i <= n; ++i)
      for (Int j = 0; j <= n; ++j) {
        if (i == j) continue;
        for (Int k = 1; k <= K; ++k)
          for (Int p = 1; p <= P; ++p) {
            LinearConstraint c;
            c.family = Family::S2;
            c.sense = Sense::LE;
            c.rhs = 0;
            c.label = detail::idx_label("S2", {{"i", i}, {"j", j}, {"k", k}, {"p", p}});
            c.terms.push_back({1, var_f(i, j, k, p)});
            c.terms.push_back({-inst.cap(p), var_x(i, j, k)});
            add(std::move(c));
          }
      }
    // S3: each visited facility absorbs its demand from the vehicle's flow.
    // The depot carries no balance constraint and acts as the source.
    for (Int i = 1; i <= n; ++i)
      for (Int k = 1; k <= K; ++k)
        for (Int p = 1; p <= P; ++p) {
          LinearConstraint c;
          c.family = Family::S3;
          c.sense = Sense::EQ;
          c.rhs = 0;
          c.label = detail::idx_label("S3", {{"i", i}, {"k", k}, {"p", p}});
          for (Int j = 0; j <= n; ++j) {
            if (j == i) continue;
            c.terms.push_back({1, var_f(j, i, k, p)});
            c.terms.push_back({-1, var_f(i, j, k, p)});
          }
          c.terms.push_back({-inst.q(i, p), var_y(i, k)});
          add(std::move(c));
        }
  }

  for (const auto& cut : cuts) m.constraints.push_back(cut);
  return m;
}

}  // namespace mcvrp
