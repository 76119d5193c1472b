#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mcvrp {

using Int = std::int64_t;

/// Thrown when an input document is malformed or violates a data invariant.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A multi-compartment waste collection instance.
///
/// Nodes are indexed 0..hcf_count with 0 the depot and 1..hcf_count the
/// facilities. The fleet is homogeneous: every vehicle has the same
/// compartment capacities. All quantities are integers.
struct WasteInstance {
  Int hcf_count = 0;          // n, facilities are 1..n
  Int vehicle_count = 0;      // |K|, vehicles are 1..|K|
  Int compartment_count = 0;  // |P|, compartments are 1..|P|
  std::vector<Int> capacity;                // Q[p-1]
  std::vector<std::vector<Int>> demand;     // demand[i-1][p-1]
  std::vector<std::vector<Int>> distance;   // distance[i][j], 0..n x 0..n
  std::vector<Int> penalty;                 // optional per-vehicle penalty, parsed but unused

  Int node_count() const { return hcf_count + 1; }

  /// Demand of facility i (1-based) for compartment p (1-based).
  Int q(Int i, Int p) const { return demand.at(static_cast<size_t>(i - 1)).at(static_cast<size_t>(p - 1)); }

  /// Capacity of compartment p (1-based).
  Int cap(Int p) const { return capacity.at(static_cast<size_t>(p - 1)); }

  /// Directed travel distance from node i to node j (0-based nodes).
  Int dist(Int i, Int j) const { return distance.at(static_cast<size_t>(i)).at(static_cast<size_t>(j)); }

  bool operator==(const WasteInstance& other) const {
    return hcf_count == other.hcf_count && vehicle_count == other.vehicle_count &&
           compartment_count == other.compartment_count && capacity == other.capacity &&
           demand == other.demand && distance == other.distance && penalty == other.penalty;
  }
};

struct ValidationIssue {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
};

/// Total demand of compartment p across all facilities.
inline Int total_demand(const WasteInstance& inst, Int p) {
  if (p < 1 || p > inst.compartment_count) {
    throw std::out_of_range("total_demand: compartment index " + std::to_string(p) + " out of range 1.." +
                            std::to_string(inst.compartment_count));
  }
  Int sum = 0;
  for (Int i = 1; i <= inst.hcf_count; ++i) sum += inst.q(i, p);
  return sum;
}

/// Structural and invariant checks. Errors make the instance unusable;
/// the fleet-capacity check is only a warning (a necessary condition for
/// the routing problem to be solvable, not for the data to be well formed).
inline std::vector<ValidationIssue> validate_instance(const WasteInstance& inst) {
  std::vector<ValidationIssue> issues;
  auto error = [&issues](const std::string& msg) {
    issues.push_back({ValidationIssue::Severity::Error, msg});
  };

  if (inst.hcf_count < 1) error("hcf_count must be positive");
  if (inst.vehicle_count < 1) error("vehicle_count must be positive");
  if (inst.compartment_count < 1) error("compartment_count must be positive");

  const size_t n = static_cast<size_t>(inst.hcf_count > 0 ? inst.hcf_count : 0);
  const size_t P = static_cast<size_t>(inst.compartment_count > 0 ? inst.compartment_count : 0);

  if (inst.capacity.size() != P) {
    error("capacity has " + std::to_string(inst.capacity.size()) + " entries, expected " + std::to_string(P));
  } else {
    for (size_t p = 0; p < P; ++p) {
      if (inst.capacity[p] <= 0) error("capacity Q[" + std::to_string(p + 1) + "] must be positive");
    }
  }

  if (inst.demand.size() != n) {
    error("demand has " + std::to_string(inst.demand.size()) + " rows, expected " + std::to_string(n));
  } else {
    for (size_t i = 0; i < n; ++i) {
      if (inst.demand[i].size() != P) {
        error("demand row " + std::to_string(i + 1) + " has " + std::to_string(inst.demand[i].size()) +
              " entries, expected " + std::to_string(P));
        continue;
      }
      for (size_t p = 0; p < P; ++p) {
        const Int v = inst.demand[i][p];
        if (v < 0) error("q[" + std::to_string(i + 1) + "][" + std::to_string(p + 1) + "] is negative");
        if (inst.capacity.size() == P && v > inst.capacity[p]) {
          error("q[" + std::to_string(i + 1) + "][" + std::to_string(p + 1) + "]=" + std::to_string(v) +
                " exceeds Q[" + std::to_string(p + 1) + "]=" + std::to_string(inst.capacity[p]));
        }
      }
    }
  }

  const size_t nn = n + 1;
  if (inst.distance.size() != nn) {
    error("distance has " + std::to_string(inst.distance.size()) + " rows, expected " + std::to_string(nn));
  } else {
    for (size_t i = 0; i < nn; ++i) {
      if (inst.distance[i].size() != nn) {
        error("distance row " + std::to_string(i) + " has " + std::to_string(inst.distance[i].size()) +
              " entries, expected " + std::to_string(nn));
        continue;
      }
      for (size_t j = 0; j < nn; ++j) {
        if (inst.distance[i][j] < 0) error("d[" + std::to_string(i) + "][" + std::to_string(j) + "] is negative");
      }
      if (inst.distance[i].size() == nn && inst.distance[i][i] != 0) {
        error("d[" + std::to_string(i) + "][" + std::to_string(i) + "] must be 0");
      }
    }
  }

  if (!inst.penalty.empty() && inst.penalty.size() != static_cast<size_t>(inst.vehicle_count)) {
    error("penalty has " + std::to_string(inst.penalty.size()) + " entries, expected " +
          std::to_string(inst.vehicle_count));
  }

  // Fleet capacity pre-check: sum of demands must fit in |K| vehicles.
  if (issues.empty()) {
    for (Int p = 1; p <= inst.compartment_count; ++p) {
      const Int total = total_demand(inst, p);
      const Int fleet = inst.vehicle_count * inst.cap(p);
      if (total > fleet) {
        issues.push_back({ValidationIssue::Severity::Warning,
                          "total demand " + std::to_string(total) + " of compartment " + std::to_string(p) +
                              " exceeds fleet capacity " + std::to_string(fleet)});
      }
    }
  }
  return issues;
}

namespace detail {

inline nlohmann::json require_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}

inline Int as_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + " must be an integer");
  return j.get<Int>();
}

inline std::vector<Int> as_int_vector(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + " must be an array");
  std::vector<Int> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::vector<Int>> as_int_matrix(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + " must be an array of arrays");
  std::vector<std::vector<Int>> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) out.push_back(as_int_vector(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

/// Schema-level parse only: field presence and types. Invariants are not
/// checked; run validate_instance on the result.
inline WasteInstance parse_instance_unchecked(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid document: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance document must be an object");

  WasteInstance inst;
  inst.hcf_count = detail::as_int(detail::require_field(j, "hcf_count"), "hcf_count");
  inst.vehicle_count = detail::as_int(detail::require_field(j, "vehicle_count"), "vehicle_count");
  inst.compartment_count = detail::as_int(detail::require_field(j, "compartment_count"), "compartment_count");
  inst.capacity = detail::as_int_vector(detail::require_field(j, "capacity"), "capacity");
  inst.demand = detail::as_int_matrix(detail::require_field(j, "demand"), "demand");
  inst.distance = detail::as_int_matrix(detail::require_field(j, "distance"), "distance");
  if (j.contains("penalty")) inst.penalty = detail::as_int_vector(j.at("penalty"), "penalty");
  return inst;
}

/// Parse an instance document. Throws ParseError on schema problems or
/// invariant violations; the message names the offending entry.
inline WasteInstance parse_instance(const std::string& text) {
  WasteInstance inst = parse_instance_unchecked(text);
  std::string errors;
  for (const auto& issue : validate_instance(inst)) {
    if (issue.severity != ValidationIssue::Severity::Error) continue;
    if (!errors.empty()) errors += "; ";
    errors += issue.message;
  }
  if (!errors.empty()) throw ParseError("invalid instance: " + errors);
  return inst;
}

inline nlohmann::ordered_json instance_to_json(const WasteInstance& inst) {
  nlohmann::ordered_json j;
  j["hcf_count"] = inst.hcf_count;
  j["vehicle_count"] = inst.vehicle_count;
  j["compartment_count"] = inst.compartment_count;
  j["capacity"] = inst.capacity;
  j["demand"] = inst.demand;
  j["distance"] = inst.distance;
  if (!inst.penalty.empty()) j["penalty"] = inst.penalty;
  return j;
}

/// Canonical serialization: fixed key order, two-space indent, sorted
/// structure. parse_instance(serialize_instance(x)) == x for valid x.
inline std::string serialize_instance(const WasteInstance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

/// FNV-1a over the canonical serialization; stable across runs and platforms.
inline std::string instance_digest(const WasteInstance& inst) {
  const std::string text = serialize_instance(inst);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

/// The built-in 10-facility, 2-vehicle, 3-compartment reference instance.
/// Data is verbatim; node 0 is the depot, facilities are rows 1..10.
inline WasteInstance paper_instance() {
  WasteInstance inst;
  inst.hcf_count = 10;
  inst.vehicle_count = 2;
  inst.compartment_count = 3;
  inst.capacity = {500, 500, 500};
  inst.demand = {
      {7, 7, 6},
      {8, 5, 4},
      {4, 6, 3},
      {3, 2, 2},
      {6, 4, 3},
      {6, 1, 3},
      {8, 7, 7},
      {9, 9, 8},
      {0, 4, 7},
      {2, 3, 2},
  };
  inst.distance = {
      {0, 10, 18, 11, 10, 10, 11, 17, 14, 12, 19},
      {11, 0, 17, 12, 15, 18, 11, 16, 14, 16, 11},
      {16, 1, 0, 12, 19, 17, 10, 19, 12, 17, 15},
      {10, 2, 18, 0, 20, 18, 13, 15, 15, 14, 17},
      {18, 3, 11, 16, 0, 19, 18, 20, 17, 15, 13},
      {18, 4, 16, 11, 20, 0, 20, 20, 12, 10, 14},
      {16, 5, 14, 17, 11, 14, 0, 17, 10, 10, 13},
      {17, 6, 11, 18, 12, 16, 10, 0, 11, 12, 12},
      {12, 7, 18, 17, 19, 20, 12, 20, 0, 13, 18},
      {13, 8, 10, 16, 18, 16, 14, 16, 13, 0, 14},
      {10, 9, 18, 15, 11, 11, 10, 17, 15, 18, 0},
  };
  return inst;
}

}  // namespace mcvrp
