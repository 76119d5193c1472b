#pragma once

#include <string>

#include "model.hpp"

namespace mcvrp {

namespace detail {

/// Names restricted to [A-Za-z0-9_] so that every solver's reader accepts
/// them: "x[0,4,1]" -> "x_0_4_1", "C5[i=1,j=2,k=1,p=3]" -> "C5_i1_j2_k1_p3".
inline std::string sanitize_name(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  bool last_sep = false;
  for (char c : raw) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) {
      out += c;
      last_sep = false;
    } else if (c == '[' || c == ',' || c == ' ') {
      if (!out.empty() && !last_sep) out += '_';
      last_sep = true;
    }  // ']', '=', '{', '}' and anything else just drop out
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

inline std::string export_var_name(const VariableRef& v) { return sanitize_name(variable_name(v)); }

inline void append_terms(std::string& out, const std::vector<std::pair<Int, VariableRef>>& terms) {
  size_t on_line = 0;
  bool first = true;
  for (const auto& [coeff, ref] : terms) {
    if (coeff == 0) continue;
    std::string piece;
    if (first) {
      piece = (coeff < 0 ? "- " : "");
    } else {
      piece = (coeff < 0 ? " - " : " + ");
    }
    const Int mag = coeff < 0 ? -coeff : coeff;
    if (mag != 1) piece += std::to_string(mag) + " ";
    piece += export_var_name(ref);
    if (on_line == 8) {
      out += "\n    ";
      on_line = 0;
      if (piece.size() > 1 && piece[0] == ' ') piece.erase(0, 1);
    }
    out += piece;
    ++on_line;
    first = false;
  }
  if (first) out += "0";  // all-zero row
}

}  // namespace detail

/// CPLEX-style LP text: Minimize / Subject To / Bounds / Binaries /
/// Generals / End, variables in declaration order, constraints in catalog
/// order. Byte-stable: no timestamps, no environment-dependent content.
inline std::string export_lp(const MilpModel& model) {
  std::string out;
  out += "\\ mcvrp model export\n";
  out += "Minimize\n obj: ";
  detail::append_terms(out, model.objective);
  out += "\nSubject To\n";
  for (const auto& c : model.constraints) {
    out += " " + detail::sanitize_name(c.label) + ": ";
    detail::append_terms(out, c.terms);
    out += std::string(" ") + (c.sense == Sense::LE ? "<=" : c.sense == Sense::EQ ? "=" : ">=") + " " +
           std::to_string(c.rhs) + "\n";
  }
  out += "Bounds\n";
  for (const auto& d : model.variables) {
    if (d.binary) continue;
    out += " " + std::to_string(d.lower) + " <= " + detail::export_var_name(d.ref) +
           " <= " + std::to_string(d.upper) + "\n";
  }
  out += "Binaries\n";
  {
    std::string line;
    for (const auto& d : model.variables) {
      if (!d.binary) continue;
      if (line.size() > 70) {
        out += " " + line + "\n";
        line.clear();
      }
      if (!line.empty()) line += ' ';
      line += detail::export_var_name(d.ref);
    }
    if (!line.empty()) out += " " + line + "\n";
  }
  out += "Generals\n";
  {
    std::string line;
    for (const auto& d : model.variables) {
      if (d.binary) continue;
      if (line.size() > 70) {
        out += " " + line + "\n";
        line.clear();
      }
      if (!line.empty()) line += ' ';
      line += detail::export_var_name(d.ref);
    }
    if (!line.empty()) out += " " + line + "\n";
  }
  out += "End\n";
  return out;
}

/// MPS text with fixed-width columns (long names, whitespace-aligned; every
/// mainstream reader accepts this layout). Rows in catalog order, columns in
/// declaration order, integrality via marker pairs and BV bounds.
inline std::string export_mps(const MilpModel& model) {
  auto pad = [](const std::string& s, size_t width) {
    std::string out = s;
    if (out.size() < width) out.append(width - out.size(), ' ');
    return out;
  };
  std::string out;
  out += "NAME          MCVRP\n";
  out += "ROWS\n";
  out += " N  COST\n";
  for (const auto& c : model.constraints) {
    const char* type = c.sense == Sense::LE ? "L" : c.sense == Sense::EQ ? "E" : "G";
    out += std::string(" ") + type + "  " + detail::sanitize_name(c.label) + "\n";
  }

  // Per-column coefficient lists in row order.
  std::vector<std::vector<std::pair<std::string, Int>>> cols(model.variables.size());
  for (const auto& [coeff, ref] : model.objective) {
    if (coeff != 0) cols[model.index.at(ref)].push_back({"COST", coeff});
  }
  for (const auto& c : model.constraints) {
    const std::string row = detail::sanitize_name(c.label);
    for (const auto& [coeff, ref] : c.terms) {
      if (coeff != 0) cols[model.index.at(ref)].push_back({row, coeff});
    }
  }

  out += "COLUMNS\n";
  out += "    MARKER1   'MARKER'                 'INTORG'\n";
  for (size_t ci = 0; ci < cols.size(); ++ci) {
    const std::string name = detail::export_var_name(model.variables[ci].ref);
    if (cols[ci].empty()) {
      // Column with no coefficients anywhere: mention it once so readers
      // accept its BOUNDS entry.
      out += "    " + pad(name, 20) + "  " + pad("COST", 24) + "  0\n";
      continue;
    }
    for (const auto& [row, coeff] : cols[ci]) {
      out += "    " + pad(name, 20) + "  " + pad(row, 24) + "  " + std::to_string(coeff) + "\n";
    }
  }
  out += "    MARKER2   'MARKER'                 'INTEND'\n";

  out += "RHS\n";
  for (const auto& c : model.constraints) {
    if (c.rhs == 0) continue;
    out += "    " + pad("RHS", 20) + "  " + pad(detail::sanitize_name(c.label), 24) + "  " +
           std::to_string(c.rhs) + "\n";
  }
  out += "BOUNDS\n";
  for (const auto& d : model.variables) {
    const std::string name = detail::export_var_name(d.ref);
    if (d.binary) {
      out += " BV " + pad("BND", 17) + "  " + name + "\n";
    } else {
      out += " LO " + pad("BND", 17) + "  " + pad(name, 24) + "  " + std::to_string(d.lower) + "\n";
      out += " UP " + pad("BND", 17) + "  " + pad(name, 24) + "  " + std::to_string(d.upper) + "\n";
    }
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace mcvrp
