// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief JSON state/operator/symbol-table formats and text rendering.
 *
 * Formats are documented in docs/formats.md. Floating-point output uses 15
 * significant digits so repeated runs produce byte-identical files; exact
 * output writes rationals as "p/q" strings.
 */

#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fermibits/bitops.hpp"
#include "fermibits/config.hpp"
#include "fermibits/fock.hpp"
#include "fermibits/matrix.hpp"
#include "fermibits/scalar.hpp"
#include "fermibits/spintrace.hpp"

namespace fermibits {

using json = nlohmann::json;

/// Malformed input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& what) {
  if (!obj.is_object()) throw FormatError(what + ": expected a JSON object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key)) throw FormatError(what + ": unknown field '" + key + "'");
}

inline std::vector<int> int_array(const json& obj, const char* key, const std::string& what) {
  if (!obj.contains(key)) throw FormatError(what + ": missing field '" + key + "'");
  const json& arr = obj.at(key);
  if (!arr.is_array()) throw FormatError(what + ": field '" + key + "' must be an array");
  std::vector<int> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw FormatError(what + ": '" + key + "' must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

/// True when the value is an integer or a rational string.
inline bool is_exact_literal(const json& v) {
  return v.is_null() || v.is_number_integer() || v.is_string();
}

template <Scalar S>
mpq_class exact_component(const json& v, const std::string& what) {
  if (v.is_null()) return 0;
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(what + ": " + e.what());
    }
  }
  if (v.is_number())
    throw FormatError(what + ": floating-point value " + v.dump() +
                      " cannot be represented exactly; use a \"p/q\" string");
  throw FormatError(what + ": expected a number or rational string");
}

inline double float_component(const json& v, const std::string& what) {
  if (v.is_null()) return 0.0;
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>()).get_d();
    } catch (const std::invalid_argument& e) {
      throw FormatError(what + ": " + e.what());
    }
  }
  throw FormatError(what + ": expected a number or rational string");
}

template <Scalar S>
S scalar_from_parts(const json& re, const json& im, const std::string& what) {
  if constexpr (std::is_same_v<S, GaussianRational>)
    return GaussianRational(exact_component<S>(re, what), exact_component<S>(im, what));
  else
    return S(float_component(re, what), float_component(im, what));
}

}  // namespace detail

/// Real number with 15 significant digits; negative zero prints as 0.
[[nodiscard]] inline std::string format_real(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

/// x rounded to 15 significant digits (what format_real prints).
[[nodiscard]] inline double round15(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  return std::stod(format_real(x));
}

[[nodiscard]] inline std::string format_scalar(const Complex& z) {
  const std::string re = format_real(z.real());
  const std::string im = format_real(z.imag());
  if (z.imag() == 0.0) return re;
  if (z.real() == 0.0) return im + "i";
  return re + (z.imag() > 0 ? "+" : "") + im + "i";
}

[[nodiscard]] inline std::string format_scalar(const GaussianRational& z) {
  const std::string re = z.real().get_str();
  const std::string im = z.imag().get_str();
  if (z.imag() == 0) return re;
  if (z.real() == 0) return im + "i";
  return re + (z.imag() > 0 ? "+" : "") + im + "i";
}

[[nodiscard]] inline json scalar_to_json(const Complex& z) {
  return json::array({round15(z.real()), round15(z.imag())});
}

[[nodiscard]] inline json scalar_to_json(const GaussianRational& z) {
  return json::array({z.real().get_str(), z.imag().get_str()});
}

/// True when every coefficient of the state file is an integer or "p/q" string.
[[nodiscard]] inline bool state_json_is_exact(const json& doc) {
  if (!doc.contains("terms") || !doc.at("terms").is_array()) return false;
  for (const auto& t : doc.at("terms")) {
    if (t.contains("re") && !detail::is_exact_literal(t.at("re"))) return false;
    if (t.contains("im") && !detail::is_exact_literal(t.at("im"))) return false;
  }
  return true;
}

/// Parse a state document; coefficients of repeated determinants add up.
template <Scalar S>
[[nodiscard]] FermiState<S> state_from_json(const json& doc) {
  const std::string what = "state file";
  detail::reject_unknown_keys(doc, {"orbs", "N", "orbnames", "terms"}, what);
  const auto orbs = detail::int_array(doc, "orbs", what);
  const auto particles = detail::int_array(doc, "N", what);
  std::vector<std::string> names;
  if (doc.contains("orbnames")) {
    if (!doc.at("orbnames").is_array()) throw FormatError(what + ": 'orbnames' must be an array");
    for (const auto& n : doc.at("orbnames")) {
      if (!n.is_string()) throw FormatError(what + ": 'orbnames' must hold strings");
      names.push_back(n.get<std::string>());
    }
  }
  OrbitalConfig config = [&] {
    try {
      return OrbitalConfig(orbs, particles, names);
    } catch (const std::domain_error& e) {
      throw FormatError(what + ": " + e.what());
    }
  }();
  if (!doc.contains("terms") || !doc.at("terms").is_array())
    throw FormatError(what + ": missing array field 'terms'");
  FermiState<S> psi(config);
  for (const auto& term : doc.at("terms")) {
    detail::reject_unknown_keys(term, {"orbitals", "re", "im"}, what + " term");
    const auto coords = detail::int_array(term, "orbitals", what + " term");
    Bitfield s = 0;
    try {
      s = coords_to_fermi(coords);
    } catch (const std::domain_error& e) {
      throw FormatError(what + ": " + e.what());
    }
    if (!config.admissible(s))
      throw FormatError(what + ": determinant " + json(coords).dump() +
                        " does not belong to the configuration");
    const json re = term.value("re", json());
    const json im = term.value("im", json());
    psi.add(s, detail::scalar_from_parts<S>(re, im, what));
  }
  return psi;
}

[[nodiscard]] inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

template <Scalar S>
[[nodiscard]] json state_to_json(const FermiState<S>& psi) {
  json doc;
  doc["orbs"] = psi.config().group_sizes();
  doc["N"] = psi.config().group_particles();
  if (!psi.config().orbital_names().empty()) doc["orbnames"] = psi.config().orbital_names();
  json terms = json::array();
  for (const auto& [s, c] : psi.terms()) {
    const json v = scalar_to_json(c);
    terms.push_back({{"orbitals", fermi_to_coords(s)}, {"re", v[0]}, {"im", v[1]}});
  }
  doc["terms"] = std::move(terms);
  return doc;
}

/**
 * Operator matrix from {"dim": n, "entries": [[re, im], ...]} (square,
 * row-major) or {"rows": r, "cols": c, "entries": ...}. The metadata keys
 * written by operator_to_json ("orbs", "row_basis", "col_basis") are
 * accepted and ignored here.
 */
template <Scalar S>
[[nodiscard]] Matrix<S> matrix_from_json(const json& doc) {
  const std::string what = "operator file";
  detail::reject_unknown_keys(doc, {"dim", "entries", "rows", "cols", "orbs", "row_basis", "col_basis"},
                              what);
  const auto size_field = [&](const char* key) -> long {
    if (!doc.at(key).is_number_integer() || doc.at(key).get<long>() < 1)
      throw FormatError(what + ": '" + key + "' must be a positive integer");
    return doc.at(key).get<long>();
  };
  long rows = 0, cols = 0;
  if (doc.contains("dim")) {
    rows = cols = size_field("dim");
    if ((doc.contains("rows") && size_field("rows") != rows) ||
        (doc.contains("cols") && size_field("cols") != cols))
      throw FormatError(what + ": 'rows'/'cols' disagree with 'dim'");
  } else if (doc.contains("rows") && doc.contains("cols")) {
    rows = size_field("rows");
    cols = size_field("cols");
  } else {
    throw FormatError(what + ": need 'dim' or both 'rows' and 'cols'");
  }
  if (!doc.contains("entries") || !doc.at("entries").is_array())
    throw FormatError(what + ": missing array field 'entries'");
  const json& entries = doc.at("entries");
  if (entries.size() != static_cast<std::size_t>(rows * cols))
    throw FormatError(what + ": expected " + std::to_string(rows * cols) + " entries, found " +
                      std::to_string(entries.size()));
  Matrix<S> m(rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 2) throw FormatError(what + ": entries must be [re, im] pairs");
    m(k / cols, k % cols) = detail::scalar_from_parts<S>(e[0], e[1], what);
  }
  return m;
}

[[nodiscard]] inline bool matrix_json_is_exact(const json& doc) {
  if (!doc.contains("entries") || !doc.at("entries").is_array()) return false;
  for (const auto& e : doc.at("entries"))
    for (const auto& v : e)
      if (!detail::is_exact_literal(v)) return false;
  return true;
}

/// Ket label: orbital names if given, else concatenated digits (space-separated past 9).
[[nodiscard]] inline std::string ket_label(Bitfield s, const std::vector<std::string>& names = {}) {
  const auto coords = fermi_to_coords(s);
  const bool compact = names.empty() && (coords.empty() || coords.back() <= 9);
  std::string out = "|";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i > 0 && !compact) out += ' ';
    out += names.empty() ? std::to_string(coords[i]) : names[coords[i] - 1];
  }
  return out + ">";
}

template <Scalar S>
[[nodiscard]] json operator_to_json(const FermiOp<S>& op) {
  json doc;
  const auto& m = op.matrix();
  if (m.is_square()) doc["dim"] = m.rows();
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  doc["orbs"] = op.orbitals();
  json rb = json::array();
  for (Bitfield s : op.to_config().enumerate_basis()) rb.push_back(fermi_to_coords(s));
  json cb = json::array();
  for (Bitfield s : op.from_config().enumerate_basis()) cb.push_back(fermi_to_coords(s));
  doc["row_basis"] = std::move(rb);
  doc["col_basis"] = std::move(cb);
  json entries = json::array();
  for (const auto& x : m.data()) entries.push_back(scalar_to_json(x));
  doc["entries"] = std::move(entries);
  return doc;
}

/// Aligned text rendering with ket labels on rows and columns.
template <Scalar S>
[[nodiscard]] std::string operator_to_text(const FermiOp<S>& op,
                                           const std::vector<std::string>& names = {}) {
  const auto rows = op.to_config().enumerate_basis();
  const auto cols = op.from_config().enumerate_basis();
  std::ostringstream os;
  os << "Fermi operator wedge^" << op.from_config().particles() << " H -> wedge^"
     << op.to_config().particles() << " H (orbs == " << op.orbitals() << ")\n";
  std::vector<std::string> row_labels, col_labels;
  for (Bitfield s : rows) row_labels.push_back(ket_label(s, names));
  for (Bitfield s : cols) col_labels.push_back(ket_label(s, names));
  std::vector<std::vector<std::string>> cells(rows.size(), std::vector<std::string>(cols.size()));
  std::vector<std::size_t> width(cols.size());
  std::size_t label_width = 0;
  for (const auto& l : row_labels) label_width = std::max(label_width, l.size());
  for (std::size_t c = 0; c < cols.size(); ++c) width[c] = col_labels[c].size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) {
      cells[r][c] = format_scalar(op(r, c));
      width[c] = std::max(width[c], cells[r][c].size());
    }
  const auto pad = [](const std::string& s, std::size_t w) {
    return std::string(w - s.size(), ' ') + s;
  };
  os << std::string(label_width, ' ');
  for (std::size_t c = 0; c < cols.size(); ++c) os << "  " << pad(col_labels[c], width[c]);
  os << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << pad(row_labels[r], label_width);
    for (std::size_t c = 0; c < cols.size(); ++c) os << "  " << pad(cells[r][c], width[c]);
    os << '\n';
  }
  return os.str();
}

template <Scalar S>
[[nodiscard]] std::string state_to_text(const FermiState<S>& psi) {
  std::ostringstream os;
  os << "Fermi state (orbs == " << psi.orbitals() << ", N == " << psi.particles() << ")\n";
  bool first = true;
  for (const auto& [s, c] : psi.terms()) {
    if (!first) os << " + ";
    os << '(' << format_scalar(c) << ')' << ket_label(s, psi.config().orbital_names());
    first = false;
  }
  if (first) os << "0";
  os << '\n';
  return os.str();
}

/// Symbol table as [{"bra": [a, b], "ket": [c, d], "re", "im"}], sorted by symbol.
template <Scalar S>
[[nodiscard]] json symbols_to_json(const SymbolTable<S>& table, int spatial_count = 0) {
  json out = json::array();
  for (const auto& [sym, coeff] : table) {
    const json v = scalar_to_json(coeff);
    json entry = {{"bra", {sym.a, sym.b}}, {"ket", {sym.c, sym.d}}, {"re", v[0]}, {"im", v[1]}};
    // multiset keys of the two pairs; order within a pair is carried by bra/ket
    if (spatial_count > 0)
      entry["key"] = {pair_multiset_key(sym.a, sym.b, spatial_count),
                      pair_multiset_key(sym.c, sym.d, spatial_count)};
    out.push_back(std::move(entry));
  }
  return out;
}

template <Scalar S>
[[nodiscard]] std::string symbols_to_text(const SymbolTable<S>& table) {
  std::ostringstream os;
  for (const auto& [sym, coeff] : table)
    os << '<' << sym.a << ' ' << sym.b << '|' << sym.c << ' ' << sym.d << ">  "
       << format_scalar(coeff) << '\n';
  return os.str();
}

}  // namespace fermibits
