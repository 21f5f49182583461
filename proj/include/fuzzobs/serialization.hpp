#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fuzzobs/complex_matrix.hpp"
#include "fuzzobs/cyclic_measure.hpp"
#include "fuzzobs/errors.hpp"
#include "fuzzobs/observable.hpp"
#include "fuzzobs/torus.hpp"

namespace fuzzobs {

// JSON document layouts:
//   measure     {"N": int, "weights": [N reals]}
//   observable  {"N": int, "dim": int, "atoms": [N x [dim*dim x [re, im]]]}
//   kernel      {"N": int, "rows": [N x [N reals]]}
//   c-matrix    {"K": int, "entries": [(2K+1) x [(2K+1) x [re, im]]]}
//   torus       {"type": "atomic", "atoms": [[angle, weight], ...]}
//               {"type": "grid", "samples": [reals]}
// Malformed structure raises SchemaError; value-level violations surface as
// the constructors' InvariantError.

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* name) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + name + "'");
  return *it;
}

inline int require_int(const nlohmann::json& j, const char* name) {
  const nlohmann::json& f = require_field(j, name);
  if (!f.is_number_integer()) throw SchemaError(std::string("field '") + name + "' must be an integer");
  return f.get<int>();
}

inline std::vector<double> require_real_array(const nlohmann::json& f, const char* what) {
  if (!f.is_array()) throw SchemaError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(f.size());
  for (const auto& v : f) {
    if (!v.is_number()) throw SchemaError(std::string(what) + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

inline Complex read_complex(const nlohmann::json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw SchemaError(std::string(what) + " must be [re, im] pairs");
  return Complex(v[0].get<double>(), v[1].get<double>());
}

inline nlohmann::ordered_json write_complex(const Complex& z) {
  return nlohmann::ordered_json{z.real(), z.imag()};
}

}  // namespace detail

inline nlohmann::ordered_json measure_to_json(const ProbabilityMeasure& rho) {
  nlohmann::ordered_json j;
  j["N"] = rho.order();
  j["weights"] = rho.weights();
  return j;
}

inline ProbabilityMeasure measure_from_json(const nlohmann::json& j) {
  const int n = detail::require_int(j, "N");
  std::vector<double> weights =
      detail::require_real_array(detail::require_field(j, "weights"), "'weights'");
  if (static_cast<int>(weights.size()) != n)
    throw SchemaError("'weights' length does not match N");
  return ProbabilityMeasure(CyclicGroup(n), std::move(weights));
}

inline nlohmann::ordered_json observable_to_json(const Observable& obs) {
  nlohmann::ordered_json j;
  j["N"] = obs.order();
  j["dim"] = obs.dim();
  nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
  for (int w = 0; w < obs.order(); ++w) {
    nlohmann::ordered_json atom = nlohmann::ordered_json::array();
    for (int r = 0; r < obs.dim(); ++r)
      for (int c = 0; c < obs.dim(); ++c) atom.push_back(detail::write_complex(obs.atom(w)(r, c)));
    atoms.push_back(std::move(atom));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

inline Observable observable_from_json(const nlohmann::json& j) {
  const int n = detail::require_int(j, "N");
  const int dim = detail::require_int(j, "dim");
  if (dim < 1) throw SchemaError("'dim' must be positive");
  const nlohmann::json& atoms_json = detail::require_field(j, "atoms");
  if (!atoms_json.is_array() || static_cast<int>(atoms_json.size()) != n)
    throw SchemaError("'atoms' must be an array of length N");
  std::vector<CMat> atoms;
  atoms.reserve(n);
  for (const auto& atom_json : atoms_json) {
    if (!atom_json.is_array() || static_cast<int>(atom_json.size()) != dim * dim)
      throw SchemaError("each atom must hold dim*dim [re, im] pairs");
    std::vector<Complex> entries;
    entries.reserve(atom_json.size());
    for (const auto& v : atom_json) entries.push_back(detail::read_complex(v, "atom entries"));
    atoms.emplace_back(dim, std::move(entries));
  }
  return Observable(CyclicGroup(n), std::move(atoms));
}

inline nlohmann::ordered_json kernel_to_json(const ConfidenceKernel& nu) {
  nlohmann::ordered_json j;
  j["N"] = nu.order();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int w = 0; w < nu.order(); ++w) rows.push_back(nu.row(w).weights());
  j["rows"] = std::move(rows);
  return j;
}

inline ConfidenceKernel kernel_from_json(const nlohmann::json& j) {
  const int n = detail::require_int(j, "N");
  const nlohmann::json& rows_json = detail::require_field(j, "rows");
  if (!rows_json.is_array() || static_cast<int>(rows_json.size()) != n)
    throw SchemaError("'rows' must be an array of length N");
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  for (const auto& row : rows_json) {
    rows.push_back(detail::require_real_array(row, "kernel row"));
    if (static_cast<int>(rows.back().size()) != n)
      throw SchemaError("kernel rows must have length N");
  }
  return ConfidenceKernel(CyclicGroup(n), std::move(rows));
}

inline nlohmann::ordered_json cmatrix_to_json(const torus::CMatrix& c) {
  nlohmann::ordered_json j;
  j["K"] = c.half_width();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (int n = -c.half_width(); n <= c.half_width(); ++n) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int m = -c.half_width(); m <= c.half_width(); ++m)
      row.push_back(detail::write_complex(c.at(n, m)));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline torus::CMatrix cmatrix_from_json(const nlohmann::json& j) {
  const int k = detail::require_int(j, "K");
  if (k < 1) throw SchemaError("'K' must be at least 1");
  const int side = 2 * k + 1;
  const nlohmann::json& entries_json = detail::require_field(j, "entries");
  if (!entries_json.is_array() || static_cast<int>(entries_json.size()) != side)
    throw SchemaError("'entries' must be an array of 2K+1 rows");
  std::vector<Complex> entries;
  entries.reserve(static_cast<std::size_t>(side) * side);
  for (const auto& row : entries_json) {
    if (!row.is_array() || static_cast<int>(row.size()) != side)
      throw SchemaError("c-matrix rows must have length 2K+1");
    for (const auto& v : row) entries.push_back(detail::read_complex(v, "c-matrix entries"));
  }
  return torus::CMatrix(k, std::move(entries));
}

inline nlohmann::ordered_json torus_measure_to_json(const torus::TorusMeasure& rho) {
  nlohmann::ordered_json j;
  if (rho.is_atomic()) {
    j["type"] = "atomic";
    nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
    for (const torus::TorusAtom& a : rho.atoms())
      atoms.push_back(nlohmann::ordered_json{a.angle, a.weight});
    j["atoms"] = std::move(atoms);
  } else {
    j["type"] = "grid";
    j["samples"] = rho.samples();
  }
  return j;
}

inline torus::TorusMeasure torus_measure_from_json(const nlohmann::json& j) {
  const nlohmann::json& type = detail::require_field(j, "type");
  if (!type.is_string()) throw SchemaError("'type' must be a string");
  const std::string kind = type.get<std::string>();
  if (kind == "atomic") {
    const nlohmann::json& atoms_json = detail::require_field(j, "atoms");
    if (!atoms_json.is_array() || atoms_json.empty())
      throw SchemaError("'atoms' must be a nonempty array");
    std::vector<torus::TorusAtom> atoms;
    for (const auto& a : atoms_json) {
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
        throw SchemaError("atoms must be [angle, weight] pairs");
      atoms.push_back(torus::TorusAtom{a[0].get<double>(), a[1].get<double>()});
    }
    return torus::TorusMeasure::atomic(std::move(atoms));
  }
  if (kind == "grid") {
    std::vector<double> samples =
        detail::require_real_array(detail::require_field(j, "samples"), "'samples'");
    return torus::TorusMeasure::grid(std::move(samples));
  }
  throw SchemaError("'type' must be \"atomic\" or \"grid\"");
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << j.dump(1) << "\n";
}

}  // namespace fuzzobs
