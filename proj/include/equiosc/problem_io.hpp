#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "equiosc/examples.hpp"
#include "equiosc/perturb.hpp"
#include "equiosc/solvers.hpp"

namespace equiosc {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct ParsedProblem {
  Problem problem;
  SolveConfig config;
};

namespace io_detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("problem file: " + where + ": " + what);
}

inline void reject_unknown(const json& obj, const std::string& where,
                           const std::vector<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      fail(where + "/" + it.key(), "unknown field");
  }
}

inline double require_number(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail(where, "missing field '" + key + "'");
  if (!obj[key].is_number()) fail(where + "/" + key, "must be a number");
  return obj[key].get<double>();
}

inline Kernel parse_kernel(const json& spec, const std::string& where) {
  if (!spec.is_object()) fail(where, "must be an object");
  const std::string name = spec.value("name", "");
  if (name == "log_sine") {
    reject_unknown(spec, where, {"name"});
    return log_sine();
  }
  if (name == "zero") {
    reject_unknown(spec, where, {"name"});
    return zero_kernel();
  }
  if (name == "smoothed") {
    reject_unknown(spec, where, {"name", "eta", "mode", "base"});
    const double eta = require_number(spec, where, "eta");
    const std::string mode = spec.value("mode", "");
    if (mode != "upper" && mode != "lower") fail(where + "/mode", "must be 'upper' or 'lower'");
    const std::string base = spec.value("base", "log_sine");
    Kernel bk;
    if (base == "log_sine") bk = log_sine();
    else if (base == "zero") bk = zero_kernel();
    else fail(where + "/base", "unknown base kernel '" + base + "'");
    return smooth(bk, eta, mode == "upper" ? SmoothMode::kUpper : SmoothMode::kLower);
  }
  fail(where + "/name", "unknown kernel '" + name + "'");
}

inline PiecewiseField parse_field(const json& spec, const std::string& where) {
  if (!spec.is_object()) fail(where, "must be an object");
  if (spec.contains("name")) {
    const std::string name = spec["name"].get<std::string>();
    if (name == "example71") {
      reject_unknown(spec, where, {"name"});
      return example71_field();
    }
    if (name == "zero") {
      reject_unknown(spec, where, {"name"});
      return zero_field();
    }
    if (name == "tilde") {
      reject_unknown(spec, where, {"name", "alpha"});
      return tilde_field(require_number(spec, where, "alpha"));
    }
    if (name == "harmonic") {
      reject_unknown(spec, where, {"name", "lmax"});
      return harmonic_step_field(static_cast<int>(require_number(spec, where, "lmax")));
    }
    fail(where + "/name", "unknown field '" + name + "'");
  }
  reject_unknown(spec, where, {"pieces", "overrides"});
  if (!spec.contains("pieces") || !spec["pieces"].is_array()) fail(where, "missing 'pieces' array");
  std::vector<FieldPiece> pieces;
  for (std::size_t i = 0; i < spec["pieces"].size(); ++i) {
    const json& pj = spec["pieces"][i];
    const std::string pwhere = where + "/pieces/" + std::to_string(i);
    reject_unknown(pj, pwhere, {"start", "end", "kind", "value", "slope"});
    FieldPiece p;
    p.start = require_number(pj, pwhere, "start");
    p.end = require_number(pj, pwhere, "end");
    const std::string kind = pj.value("kind", "");
    if (kind == "constant") {
      p.kind = PieceKind::kConstant;
      p.value = require_number(pj, pwhere, "value");
    } else if (kind == "linear") {
      p.kind = PieceKind::kLinear;
      p.value = require_number(pj, pwhere, "value");
      p.slope = require_number(pj, pwhere, "slope");
    } else if (kind == "minus_infinity") {
      p.kind = PieceKind::kMinusInfinity;
    } else {
      fail(pwhere + "/kind", "must be 'constant', 'linear' or 'minus_infinity'");
    }
    pieces.push_back(p);
  }
  std::vector<PointOverride> overrides;
  if (spec.contains("overrides")) {
    for (std::size_t i = 0; i < spec["overrides"].size(); ++i) {
      const json& oj = spec["overrides"][i];
      const std::string owhere = where + "/overrides/" + std::to_string(i);
      reject_unknown(oj, owhere, {"at", "value"});
      overrides.push_back({TorusPoint(require_number(oj, owhere, "at")),
                           require_number(oj, owhere, "value")});
    }
  }
  try {
    return PiecewiseField(std::move(pieces), std::move(overrides));
  } catch (const std::invalid_argument& e) {
    fail(where, std::string("pieces must partition [0,1): ") + e.what());
  }
}

inline SolveConfig parse_config(const json& spec, const std::string& where) {
  SolveConfig cfg;
  if (spec.is_null()) return cfg;
  if (!spec.is_object()) fail(where, "must be an object");
  reject_unknown(spec, where,
                 {"multistart", "tol_value", "tol_node", "max_iters", "grid_resolution",
                  "eta_schedule", "seed", "tol_t"});
  if (spec.contains("multistart")) cfg.multistart = spec["multistart"].get<int>();
  if (spec.contains("tol_value")) cfg.tol_value = spec["tol_value"].get<double>();
  if (spec.contains("tol_node")) cfg.tol_node = spec["tol_node"].get<double>();
  if (spec.contains("max_iters")) cfg.max_iters = spec["max_iters"].get<int>();
  if (spec.contains("grid_resolution")) cfg.grid_resolution = spec["grid_resolution"].get<int>();
  if (spec.contains("seed")) cfg.seed = spec["seed"].get<std::uint64_t>();
  if (spec.contains("tol_t")) cfg.tol_t = spec["tol_t"].get<double>();
  if (spec.contains("eta_schedule")) {
    cfg.eta_schedule.clear();
    for (const auto& e : spec["eta_schedule"]) cfg.eta_schedule.push_back(e.get<double>());
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  return cfg;
}

}  // namespace io_detail

inline ParsedProblem parse_problem_json(const nlohmann::json& doc) {
  using io_detail::fail;
  if (!doc.is_object()) fail("/", "document must be an object");
  io_detail::reject_unknown(doc, "", {"schema_version", "kernel", "nu", "n", "field", "config"});
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer())
    fail("/schema_version", "missing or not an integer");
  if (doc["schema_version"].get<int>() != kSchemaVersion)
    fail("/schema_version", "unsupported schema version");

  if (!doc.contains("kernel")) fail("/kernel", "missing");
  Kernel kernel = io_detail::parse_kernel(doc["kernel"], "/kernel");

  if (!doc.contains("nu") || !doc["nu"].is_array() || doc["nu"].empty()) fail("/nu", "must be a nonempty array");
  std::vector<double> nu;
  for (std::size_t i = 0; i < doc["nu"].size(); ++i) {
    if (!doc["nu"][i].is_number()) fail("/nu/" + std::to_string(i), "must be a number");
    const double v = doc["nu"][i].get<double>();
    if (!(v > 0.0)) fail("/nu/" + std::to_string(i), "nu must be positive");
    nu.push_back(v);
  }
  if (doc.contains("n") && doc["n"].get<int>() != static_cast<int>(nu.size()))
    fail("/n", "must match the length of nu");

  if (!doc.contains("field")) fail("/field", "missing");
  PiecewiseField field = io_detail::parse_field(doc["field"], "/field");

  SolveConfig cfg = io_detail::parse_config(doc.contains("config") ? doc["config"] : nlohmann::json(),
                                            "/config");
  try {
    return ParsedProblem{Problem(std::move(kernel), std::move(nu), std::move(field)), cfg};
  } catch (const std::invalid_argument& e) {
    fail("/", e.what());
  }
}

inline ParsedProblem parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("problem file: cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("problem file: " + path + ": " + e.what());
  }
  return parse_problem_json(doc);
}

// ---------------------------------------------------------------------------
// Result emission. Doubles are emitted through nlohmann's shortest
// round-trip form; -inf becomes the string "-inf". Wall times are never
// written so identical inputs give byte-identical bytes.
// ---------------------------------------------------------------------------

inline nlohmann::json json_double(double v) {
  if (v == kNegInf) return nlohmann::json("-inf");
  return nlohmann::json(v);
}

inline nlohmann::json output_header(const SolveConfig& cfg) {
  nlohmann::json h;
  h["tool"] = "equiosc";
  h["version"] = kToolVersion;
  h["schema_version"] = kSchemaVersion;
  h["seed"] = cfg.seed;
  nlohmann::json c;
  c["multistart"] = cfg.multistart;
  c["tol_value"] = cfg.tol_value;
  c["tol_node"] = cfg.tol_node;
  c["max_iters"] = cfg.max_iters;
  c["grid_resolution"] = cfg.grid_resolution;
  c["eta_schedule"] = cfg.eta_schedule;
  c["tol_t"] = cfg.tol_t;
  h["config"] = c;
  return h;
}

inline nlohmann::json arc_maxima_to_json(const ArcMaxima& m) {
  nlohmann::json out;
  for (std::size_t j = 0; j < m.values.size(); ++j) {
    nlohmann::json row;
    row["j"] = j + 1;
    row["value"] = json_double(m.values[j]);
    row["maximizer"] = m.maximizers[j].value();
    row["attained"] = static_cast<bool>(m.attained[j]);
    out.push_back(row);
  }
  return out;
}

inline nlohmann::json solve_result_to_json(const SolveResult& r, const SolveConfig& cfg) {
  nlohmann::json out = output_header(cfg);
  nlohmann::json nodes;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) nodes.push_back(r.nodes[i].value());
  out["nodes"] = nodes;
  out["value"] = json_double(r.value);
  out["arc_maxima"] = arc_maxima_to_json(r.maxima);
  out["equioscillation_gap"] = json_double(r.equioscillation_gap);
  out["certificate"] = r.certificate == Certificate::kEquioscillating ? "equioscillating" : "gap_report";
  out["iterations"] = r.iterations;
  return out;
}

inline nlohmann::json oracle_to_json(const OracleResult& o, const SolveConfig& cfg) {
  nlohmann::json out = output_header(cfg);
  out["grid"] = o.grid;
  out["minimax_estimate"] = json_double(o.minimax_estimate);
  out["maximin_estimate"] = json_double(o.maximin_estimate);
  out["argmin"] = o.argmin;
  out["argmax"] = o.argmax;
  return out;
}

inline nlohmann::json report_to_json(const Report& rep, const SolveConfig& cfg) {
  nlohmann::json out = output_header(cfg);
  out["title"] = rep.title;
  out["passed"] = rep.passed();
  nlohmann::json entries;
  for (const auto& e : rep.entries) {
    nlohmann::json row;
    row["name"] = e.name;
    row["pass"] = e.pass;
    row["measured"] = json_double(e.measured);
    row["expected"] = json_double(e.expected);
    row["tol"] = e.tol;
    if (!e.note.empty()) row["note"] = e.note;
    entries.push_back(row);
  }
  out["checks"] = entries;
  out["notes"] = rep.notes;
  return out;
}

inline nlohmann::json mu_trace_to_json(const std::vector<MuSample>& trace, const SolveConfig& cfg) {
  nlohmann::json out = output_header(cfg);
  nlohmann::json rows;
  for (const auto& s : trace) {
    nlohmann::json row;
    row["a"] = s.anchor;
    row["ok"] = s.ok;
    row["mu"] = json_double(s.value);
    row["nodes"] = s.nodes;
    if (!s.error.empty()) row["error"] = s.error;
    rows.push_back(row);
  }
  out["trace"] = rows;
  return out;
}

inline nlohmann::json perturb_report_to_json(const PerturbReport& rep, int trials, const SolveConfig& cfg) {
  nlohmann::json out = output_header(cfg);
  out["trials"] = trials;
  out["containment_violations"] = rep.containment_violations;
  out["pointwise_checked"] = rep.pointwise_checked;
  out["pointwise_violations"] = rep.pointwise_violations;
  out["max_violations"] = rep.max_violations;
  out["strict_checked"] = rep.strict_checked;
  out["strict_failures"] = rep.strict_failures;
  out["passed"] = rep.passed();
  return out;
}

inline std::string arc_maxima_to_csv(const ArcMaxima& m) {
  std::ostringstream os;
  os.precision(17);
  os << "j,m_j,t_j,attained\n";
  for (std::size_t j = 0; j < m.values.size(); ++j) {
    os << (j + 1) << ",";
    if (m.values[j] == kNegInf) os << "-inf"; else os << m.values[j];
    os << "," << m.maximizers[j].value() << "," << (m.attained[j] ? 1 : 0) << "\n";
  }
  return os.str();
}

inline std::string mu_trace_to_csv(const std::vector<MuSample>& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "a,mu";
  if (!trace.empty()) {
    for (std::size_t i = 0; i < trace.front().nodes.size(); ++i) os << ",y_" << (i + 1);
  }
  os << "\n";
  for (const auto& s : trace) {
    if (!s.ok) continue;
    os << s.anchor << "," << s.value;
    for (double y : s.nodes) os << "," << y;
    os << "\n";
  }
  return os.str();
}

inline std::string sweep_to_csv(const Report& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "x,z,lambda_closed,lambda_numeric,lambda_solved\n";
  for (const auto& pt : rep.sweep) {
    os << pt.x << "," << pt.z << "," << pt.lambda_closed << "," << pt.lambda_numeric << ","
       << pt.lambda_solved << "\n";
  }
  return os.str();
}

}  // namespace equiosc
