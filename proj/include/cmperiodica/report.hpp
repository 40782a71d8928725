#pragma once

// Reports: one JSON document per command; the text form is rendered from it.

#include <map>
#include <string>
#include <vector>

#include "cmperiodica/constructions.hpp"
#include "cmperiodica/growth.hpp"
#include "cmperiodica/io.hpp"
#include "cmperiodica/support_variety.hpp"

namespace cmperiodica {

inline constexpr const char* kVersion = "0.1.0";

inline json check_to_json(const Check& c) {
  return json{{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}};
}

inline json checks_to_json(const std::vector<Check>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(check_to_json(c));
  return a;
}

inline bool all_ok(const std::vector<Check>& cs) {
  for (const auto& c : cs)
    if (!c.ok()) return false;
  return true;
}

inline json longs(const std::vector<long>& v) { return json(v); }

template <class K>
json presentation_summary(const ModulePresentation<K>& M) {
  return json{{"generators", M.generators.degrees}, {"relations", matrix_to_json(*M.ring, M.relations)}};
}

template <class K>
json cohomology_to_json(const CohomologyReport<K>& r) {
  json a = json::array();
  for (const auto& e : r.entries) {
    json j;
    j["index"] = e.index;
    j["presentation"] = presentation_summary(e.presentation);
    j["finite_length"] = e.finite_length;
    j["length"] = e.length ? json(*e.length) : json(nullptr);
    if (!e.hilbert.empty()) j["hilbert"] = json{{"start", e.hilbert_start}, {"values", e.hilbert}};
    a.push_back(j);
  }
  return a;
}

template <class K>
json bundle_to_json(const VerificationBundle<K>& b) {
  json j;
  j["period"] = b.complex.period ? json(*b.complex.period) : json(nullptr);
  j["twist"] = b.complex.twist;
  json ranks = json::array();
  for (const auto& m : b.complex.modules) ranks.push_back(m.rank());
  j["ranks"] = ranks;
  j["beta"] = b.beta ? json(*b.beta) : json(nullptr);
  j["cohomology"] = cohomology_to_json(b.cohomology);
  j["red_alert"] = b.red_alert;
  return j;
}

inline json growth_to_json(const GrowthEstimate& g) {
  json j;
  j["complexity"] = g.complexity ? json(*g.complexity) : json("unstable");
  j["window"] = g.window;
  j["fitted_degree_even"] = g.even_degree ? json(*g.even_degree) : json(nullptr);
  j["fitted_degree_odd"] = g.odd_degree ? json(*g.odd_degree) : json(nullptr);
  if (!g.curvature_verdict.empty()) {
    j["curvature"] = json{{"verdict", g.curvature_verdict},
                          {"trailing_ratio_min", rational_string(g.ratio_lower)},
                          {"trailing_ratio_max", rational_string(g.ratio_upper)},
                          {"root_lower_bound", rational_string(g.root_lower)}};
  }
  j["diagnostics"] = g.diagnostics;
  return j;
}

/// Graded Betti table: for each i, degree -> multiplicity.
template <class K>
json betti_table(const Resolution<K>& res) {
  json a = json::array();
  for (const auto& f : res.modules) {
    std::map<int, int> cnt;
    for (int d : f.degrees) ++cnt[d];
    json row = json::object();
    for (auto [d, c] : cnt) row[std::to_string(d)] = c;
    a.push_back(row);
  }
  return a;
}

inline json variety_to_json(const VarietyReport& r) {
  json j;
  j["codim"] = r.codim;
  j["annihilator"] = r.annihilator;
  j["generator_degrees"] = r.generator_degrees;
  j["dim_affine"] = r.dim_affine;
  j["dim_projective"] = r.dim_projective;
  j["provisional"] = r.provisional;
  j["cx"] = r.cx ? growth_to_json(*r.cx) : json(nullptr);
  j["diagnostics"] = r.diagnostics;
  return j;
}

template <class K>
json slice_to_json(const SliceCertificate<K>& c) {
  json j;
  j["element"] = c.element;
  j["s"] = c.s;
  j["n0"] = c.n0;
  j["bound"] = c.bound;
  j["caveat"] = c.caveat;
  j["kernel"] = presentation_summary(c.kernel);
  j["betti_M"] = longs(c.betti_M);
  j["betti_K"] = longs(c.betti_K);
  j["cx_M"] = growth_to_json(c.cx_M);
  j["cx_K"] = growth_to_json(c.cx_K);
  j["sequence_checks"] = checks_to_json(c.sequence_report.checks);
  return j;
}

// ---------------------------------------------------------------- report document

struct Report {
  std::string command;
  json args = json::object();
  json config = json::object();
  std::vector<Check> checks;
  json results = json::object();
  std::string error;  // set when the command stopped on a precondition or input error
  std::optional<double> total_ms;

  bool ok() const { return error.empty() && all_ok(checks); }

  json to_json() const {
    json j;
    j["command"] = command;
    j["args"] = args;
    j["config"] = config;
    j["checks"] = checks_to_json(checks);
    j["results"] = results;
    if (!error.empty()) j["error"] = error;
    j["verdict"] = ok() ? "pass" : "fail";
    j["version"] = kVersion;
    if (total_ms) j["timings"] = json{{"total_ms", *total_ms}};
    return j;
  }
};

/// The JSON document without timings, as compared for determinism.
inline json without_timings(json j) {
  j.erase("timings");
  return j;
}

namespace detail {
inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline bool is_flat(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (e.is_structured()) return false;
  return true;
}

inline void render(std::ostringstream& out, const std::string& key, const json& v, int indent) {
  const std::string pad(indent, ' ');
  if (!v.is_structured() || is_flat(v)) {
    out << pad << key << ": " << (v.is_array() ? v.dump() : scalar_text(v)) << "\n";
    return;
  }
  out << pad << key << ":\n";
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) render(out, it.key(), it.value(), indent + 2);
  } else {
    int i = 0;
    for (const auto& e : v) render(out, "[" + std::to_string(i++) + "]", e, indent + 2);
  }
}
}  // namespace detail

/// Human-readable rendering of a report document.
inline std::string render_text(const json& j) {
  std::ostringstream out;
  out << "cmperiodica " << j.value("command", "") << ": " << j.value("verdict", "") << "\n";
  if (j.contains("error")) out << "error: " << j["error"].get<std::string>() << "\n";
  if (j.contains("config"))
    for (auto it = j["config"].begin(); it != j["config"].end(); ++it)
      out << "  " << it.key() << " = " << detail::scalar_text(it.value()) << "\n";
  if (j.contains("checks"))
    for (const auto& c : j["checks"]) {
      out << "  [" << c["status"].get<std::string>() << "] " << c["name"].get<std::string>();
      const std::string d = c["detail"];
      if (!d.empty()) out << ": " << d;
      out << "\n";
    }
  if (j.contains("results"))
    for (auto it = j["results"].begin(); it != j["results"].end(); ++it) detail::render(out, it.key(), it.value(), 2);
  if (j.contains("timings")) out << "  total " << j["timings"]["total_ms"].dump() << " ms\n";
  return out.str();
}

}  // namespace cmperiodica
