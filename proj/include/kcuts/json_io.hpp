#pragma once

#include <string>

#include "json.hpp"

#include "kcuts/certify.hpp"
#include "kcuts/embedding.hpp"
#include "kcuts/experiments.hpp"
#include "kcuts/graph.hpp"
#include "kcuts/many_cuts.hpp"

namespace kcuts {

inline constexpr const char* kToolName = "kcuts";
inline constexpr const char* kToolVersion = "1.0.0";

// All output goes through ordered_json so field order, and therefore the
// serialized bytes, are fixed for a fixed input.
using json = nlohmann::ordered_json;

inline void to_json(json& j, const Cut& c) {
  j = json{{"members", c.members},
           {"cut_weight", c.cut_weight},
           {"set_weight", c.set_weight},
           {"expansion", c.expansion}};
}

inline void to_json(json& j, const Certificate& c) {
  j = json{{"family_size", c.family_size}, {"lambda", c.lambda},
           {"lower_bound", c.lower_bound}, {"max_phi", c.max_phi},
           {"slack", c.slack},             {"pass", c.pass}};
}

inline void to_json(json& j, const PartDiagnostic& p) {
  j = json{{"part", p.part},     {"empty", p.empty},
           {"support", p.support}, {"mass", p.mass},
           {"smoothness", p.smoothness}, {"bound", p.bound},
           {"has_cut", p.has_cut}, {"phi", p.phi}};
}

inline void to_json(json& j, const TrialDiagnostics& t) {
  j = json{{"trial", t.trial},
           {"seed", t.seed},
           {"candidates", t.candidates},
           {"score", t.score},
           {"parts", t.parts}};
}

inline void to_json(json& j, const CutReport& r) {
  j = json{{"k", r.k},
           {"trials", r.trials},
           {"seed", r.seed},
           {"fraction", r.fraction},
           {"target", r.target},
           {"chosen_trial", r.chosen_trial},
           {"chosen_score", r.chosen_score},
           {"eigenvalues", r.eigenvalues},
           {"cuts", r.cuts},
           {"certificate", r.certificate},
           {"zero_vertices", r.zero_vertices},
           {"solver", json{{"mode", r.solver_mode}, {"seed", r.solver_seed}, {"tol", r.solver_tol}}},
           {"diagnostics", r.diagnostics}};
}

inline void to_json(json& j, const SpectralData& sd) {
  double worst = 0.0;
  for (double r : sd.residuals) worst = std::max(worst, r);
  j = json{{"k", sd.k},
           {"eigenvalues", sd.eigenvalues},
           {"residuals", sd.residuals},
           {"residual_max", worst},
           {"zero_vertices", sd.zero_rows},
           {"solver", json{{"mode", sd.solver_mode}, {"seed", sd.solver_seed}, {"tol", sd.solver_tol}}}};
}

inline void to_json(json& j, const MomentProbe& m) {
  j = json{{"k", m.k},
           {"samples", m.samples},
           {"mass_mean", m.mass_mean},
           {"mass_variance", m.mass_variance},
           {"se_mass_mean", m.se_mass_mean},
           {"se_mass_variance", m.se_mass_variance},
           {"smoothness_mean", m.smoothness_mean},
           {"se_smoothness_mean", m.se_smoothness_mean}};
}

inline void to_json(json& j, const ExperimentReport& r) {
  json params = json::object();
  for (const auto& [name, value] : r.params) params[name] = value;
  json metrics = json::object();
  for (const auto& [name, value] : r.metrics) metrics[name] = value;
  json families = json::object();
  for (const auto& [name, cuts] : r.families) families[name] = cuts;
  j = json{{"experiment", r.experiment},
           {"params", params},
           {"metrics", metrics},
           {"notes", r.notes},
           {"eigenvalues", r.eigenvalues},
           {"families", families},
           {"algorithm", r.has_algorithm ? json(r.algorithm) : json(nullptr)}};
}

/// Common outer envelope for every command's JSON output. config must hold
/// the full effective configuration, seeds included, so a run can be repeated
/// from its own output.
inline json envelope(const std::string& command, json config) {
  return json{{"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
              {"command", command},
              {"config", std::move(config)}};
}

}  // namespace kcuts
