#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "kcuts/certify.hpp"
#include "kcuts/embedding.hpp"
#include "kcuts/gaussian.hpp"
#include "kcuts/graph.hpp"
#include "kcuts/rounding.hpp"

namespace kcuts {

struct ManyCutsConfig {
  int k = 2;
  int trials = 0;  // 0 picks the default 8 * ceil(log2(k + 1))
  std::uint64_t seed = 1;
  double fraction = 0.5;  // return the best ceil(fraction * k) cuts
  EigsOptions eigs;
};

inline int default_trials(int k) {
  return 8 * static_cast<int>(std::ceil(std::log2(static_cast<double>(k) + 1.0)));
}

/// Per-part record of one rounding trial: the mass and smoothness of the part
/// vector h_l, the sweep guarantee 2N/D, and the swept cut's expansion.
struct PartDiagnostic {
  int part = 0;
  bool empty = true;
  int support = 0;
  double mass = 0.0;        // sum_i d_i h(i)^2
  double smoothness = 0.0;  // sum_{ij in E} w_ij |h(i)^2 - h(j)^2|
  double bound = 0.0;       // 2 * smoothness / mass
  bool has_cut = false;
  double phi = 0.0;
};

struct TrialDiagnostics {
  int trial = 0;
  std::uint64_t seed = 0;
  int candidates = 0;
  double score = 0.0;  // expansion of the target-th best candidate, inf if short
  std::vector<PartDiagnostic> parts;
};

struct CutReport {
  int k = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double fraction = 0.5;
  int target = 0;
  int chosen_trial = -1;
  double chosen_score = 0.0;
  std::vector<Cut> cuts;               // ascending expansion, pairwise disjoint
  std::vector<double> eigenvalues;     // bottom k of the normalized laplacian
  Certificate certificate;             // over the chosen trial's full family
  std::vector<TrialDiagnostics> diagnostics;
  std::vector<int> zero_vertices;
  std::string solver_mode;
  std::uint64_t solver_seed = 0;
  double solver_tol = 0.0;
};

namespace detail {

inline int thread_budget(int jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("KCUTS_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) hw = static_cast<unsigned>(v);
  }
  return static_cast<int>(std::min<unsigned long>(hw, static_cast<unsigned long>(jobs)));
}

struct TrialResult {
  TrialDiagnostics diag;
  std::vector<Cut> candidates;  // ascending (phi, part index)
};

inline TrialResult run_trial(const WeightedGraph& g, const SpectralData& sd, int trial,
                             std::uint64_t seed, int target) {
  TrialResult out;
  out.diag.trial = trial;
  out.diag.seed = seed;
  const auto gaussians = sample_gaussians(sd.k, sd.k, seed);
  const auto fam = round_embedding(sd, gaussians);

  std::vector<std::pair<double, int>> order;  // (phi, part) for sorting candidates
  std::vector<double> val(g.n(), 0.0);
  for (int l = 0; l < fam.k; ++l) {
    PartDiagnostic pd;
    pd.part = l;
    pd.support = static_cast<int>(fam.parts[l].size());
    pd.empty = fam.parts[l].empty();
    if (!pd.empty) {
      std::vector<std::pair<int, double>> squares;
      squares.reserve(fam.parts[l].size());
      for (const auto& [v, h] : fam.parts[l]) {
        val[v] = h * h;
        squares.emplace_back(v, h * h);
        pd.mass += g.degree(v) * h * h;
      }
      for (const auto& e : g.edges()) pd.smoothness += e.w * std::abs(val[e.u] - val[e.v]);
      pd.bound = pd.mass > 0.0 ? 2.0 * pd.smoothness / pd.mass : 0.0;
      try {
        Cut c = sweep_level_sets(g, std::move(squares));
        if (c.set_weight > g.total_weight() / 2.0) {
          // Prefer reporting the light side when it is still inside this
          // part's support, so the family stays disjoint.
          std::vector<char> in_supp(g.n(), 0), in_cut(g.n(), 0);
          for (const auto& [v, h] : fam.parts[l]) in_supp[v] = 1;
          for (int v : c.members) in_cut[v] = 1;
          std::vector<int> comp;
          bool inside = true;
          for (int v = 0; v < g.n() && inside; ++v) {
            if (in_cut[v]) continue;
            if (!in_supp[v]) inside = false;
            else comp.push_back(v);
          }
          if (inside && !comp.empty()) c = expansion(g, std::move(comp));
        }
        pd.has_cut = true;
        pd.phi = c.expansion;
        order.emplace_back(c.expansion, static_cast<int>(out.candidates.size()));
        out.candidates.push_back(std::move(c));
      } catch (const std::domain_error&) {
        // A part whose support is all of V has no proper level set; it simply
        // contributes no candidate.
      }
      for (const auto& [v, h] : fam.parts[l]) val[v] = 0.0;
    }
    out.diag.parts.push_back(pd);
  }

  std::sort(order.begin(), order.end());
  std::vector<Cut> sorted;
  sorted.reserve(order.size());
  for (const auto& [phi, idx] : order) sorted.push_back(std::move(out.candidates[idx]));
  out.candidates = std::move(sorted);

  out.diag.candidates = static_cast<int>(out.candidates.size());
  out.diag.score = out.diag.candidates >= target
                       ? out.candidates[target - 1].expansion
                       : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace detail

/// Finds up to ceil(fraction * k) pairwise disjoint low-expansion sets by
/// rounding the bottom-k spectral embedding with random gaussian directions.
/// Each trial sweeps the k argmax parts; the trial whose target-th best cut is
/// sparsest wins. Deterministic for a fixed (graph, config).
inline CutReport many_sparse_cuts(const WeightedGraph& g, const ManyCutsConfig& cfg) {
  if (cfg.k < 1 || cfg.k > g.n())
    throw std::invalid_argument("many_sparse_cuts: need 1 <= k <= n");
  if (!(cfg.fraction > 0.0) || cfg.fraction > 1.0)
    throw std::invalid_argument("many_sparse_cuts: fraction must be in (0, 1]");
  if (cfg.trials < 0) throw std::invalid_argument("many_sparse_cuts: trials must be >= 0");

  CutReport rep;
  rep.k = cfg.k;
  rep.seed = cfg.seed;
  rep.fraction = cfg.fraction;
  rep.trials = cfg.trials > 0 ? cfg.trials : default_trials(cfg.k);
  rep.target = static_cast<int>(std::ceil(cfg.fraction * cfg.k));

  EigsOptions opt = cfg.eigs;
  opt.k = cfg.k;
  const SpectralData sd = spectral_embedding(g, opt);
  rep.eigenvalues = sd.eigenvalues;
  rep.zero_vertices = sd.zero_rows;
  rep.solver_mode = sd.solver_mode;
  rep.solver_seed = sd.solver_seed;
  rep.solver_tol = sd.solver_tol;

  std::vector<detail::TrialResult> results(rep.trials);
  const int workers = detail::thread_budget(rep.trials);
  if (workers <= 1) {
    for (int t = 0; t < rep.trials; ++t)
      results[t] = detail::run_trial(g, sd, t, trial_seed(cfg.seed, t), rep.target);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int t = w; t < rep.trials; t += workers)
          results[t] = detail::run_trial(g, sd, t, trial_seed(cfg.seed, t), rep.target);
      });
    }
    for (auto& th : pool) th.join();
  }

  int best = 0;
  for (int t = 1; t < rep.trials; ++t)
    if (results[t].diag.score < results[best].diag.score) best = t;
  rep.chosen_trial = best;
  rep.chosen_score = results[best].diag.score;

  const auto& family = results[best].candidates;
  const int take = std::min<int>(rep.target, static_cast<int>(family.size()));
  rep.cuts.assign(family.begin(), family.begin() + take);

  if (!family.empty()) {
    const int m = static_cast<int>(family.size());  // m <= k, one cut per part
    rep.certificate = verify_lower_bound(g, family, sd.eigenvalues[m - 1]);
  }

  for (auto& r : results) rep.diagnostics.push_back(std::move(r.diag));
  return rep;
}

/// Lightest cut of a report. Disjointness caps it at the average w(V)/m over
/// the m returned sets, hence at 2*w(V)/(fraction*k) whenever the report is
/// full; a violation means the sets overlap and is reported as a logic error.
inline Cut small_set(const CutReport& rep, const WeightedGraph& g) {
  if (rep.cuts.empty()) throw std::invalid_argument("small_set: report has no cuts");
  const Cut* best = &rep.cuts.front();
  for (const auto& c : rep.cuts)
    if (c.set_weight < best->set_weight) best = &c;
  const double avg = g.total_weight() / static_cast<double>(rep.cuts.size());
  if (best->set_weight > avg * (1.0 + 1e-12))
    throw std::logic_error("small_set: family exceeds the disjointness average");
  return *best;
}

/// Monte carlo estimates for the first rounded part f = h_1 over independent
/// gaussian draws on a fixed embedding: the mass statistic sum_i d_i f(i)^2
/// (mean and variance) and the smoothness statistic sum_{ij} w_ij |f(i)^2 -
/// f(j)^2|, each with a standard error.
struct MomentProbe {
  int k = 0;
  int samples = 0;
  double mass_mean = 0.0;
  double mass_variance = 0.0;  // unbiased
  double se_mass_mean = 0.0;
  double se_mass_variance = 0.0;
  double smoothness_mean = 0.0;
  double se_smoothness_mean = 0.0;
};

inline MomentProbe moment_probe(const WeightedGraph& g, int k, int samples,
                                std::uint64_t seed, const EigsOptions& eigs = {}) {
  if (samples < 2) throw std::invalid_argument("moment_probe: need at least 2 samples");
  EigsOptions opt = eigs;
  opt.k = k;
  const SpectralData sd = spectral_embedding(g, opt);

  std::vector<double> mass(samples, 0.0), smooth(samples, 0.0);
  const int workers = detail::thread_budget(samples);
  auto run_range = [&](int from, int step) {
    std::vector<double> val(g.n(), 0.0);
    for (int s = from; s < samples; s += step) {
      const auto gaussians = sample_gaussians(k, k, trial_seed(seed, s));
      const auto fam = round_embedding(sd, gaussians);
      for (const auto& [v, h] : fam.parts[0]) {
        val[v] = h * h;
        mass[s] += g.degree(v) * h * h;
      }
      for (const auto& e : g.edges())
        smooth[s] += e.w * std::abs(val[e.u] - val[e.v]);
      for (const auto& [v, h] : fam.parts[0]) val[v] = 0.0;
    }
  };
  if (workers <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
    for (auto& th : pool) th.join();
  }

  MomentProbe mp;
  mp.k = k;
  mp.samples = samples;
  for (double x : mass) mp.mass_mean += x;
  mp.mass_mean /= samples;
  double m2 = 0.0, m4 = 0.0;
  for (double x : mass) {
    const double d = x - mp.mass_mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  mp.mass_variance = m2 / (samples - 1);
  mp.se_mass_mean = std::sqrt(mp.mass_variance / samples);
  m2 /= samples;
  m4 /= samples;
  // Standard error of a sample variance via its fourth central moment.
  const double var_of_var =
      (m4 - (samples - 3.0) / (samples - 1.0) * m2 * m2) / samples;
  mp.se_mass_variance = std::sqrt(std::max(0.0, var_of_var));

  for (double x : smooth) mp.smoothness_mean += x;
  mp.smoothness_mean /= samples;
  double s2 = 0.0;
  for (double x : smooth) {
    const double d = x - mp.smoothness_mean;
    s2 += d * d;
  }
  mp.se_smoothness_mean = std::sqrt(s2 / (samples - 1) / samples);
  return mp;
}

}  // namespace kcuts
