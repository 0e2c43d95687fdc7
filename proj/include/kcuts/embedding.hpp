#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "kcuts/graph.hpp"
#include "kcuts/spectral.hpp"

namespace kcuts {

/// Rows below this norm are treated as unembedded and excluded from rounding.
inline constexpr double kZeroRowThreshold = 1e-12;

/// Spectral embedding u_i = row i of D^{-1/2} V, where V holds the bottom k
/// unit eigenvectors of the normalized Laplacian.
///
/// Invariants (checked at construction):
///  - eigenvalues ascending within [-1e-8, 2 + 1e-8],
///  - total mass      sum_i d_i ||u_i||^2               == k   (1e-8 relative),
///  - cross mass      sum_{i,j} d_i d_j <u_i, u_j>^2    == k   (1e-6 relative),
///  - Rayleigh ratio  sum_{ij in E} w_ij ||u_i - u_j||^2 / mass <= lambda_k + 1e-8.
struct SpectralData {
  int k = 0;
  std::vector<double> eigenvalues;
  Eigen::MatrixXd embedding;  // n x k, row i is u_i
  std::vector<double> residuals;
  std::string solver_mode;
  std::uint64_t solver_seed = 0;
  double solver_tol = 0.0;
  std::vector<int> zero_rows;  // rows with ||u_i|| < kZeroRowThreshold
};

inline double embedding_mass(const WeightedGraph& g, const Eigen::MatrixXd& emb) {
  double mass = 0.0;
  for (int i = 0; i < g.n(); ++i) mass += g.degree(i) * emb.row(i).squaredNorm();
  return mass;
}

// sum_{i,j} d_i d_j <u_i,u_j>^2 computed as the squared Frobenius norm of the
// k x k Gram block (D^{1/2} U)^T (D^{1/2} U); avoids the quadratic vertex-pair sum.
inline double embedding_cross_mass(const WeightedGraph& g, const Eigen::MatrixXd& emb) {
  Eigen::MatrixXd scaled = emb;
  for (int i = 0; i < g.n(); ++i) scaled.row(i) *= std::sqrt(g.degree(i));
  return (scaled.transpose() * scaled).squaredNorm();
}

inline double embedding_edge_energy(const WeightedGraph& g, const Eigen::MatrixXd& emb) {
  double e = 0.0;
  for (const auto& ed : g.edges()) e += ed.w * (emb.row(ed.u) - emb.row(ed.v)).squaredNorm();
  return e;
}

/// edge energy / mass; bounded by lambda_k for a bottom-k embedding.
inline double embedding_rayleigh_ratio(const WeightedGraph& g, const Eigen::MatrixXd& emb) {
  return embedding_edge_energy(g, emb) / embedding_mass(g, emb);
}

inline SpectralData spectral_embedding(const WeightedGraph& g, const EigsOptions& opt) {
  EigsResult eig = bottom_k_eigs(g, opt);
  SpectralData sd;
  sd.k = opt.k;
  sd.eigenvalues = eig.values;
  sd.residuals = eig.residuals;
  sd.solver_mode = eig.mode;
  sd.solver_seed = eig.seed;
  sd.solver_tol = eig.tol;
  sd.embedding = eig.vectors;
  for (int i = 0; i < g.n(); ++i) sd.embedding.row(i) /= std::sqrt(g.degree(i));
  for (int i = 0; i < g.n(); ++i)
    if (sd.embedding.row(i).norm() < kZeroRowThreshold) sd.zero_rows.push_back(i);

  for (int t = 0; t < sd.k; ++t) {
    if (sd.eigenvalues[t] < -1e-8 || sd.eigenvalues[t] > 2.0 + 1e-8)
      throw std::logic_error("eigenvalue outside [0, 2] tolerance band");
    if (t > 0 && sd.eigenvalues[t] < sd.eigenvalues[t - 1])
      throw std::logic_error("eigenvalues not ascending");
  }
  const double k_d = double(sd.k);
  if (std::abs(embedding_mass(g, sd.embedding) - k_d) > 1e-8 * k_d)
    throw std::logic_error("embedding mass identity violated");
  if (std::abs(embedding_cross_mass(g, sd.embedding) - k_d) > 1e-6 * k_d)
    throw std::logic_error("embedding cross-mass identity violated");
  if (embedding_rayleigh_ratio(g, sd.embedding) > sd.eigenvalues.back() + 1e-8)
    throw std::logic_error("embedding Rayleigh ratio exceeds lambda_k");
  return sd;
}

}  // namespace kcuts
