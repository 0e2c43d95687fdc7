#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "kcuts/graph.hpp"

namespace kcuts {

/// Dense normalized Laplacian I - D^{-1/2} A D^{-1/2}. Symmetric, PSD,
/// spectrum inside [0, 2]; the number of zero eigenvalues equals the number
/// of connected components.
inline Eigen::MatrixXd normalized_laplacian(const WeightedGraph& g) {
  const int n = g.n();
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> isd(n);
  for (int i = 0; i < n; ++i) isd[i] = 1.0 / std::sqrt(g.degree(i));
  for (const auto& e : g.edges()) {
    const double off = e.w * isd[e.u] * isd[e.v];
    L(e.u, e.v) -= off;
    L(e.v, e.u) -= off;
  }
  return L;
}

/// Matrix-free y = L x with a fixed edge iteration order (bitwise deterministic).
class LaplacianOp {
 public:
  explicit LaplacianOp(const WeightedGraph& g) : g_(&g), isd_(g.n()) {
    for (int i = 0; i < g.n(); ++i) isd_[i] = 1.0 / std::sqrt(g.degree(i));
  }
  int n() const { return g_->n(); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = x;
    for (const auto& e : g_->edges()) {
      const double off = e.w * isd_[e.u] * isd_[e.v];
      y[e.u] -= off * x[e.v];
      y[e.v] -= off * x[e.u];
    }
    return y;
  }

 private:
  const WeightedGraph* g_;
  std::vector<double> isd_;
};

enum class EigsMode { automatic, dense, lanczos };

struct EigsOptions {
  int k = 1;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  EigsMode mode = EigsMode::automatic;
  int dense_cutoff = 2048;  // automatic mode switches to Lanczos above this
  int max_rounds = 64;
};

struct EigsResult {
  std::vector<double> values;   // ascending
  Eigen::MatrixXd vectors;      // n x k, orthonormal columns
  std::vector<double> residuals;
  std::string mode;             // "dense" or "lanczos"
  std::uint64_t seed = 0;
  double tol = 0.0;
};

/// Raised when the iterative path fails to reach the residual tolerance.
class EigsError : public std::runtime_error {
 public:
  EigsError(const std::string& msg, double worst)
      : std::runtime_error(msg + " (worst residual " + std::to_string(worst) + ")"),
        worst_residual(worst) {}
  double worst_residual;
};

namespace detail {

inline std::vector<double> explicit_residuals(const LaplacianOp& op, const Eigen::MatrixXd& V,
                                              const std::vector<double>& vals) {
  std::vector<double> res(vals.size());
  for (std::size_t t = 0; t < vals.size(); ++t)
    res[t] = (op.apply(V.col(t)) - vals[t] * V.col(t)).norm();
  return res;
}

inline void check_orthonormal(const Eigen::MatrixXd& V, double tol) {
  Eigen::MatrixXd G = V.transpose() * V;
  G.diagonal().array() -= 1.0;
  if (G.cwiseAbs().maxCoeff() > tol)
    throw EigsError("eigenvector block lost orthonormality", G.cwiseAbs().maxCoeff());
}

// Lanczos with full reorthogonalization against both the Krylov block and the
// locked set; locked pairs are deflated out of the operator and the iteration
// restarts with a fresh seeded start vector. A single Krylov run sees one
// vector per eigenspace, so repeated eigenvalues surface one copy per round;
// the loop therefore only stops once some round certifies that the deflated
// complement holds nothing below the k-th smallest locked value (up to a
// cluster slack that admits exact ties).
inline EigsResult lanczos_bottom_k(const WeightedGraph& g, const EigsOptions& opt) {
  const LaplacianOp op(g);
  const int n = g.n();
  const int k = opt.k;
  const int max_locked = std::min(n, k + 64);
  std::mt19937_64 rng(opt.seed);
  auto rand_unit = [&](const Eigen::MatrixXd& locked, int nlocked) {
    Eigen::VectorXd v(n);
    for (int rep = 0; rep < 64; ++rep) {
      for (int i = 0; i < n; ++i)
        v[i] = 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
      if (nlocked > 0)
        v -= locked.leftCols(nlocked) * (locked.leftCols(nlocked).transpose() * v);
      const double nv = v.norm();
      if (nv > 1e-8) return Eigen::VectorXd(v / nv);
    }
    throw EigsError("could not draw a start vector outside the locked span", 1.0);
  };

  Eigen::MatrixXd locked(n, std::min(max_locked, k + 8));
  std::vector<double> locked_vals;
  int nlocked = 0;
  double best_bottom_res = std::numeric_limits<double>::infinity();
  const double cluster_slack = std::max(32.0 * opt.tol, 1e-9);
  bool done = false;

  for (int round = 0; round < opt.max_rounds && !done; ++round) {
    const int dim_left = n - nlocked;
    if (dim_left <= 0) {
      done = nlocked >= k;  // nothing left to certify against
      break;
    }
    const int m = std::min(dim_left, std::max(2 * (k - std::min(nlocked, k)) + 24,
                                              48 + 16 * round));
    Eigen::MatrixXd V(n, m + 1);
    Eigen::VectorXd alpha(m), beta(m);
    V.col(0) = rand_unit(locked, nlocked);
    int built = 0;
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd w = op.apply(V.col(j));
      if (nlocked > 0)
        w -= locked.leftCols(nlocked) * (locked.leftCols(nlocked).transpose() * w);
      alpha[j] = V.col(j).dot(w);
      w -= alpha[j] * V.col(j);
      if (j > 0) w -= beta[j - 1] * V.col(j - 1);
      for (int pass = 0; pass < 2; ++pass) {
        w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
        if (nlocked > 0)
          w -= locked.leftCols(nlocked) * (locked.leftCols(nlocked).transpose() * w);
      }
      beta[j] = w.norm();
      built = j + 1;
      if (beta[j] < 1e-13) break;  // Krylov space exhausted
      V.col(j + 1) = w / beta[j];
    }

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(built, built);
    for (int j = 0; j < built; ++j) {
      T(j, j) = alpha[j];
      if (j + 1 < built) T(j, j + 1) = T(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(T);
    const bool exhausted = built < m || built == dim_left;

    // Lock converged Ritz pairs from the bottom up, remembering the smallest
    // genuinely new direction this round surfaced: it witnesses the minimum of
    // the complement as it stood when the round started.
    double bottom_theta = 0.0;
    bool bottom_converged = false, bottom_seen = false;
    for (int i = 0; i < built; ++i) {
      Eigen::VectorXd y = V.leftCols(built) * tes.eigenvectors().col(i);
      if (nlocked > 0)
        y -= locked.leftCols(nlocked) * (locked.leftCols(nlocked).transpose() * y);
      const double ny = y.norm();
      if (ny < 0.5) continue;  // collapsed onto the locked span
      y /= ny;
      const double theta = y.dot(op.apply(y));
      const double res = (op.apply(y) - theta * y).norm();
      if (!bottom_seen) {
        bottom_seen = true;
        bottom_theta = theta;
        bottom_converged = res <= opt.tol;
        best_bottom_res = std::min(best_bottom_res, res);
      }
      if (res <= opt.tol && nlocked < max_locked) {
        if (nlocked == locked.cols())
          locked.conservativeResize(Eigen::NoChange,
                                    std::min(max_locked, 2 * nlocked));
        locked.col(nlocked) = y;
        locked_vals.push_back(theta);
        ++nlocked;
      } else if (res > opt.tol && !exhausted) {
        break;  // keep locking strictly bottom-up unless the space is exhausted
      }
    }

    if (nlocked >= k && bottom_seen && bottom_converged) {
      std::vector<double> vals = locked_vals;
      std::nth_element(vals.begin(), vals.begin() + (k - 1), vals.end());
      // Everything locked this round came out of that same complement, so the
      // complement that remains cannot dip below bottom_theta either.
      if (bottom_theta >= vals[k - 1] - cluster_slack) done = true;
    }
  }

  if (nlocked < k)
    throw EigsError("Lanczos failed to converge " + std::to_string(k) + " eigenpairs",
                    best_bottom_res);
  if (!done)
    throw EigsError("Lanczos could not certify the bottom of the spectrum",
                    best_bottom_res);

  std::vector<int> order(nlocked);
  for (int i = 0; i < nlocked; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return locked_vals[a] < locked_vals[b]; });

  EigsResult out;
  out.vectors.resize(n, k);
  for (int t = 0; t < k; ++t) {
    out.values.push_back(locked_vals[order[t]]);
    out.vectors.col(t) = locked.col(order[t]);
  }
  out.mode = "lanczos";
  return out;
}

}  // namespace detail

/// Bottom k eigenpairs of the normalized Laplacian. Dense symmetric solve up
/// to the cutoff, seeded Lanczos above it. Returned vectors are orthonormal
/// and every pair satisfies ||L v - lambda v|| <= tol.
inline EigsResult bottom_k_eigs(const WeightedGraph& g, const EigsOptions& opt) {
  if (opt.k < 1 || opt.k > g.n())
    throw std::invalid_argument("bottom_k_eigs: need 1 <= k <= n");
  if (!(opt.tol > 0.0)) throw std::invalid_argument("bottom_k_eigs: tol must be positive");

  const bool dense = opt.mode == EigsMode::dense ||
                     (opt.mode == EigsMode::automatic && g.n() <= opt.dense_cutoff);
  EigsResult out;
  if (dense) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized_laplacian(g));
    if (es.info() != Eigen::Success)
      throw EigsError("dense eigensolver did not converge", std::numeric_limits<double>::quiet_NaN());
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + opt.k);
    out.vectors = es.eigenvectors().leftCols(opt.k);
    out.mode = "dense";
  } else {
    out = detail::lanczos_bottom_k(g, opt);
  }
  out.seed = opt.seed;
  out.tol = opt.tol;
  const LaplacianOp op(g);
  out.residuals = detail::explicit_residuals(op, out.vectors, out.values);
  double worst = 0.0;
  for (double r : out.residuals) worst = std::max(worst, r);
  if (worst > opt.tol)
    throw EigsError("eigenpair residual above tolerance", worst);
  detail::check_orthonormal(out.vectors, 1e-8);
  return out;
}

}  // namespace kcuts
