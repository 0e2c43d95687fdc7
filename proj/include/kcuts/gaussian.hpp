#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace kcuts {

namespace detail {

// Wichura's PPND16 rational approximations for the standard normal quantile;
// absolute error below 1e-15 across (0, 1).
inline double normal_quantile_lower(double p) {
  const double q = p - 0.5;
  double r, x;
  if (std::abs(q) <= 0.425) {
    r = 0.180625 - q * q;
    x = q *
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return x;
  }
  r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -x : x;
}

}  // namespace detail

/// Upper-tail quantile: the t with P[N(0,1) >= t] = q. Domain (0, 1);
/// q = 0.5 maps to exactly 0.
inline double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("normal_quantile: q must lie in (0, 1)");
  return -detail::normal_quantile_lower(q);
}

/// P[N(0,1) >= t], evaluated through erfc; independent of normal_quantile.
inline double normal_ccdf(double t) { return 0.5 * std::erfc(t / std::sqrt(2.0)); }

/// Deterministic N(0,1) stream: mt19937_64 bits pushed through the inverse CDF,
/// so values do not depend on the standard library's distribution internals.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}
  double operator()() {
    const double u = double(rng_() >> 11) * 0x1.0p-53 + 0x1.0p-54;  // (0, 1)
    return detail::normal_quantile_lower(u);
  }

 private:
  std::mt19937_64 rng_;
};

/// k independent N(0, I_dim) vectors, fully determined by the seed.
inline std::vector<Eigen::VectorXd> sample_gaussians(int k, int dim, std::uint64_t seed) {
  if (k < 1 || dim < 1) throw std::invalid_argument("sample_gaussians: need k >= 1, dim >= 1");
  NormalStream z(seed);
  std::vector<Eigen::VectorXd> out(k, Eigen::VectorXd(dim));
  for (auto& g : out)
    for (int i = 0; i < dim; ++i) g[i] = z();
  return out;
}

/// Stream splitter (splitmix64 finalizer): distinct, reproducible per-trial seeds.
inline std::uint64_t trial_seed(std::uint64_t master, int trial) {
  std::uint64_t z = master + (std::uint64_t(trial) + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace kcuts
