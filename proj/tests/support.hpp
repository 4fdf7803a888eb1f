#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "nilbary/barycenter.hpp"
#include "nilbary/lyndon.hpp"
#include "nilbary/shape.hpp"
#include "nilbary/signature.hpp"
#include "nilbary/tensor.hpp"

namespace nilbary::testing {

using Rng = std::mt19937_64;

inline std::vector<double> gaussian_vector(Rng& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

inline Tensor random_lie(const LyndonBasis& basis, Rng& rng, double scale = 0.7) {
  return basis.to_tensor(gaussian_vector(rng, basis.size(), scale));
}

inline Tensor random_grouplike(const LyndonBasis& basis, Rng& rng, double scale = 0.7) {
  return exp(random_lie(basis, rng, scale));
}

inline PiecewiseLinearPath random_path(int d, int rows, Rng& rng, double scale = 0.6) {
  PiecewiseLinearPath p{d, gaussian_vector(rng, static_cast<std::size_t>(d * rows), scale)};
  return p;
}

/// Weights in [lo, 1] rescaled to sum to 1; lo < 0 gives mixed signs.
inline std::vector<double> random_weights(Rng& rng, std::size_t n, double lo) {
  std::uniform_real_distribution<double> u(lo, 1.0);
  for (;;) {
    std::vector<double> w(n);
    double s = 0.0;
    for (auto& x : w) {
      x = u(rng);
      s += x;
    }
    if (s < 0.5) continue;
    for (auto& x : w) x /= s;
    return w;
  }
}

inline DiscreteMeasure random_measure(const LyndonBasis& basis, std::size_t n, Rng& rng, double weight_lo = -0.2) {
  DiscreteMeasure nu;
  for (std::size_t i = 0; i < n; ++i) nu.samples.push_back(random_grouplike(basis, rng));
  nu.weights = random_weights(rng, n, weight_lo);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) s += nu.weights[i];
  nu.weights.back() = 1.0 - s;
  return nu;
}

/// Fixed-point oracle m <- m exp(sum_i w_i log(m^-1 x_i)). In step L each
/// pass fixes one more level, so L passes are exact; extra passes only
/// polish rounding.
inline Tensor fixed_point_barycenter(const DiscreteMeasure& nu) {
  const Shape s = nu.shape();
  Tensor m = Tensor::identity(s);
  for (int it = 0; it < s.L + 3; ++it) {
    Tensor a = inv(m);
    Tensor step(s);
    for (std::size_t i = 0; i < nu.size(); ++i) step += scale(log(mul(a, nu.samples[i])), nu.weights[i]);
    m = mul(m, exp(step));
  }
  return m;
}

/// Signature of a straight segment from the iterated-integral formula: the
/// word i_1..i_k has coefficient h_{i_1} ... h_{i_k} / k!.
inline Tensor segment_signature_oracle(const std::vector<double>& h, const Shape& s) {
  Tensor x(s);
  double fact = 1.0;
  for (int k = 0; k <= s.L; ++k) {
    if (k > 0) fact *= k;
    auto lvl = x.level(k);
    for (std::size_t i = 0; i < lvl.size(); ++i) {
      Word w = index_word(s, k, i);
      double c = 1.0;
      for (Letter a : w) c *= h[a];
      lvl[i] = c / fact;
    }
  }
  return x;
}

/// Counts Lyndon words of each length <= L by testing every word against all
/// its proper rotations.
inline std::size_t brute_force_lyndon_count(int d, int L) {
  std::size_t count = 0;
  const Shape s{d, L};
  for (int k = 1; k <= L; ++k) {
    for (std::size_t i = 0; i < level_size(s, k); ++i) {
      Word w = index_word(s, k, i);
      bool ok = true;
      for (int r = 1; r < k && ok; ++r) {
        Word rot(w.begin() + r, w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + r);
        if (!(w < rot)) ok = false;
      }
      count += ok ? 1 : 0;
    }
  }
  return count;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace nilbary::testing
