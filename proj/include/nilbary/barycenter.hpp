#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nilbary/lyndon.hpp"
#include "nilbary/parallel.hpp"
#include "nilbary/permutation.hpp"
#include "nilbary/poly.hpp"
#include "nilbary/tensor.hpp"

namespace nilbary {

/// Weighted grouplike samples. Weights are real and must sum to 1; negative
/// weights are allowed.
struct DiscreteMeasure {
  std::vector<Tensor> samples;
  std::vector<double> weights;

  static DiscreteMeasure uniform(std::vector<Tensor> samples);

  std::size_t size() const { return samples.size(); }
  const Shape& shape() const { return samples.front().shape(); }
  bool has_negative_weights() const;

  /// Throws std::invalid_argument on an empty measure, mismatched shapes or
  /// lengths, non-grouplike samples, or |sum w - 1| > weight_tol.
  void validate(double weight_tol = 1e-12) const;
};

struct BarycenterOptions {
  Execution execution = Execution::Parallel;
  Pi1Options pi1;
};

struct BarycenterResult {
  Tensor mean;
  LieCoeffVec lyndon_coords;
  /// max |coefficient| of sum_i w_i log(m^-1 x_i)
  double residual_norm = 0.0;
  std::string algorithm;
  double seconds = 0.0;
};

/// Update polynomials compiled for the numeric recursion
/// m_j = sum_i w_i u_j(m, c^(i)).
class UpdateFamily {
 public:
  UpdateFamily(const Shape& shape, std::vector<Poly> u, std::string tag);
  /// From r_j: u_j = r_j + C_j.
  static UpdateFamily from_r(const Shape& shape, const std::vector<Poly>& r);
  /// From p_j: u_j = p_j(-M, C) + C_j.
  static UpdateFamily from_p(const Shape& shape, const std::vector<Poly>& p);

  const Shape& shape() const { return shape_; }
  const std::vector<Poly>& polys() const { return u_; }
  const std::vector<CompiledPoly>& compiled() const { return compiled_; }
  const std::string& tag() const { return tag_; }

 private:
  Shape shape_;
  std::vector<Poly> u_;
  std::vector<CompiledPoly> compiled_;
  std::string tag_;
};

/// sum_i w_i log(m^-1 x_i)
Tensor residual(const Tensor& m, const DiscreteMeasure& nu, Execution exec = Execution::Parallel);

/// exp(sum_i w_i log x_i)
Tensor naive_mean(const DiscreteMeasure& nu, Execution exec = Execution::Parallel);

/// Closed-form recursion in Lyndon coordinates.
BarycenterResult barycenter_lyndon(const DiscreteMeasure& nu, const UpdateFamily& family,
                                   const BarycenterOptions& options = {});

/// Level recursion for a = m^-1 in the ambient tensor algebra.
BarycenterResult barycenter_ambient(const DiscreteMeasure& nu, const BarycenterOptions& options = {});

/// Level recursion for b = log m^-1 through the asymmetrized BCH.
BarycenterResult barycenter_abch(const DiscreteMeasure& nu, const BarycenterOptions& options = {});

/// Level recursion for log m through the projection pi1.
BarycenterResult barycenter_pi1(const DiscreteMeasure& nu, const BarycenterOptions& options = {});

enum class Side { Left, Right };

/// Samples replaced by g x_i (left) or x_i g (right).
DiscreteMeasure translate_measure(const DiscreteMeasure& nu, const Tensor& g, Side side);

/// Mean after appending new_sample to old_samples under uniform weights,
/// obtained from the previous mean by Taylor-expanding the update
/// polynomials around it.
class OnlineUpdater {
 public:
  explicit OnlineUpdater(const UpdateFamily& family);

  Tensor update(const Tensor& prev_mean, const std::vector<Tensor>& old_samples, const Tensor& new_sample) const;

 private:
  struct CompiledTaylor {
    std::vector<std::pair<std::size_t, int>> alpha;
    double inv_alpha_factorial;
    CompiledPoly derivative;
  };
  LyndonBasis basis_;
  std::vector<CompiledPoly> u_;
  std::vector<std::vector<CompiledTaylor>> taylor_;
};

Tensor online_update(const Tensor& prev_mean, const std::vector<Tensor>& old_samples, const Tensor& new_sample,
                     const UpdateFamily& family);

/// max |a - b| / scale with scale = max(1, max_i |x_i|).
double normalized_distance(const Tensor& a, const Tensor& b, const DiscreteMeasure& nu);
double coefficient_scale(const DiscreteMeasure& nu);

}  // namespace nilbary
