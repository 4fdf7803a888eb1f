#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nilbary/parallel.hpp"
#include "nilbary/rational.hpp"
#include "nilbary/tensor.hpp"

namespace nilbary {

/// T observation rows of a d-dimensional path, stored row-major.
struct PiecewiseLinearPath {
  int d = 0;
  std::vector<double> points;

  std::size_t rows() const { return d == 0 ? 0 : points.size() / static_cast<std::size_t>(d); }
  std::span<const double> row(std::size_t t) const {
    return {points.data() + t * static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
  }
  /// Throws std::invalid_argument for zero rows, ragged data or non-finite entries.
  void validate() const;
};

/// Comma separated, one row per line. A first line that does not parse as
/// numbers is treated as a header. Blank lines are skipped.
PiecewiseLinearPath read_path_csv(std::istream& in);
PiecewiseLinearPath read_path_csv_file(const std::string& path);

/// Symmetric positive-definite d x d matrix, row-major.
class CovarianceMatrix {
 public:
  CovarianceMatrix(int d, std::vector<double> values);
  static CovarianceMatrix identity(int d);

  int d() const { return d_; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i * d_ + j)]; }
  const std::vector<double>& values() const { return values_; }
  /// Lower-triangular L with L L^T = sigma, row-major.
  const std::vector<double>& cholesky() const { return chol_; }

 private:
  int d_;
  std::vector<double> values_;
  std::vector<double> chol_;
};

/// Throws std::invalid_argument unless sigma is exactly symmetric with all
/// leading principal minors positive.
void validate_spd_exact(int d, const std::vector<Rational>& sigma);

Tensor sig_segment(std::span<const double> increment, const Shape& shape);

/// In place x <- x * exp(h) for a level-1 increment h.
void mul_segment(Tensor& x, std::span<const double> increment);

Tensor sig_pwl(const PiecewiseLinearPath& path, const Shape& shape);

/// exp of sigma / 2 placed at level 2.
Tensor expected_sig_bm(const CovarianceMatrix& sigma, const Shape& shape);
RationalTensor expected_sig_bm_exact(const std::vector<Rational>& sigma, const Shape& shape);

/// Signature of the piecewise-linear interpolation of Brownian motion with
/// covariance sigma on [0, 1] sampled at n_steps + 1 equispaced times.
/// The Gaussian stream is mt19937_64 seeded with seed_seq{seed, index}.
Tensor sample_bm_signature(const CovarianceMatrix& sigma, int n_steps, std::uint64_t seed, const Shape& shape,
                           std::uint64_t index = 0);

/// Samples index 0..count-1 of the stream above.
std::vector<Tensor> sample_bm_signatures(const CovarianceMatrix& sigma, int n_steps, std::uint64_t seed,
                                         std::size_t count, const Shape& shape,
                                         Execution exec = Execution::Parallel);

}  // namespace nilbary
