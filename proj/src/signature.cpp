#include "nilbary/signature.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nilbary {

void PiecewiseLinearPath::validate() const {
  if (d < 1) throw std::invalid_argument("path dimension must be >= 1");
  if (points.empty()) throw std::invalid_argument("path has no points");
  if (points.size() % static_cast<std::size_t>(d) != 0) throw std::invalid_argument("ragged path data");
  for (double v : points) {
    if (!std::isfinite(v)) throw std::invalid_argument("path has a non-finite entry");
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    if (cell.empty()) return false;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) return false;
    out.push_back(v);
  }
  return !out.empty();
}

}  // namespace

PiecewiseLinearPath read_path_csv(std::istream& in) {
  PiecewiseLinearPath path;
  std::string line;
  std::vector<double> row;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (!parse_row(line, row)) {
      if (first) {
        first = false;
        continue;
      }
      throw std::invalid_argument("csv line " + std::to_string(lineno) + ": not a row of numbers");
    }
    first = false;
    if (path.d == 0) path.d = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != path.d) {
      throw std::invalid_argument("csv line " + std::to_string(lineno) + ": expected " + std::to_string(path.d) +
                                  " columns, got " + std::to_string(row.size()));
    }
    path.points.insert(path.points.end(), row.begin(), row.end());
  }
  if (path.points.empty()) throw std::invalid_argument("csv has no data rows");
  path.validate();
  return path;
}

PiecewiseLinearPath read_path_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_path_csv(in);
}

CovarianceMatrix::CovarianceMatrix(int d, std::vector<double> values) : d_(d), values_(std::move(values)) {
  if (d < 1) throw std::invalid_argument("covariance dimension must be >= 1");
  const auto n = static_cast<std::size_t>(d);
  if (values_.size() != n * n) throw std::invalid_argument("covariance needs d*d entries");
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double a = (*this)(i, j);
      if (!std::isfinite(a)) throw std::invalid_argument("covariance has a non-finite entry");
      if (std::abs(a - (*this)(j, i)) > 1e-12) throw std::invalid_argument("covariance is not symmetric");
      m(i, j) = a;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("covariance is not positive definite");
  Eigen::MatrixXd l = llt.matrixL();
  chol_.resize(n * n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) chol_[static_cast<std::size_t>(i * d + j)] = l(i, j);
  }
}

CovarianceMatrix CovarianceMatrix::identity(int d) {
  std::vector<double> v(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i * d + i)] = 1.0;
  return CovarianceMatrix(d, std::move(v));
}

void validate_spd_exact(int d, const std::vector<Rational>& sigma) {
  const auto n = static_cast<std::size_t>(d);
  if (d < 1 || sigma.size() != n * n) throw std::invalid_argument("covariance needs d*d entries");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (sigma[i * n + j] != sigma[j * n + i]) throw std::invalid_argument("covariance is not symmetric");
    }
  }
  // Pivots of elimination without row swaps are ratios of consecutive
  // leading minors.
  std::vector<Rational> a = sigma;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a[k * n + k]) <= 0) throw std::invalid_argument("covariance is not positive definite");
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational f = a[i * n + k] / a[k * n + k];
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
}

Tensor sig_segment(std::span<const double> increment, const Shape& shape) {
  Tensor x = Tensor::identity(shape);
  mul_segment(x, increment);
  return x;
}

void mul_segment(Tensor& x, std::span<const double> h) {
  const int d = x.d();
  if (static_cast<int>(h.size()) != d) throw std::invalid_argument("increment has wrong dimension");
  // level K of x exp(h) is sum_j x_j (x) h^(K-j)/(K-j)!, evaluated by Horner
  // from the top down so lower levels are still the old ones.
  std::vector<double> t, next;
  for (int K = x.L(); K >= 1; --K) {
    t.assign(x.level(0).begin(), x.level(0).end());
    for (int j = 0; j < K; ++j) {
      if (j > 0) {
        auto xj = x.level(j);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] += xj[i];
      }
      const double s = 1.0 / (K - j);
      next.resize(t.size() * static_cast<std::size_t>(d));
      for (std::size_t i = 0; i < t.size(); ++i) {
        for (int a = 0; a < d; ++a) next[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(a)] = t[i] * h[static_cast<std::size_t>(a)] * s;
      }
      t.swap(next);
    }
    auto xK = x.level(K);
    for (std::size_t i = 0; i < t.size(); ++i) xK[i] += t[i];
  }
}

Tensor sig_pwl(const PiecewiseLinearPath& path, const Shape& shape) {
  path.validate();
  if (path.d != shape.d) {
    throw std::invalid_argument("path has dimension " + std::to_string(path.d) + ", shape has d=" +
                                std::to_string(shape.d));
  }
  Tensor x = Tensor::identity(shape);
  std::vector<double> inc(static_cast<std::size_t>(path.d));
  for (std::size_t t = 1; t < path.rows(); ++t) {
    auto a = path.row(t - 1);
    auto b = path.row(t);
    for (std::size_t k = 0; k < inc.size(); ++k) inc[k] = b[k] - a[k];
    mul_segment(x, inc);
  }
  return x;
}

Tensor expected_sig_bm(const CovarianceMatrix& sigma, const Shape& shape) {
  if (sigma.d() != shape.d) throw std::invalid_argument("covariance dimension does not match shape");
  Tensor x(shape);
  if (shape.L >= 2) {
    auto lvl = x.level(2);
    for (std::size_t i = 0; i < lvl.size(); ++i) lvl[i] = 0.5 * sigma.values()[i];
  }
  return exp(x);
}

RationalTensor expected_sig_bm_exact(const std::vector<Rational>& sigma, const Shape& shape) {
  validate_spd_exact(shape.d, sigma);
  RationalTensor x(shape);
  if (shape.L >= 2) {
    auto lvl = x.level(2);
    for (std::size_t i = 0; i < lvl.size(); ++i) lvl[i] = sigma[i] / 2;
  }
  return exp(x);
}

Tensor sample_bm_signature(const CovarianceMatrix& sigma, int n_steps, std::uint64_t seed, const Shape& shape,
                           std::uint64_t index) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (sigma.d() != shape.d) throw std::invalid_argument("covariance dimension does not match shape");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  const int d = shape.d;
  const double s = 1.0 / std::sqrt(static_cast<double>(n_steps));
  const auto& chol = sigma.cholesky();
  std::vector<double> z(static_cast<std::size_t>(d)), inc(static_cast<std::size_t>(d));
  Tensor x = Tensor::identity(shape);
  for (int step = 0; step < n_steps; ++step) {
    for (auto& v : z) v = normal(rng) * s;
    for (int i = 0; i < d; ++i) {
      double acc = 0.0;
      for (int j = 0; j <= i; ++j) acc += chol[static_cast<std::size_t>(i * d + j)] * z[static_cast<std::size_t>(j)];
      inc[static_cast<std::size_t>(i)] = acc;
    }
    mul_segment(x, inc);
  }
  return x;
}

std::vector<Tensor> sample_bm_signatures(const CovarianceMatrix& sigma, int n_steps, std::uint64_t seed,
                                         std::size_t count, const Shape& shape, Execution exec) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (sigma.d() != shape.d) throw std::invalid_argument("covariance dimension does not match shape");
  std::vector<Tensor> out(count);
  const long long total = static_cast<long long>(count);
  if (exec == Execution::Serial) {
    for (long long i = 0; i < total; ++i) out[static_cast<std::size_t>(i)] = sample_bm_signature(sigma, n_steps, seed, shape, static_cast<std::uint64_t>(i));
    return out;
  }
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < total; ++i) out[static_cast<std::size_t>(i)] = sample_bm_signature(sigma, n_steps, seed, shape, static_cast<std::uint64_t>(i));
  return out;
}

}  // namespace nilbary
