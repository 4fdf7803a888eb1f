#include "nilbary/tensor.hpp"

#include <algorithm>

namespace nilbary {

AdPowerSeries AdPowerSeries::identity(int n) {
  AdPowerSeries s;
  s.coeffs.assign(static_cast<std::size_t>(std::max(n, 1)), Rational(0));
  s.coeffs[0] = 1;
  return s;
}

AdPowerSeries AdPowerSeries::f_series(int n) {
  AdPowerSeries s;
  mpz_class fact = 1;
  for (int k = 0; k < n; ++k) {
    fact *= k + 1;
    s.coeffs.emplace_back(Rational(k % 2 == 0 ? 1 : -1) / Rational(fact));
  }
  return s;
}

AdPowerSeries AdPowerSeries::g_series(int n) { return series_reciprocal(f_series(n), n); }

AdPowerSeries series_product(const AdPowerSeries& a, const AdPowerSeries& b, int n) {
  AdPowerSeries out;
  out.coeffs.assign(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t i = 0; i < a.coeffs.size() && i < out.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size() && i + j < out.coeffs.size(); ++j) {
      out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return out;
}

AdPowerSeries series_reciprocal(const AdPowerSeries& a, int n) {
  if (a.coeffs.empty() || sgn(a.coeffs[0]) == 0) throw std::domain_error("series has no reciprocal");
  AdPowerSeries out;
  out.coeffs.assign(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
    Rational acc = k == 0 ? Rational(1) : Rational(0);
    for (std::size_t i = 1; i <= k && i < a.coeffs.size(); ++i) acc -= a.coeffs[i] * out.coeffs[k - i];
    out.coeffs[k] = acc / a.coeffs[0];
  }
  return out;
}

double max_abs(const Tensor& a) {
  double m = 0.0;
  for (double c : a.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

Tensor from_level1(const Shape& shape, std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(shape.d)) {
    throw std::invalid_argument("level-1 vector has length " + std::to_string(values.size()) + ", expected d=" +
                                std::to_string(shape.d));
  }
  Tensor x(shape);
  std::copy(values.begin(), values.end(), x.level(1).begin());
  return x;
}

}  // namespace nilbary
