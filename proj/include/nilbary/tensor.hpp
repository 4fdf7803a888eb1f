#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "nilbary/rational.hpp"
#include "nilbary/shape.hpp"

namespace nilbary {

inline constexpr int kMaxLevel = 24;

/// Restricts the top level of a product to a subset of word positions.
/// Levels below L are always computed in full, so every masked top entry is
/// exact. The symbolic code only ever reads Lyndon positions at level L.
struct TopMask {
  std::vector<std::size_t> indices;
};

/// Dense element of T_{<=L}(R^d) with coefficients in T (double, Rational or
/// a polynomial ring). Level k occupies [level_offset(k), level_offset(k+1)).
template <class T>
class TruncatedTensor {
 public:
  using value_type = T;
  using Traits = ScalarTraits<T>;

  TruncatedTensor() = default;

  explicit TruncatedTensor(const Shape& shape) : shape_(shape) {
    validate(shape);
    if (shape.L > kMaxLevel) throw std::invalid_argument("truncation level above " + std::to_string(kMaxLevel));
    fill_offsets();
    coeffs_.assign(offsets_[static_cast<std::size_t>(shape.L) + 1], Traits::zero());
  }

  TruncatedTensor(const Shape& shape, std::vector<T> coeffs) : TruncatedTensor(shape) {
    if (coeffs.size() != coeffs_.size()) {
      throw std::invalid_argument("coefficient array has length " + std::to_string(coeffs.size()) +
                                  ", expected " + std::to_string(coeffs_.size()));
    }
    coeffs_ = std::move(coeffs);
  }

  static TruncatedTensor identity(const Shape& shape) {
    TruncatedTensor e(shape);
    e.coeffs_[0] = Traits::one();
    return e;
  }

  const Shape& shape() const { return shape_; }
  int d() const { return shape_.d; }
  int L() const { return shape_.L; }
  std::size_t size() const { return coeffs_.size(); }

  std::size_t offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }
  std::size_t level_size(int k) const { return offset(k + 1) - offset(k); }

  std::span<T> level(int k) { return {coeffs_.data() + offset(k), level_size(k)}; }
  std::span<const T> level(int k) const { return {coeffs_.data() + offset(k), level_size(k)}; }

  T& operator[](std::size_t i) { return coeffs_[i]; }
  const T& operator[](std::size_t i) const { return coeffs_[i]; }

  T& at(std::span<const Letter> word) {
    return coeffs_[offset(static_cast<int>(word.size())) + word_index(shape_, word)];
  }
  const T& at(std::span<const Letter> word) const {
    return coeffs_[offset(static_cast<int>(word.size())) + word_index(shape_, word)];
  }

  std::vector<T>& coeffs() { return coeffs_; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  friend bool operator==(const TruncatedTensor& a, const TruncatedTensor& b) {
    return a.shape_ == b.shape_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void fill_offsets() {
    std::size_t off = 0;
    std::size_t block = 1;
    for (int k = 0; k <= shape_.L + 1; ++k) {
      offsets_[static_cast<std::size_t>(k)] = off;
      off += block;
      block *= static_cast<std::size_t>(shape_.d);
    }
  }

  Shape shape_{};
  std::array<std::size_t, kMaxLevel + 2> offsets_{};
  std::vector<T> coeffs_;
};

using Tensor = TruncatedTensor<double>;
using RationalTensor = TruncatedTensor<Rational>;

namespace detail {

template <class T>
void require_same_shape(const TruncatedTensor<T>& a, const TruncatedTensor<T>& b, const char* op) {
  if (!(a.shape() == b.shape())) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch " + to_string(a.shape()) + " vs " +
                                to_string(b.shape()));
  }
}

inline bool constant_is_one(double c) { return std::abs(c - 1.0) <= 1e-12; }
inline bool constant_is_zero(double c) { return std::abs(c) <= 1e-12; }
template <class T>
bool constant_is_one(const T& c) {
  return c == ScalarTraits<T>::one();
}
template <class T>
bool constant_is_zero(const T& c) {
  return ScalarTraits<T>::is_zero(c);
}

template <class T>
void add_product(T& acc, const T& a, const T& b) {
  if constexpr (requires { ScalarTraits<T>::add_product(acc, a, b); }) {
    ScalarTraits<T>::add_product(acc, a, b);
  } else {
    acc += a * b;
  }
}

}  // namespace detail

template <class T>
TruncatedTensor<T>& operator+=(TruncatedTensor<T>& a, const TruncatedTensor<T>& b) {
  detail::require_same_shape(a, b, "add");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class T>
TruncatedTensor<T> operator+(TruncatedTensor<T> a, const TruncatedTensor<T>& b) {
  detail::require_same_shape(a, b, "add");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class T>
TruncatedTensor<T> operator-(TruncatedTensor<T> a, const TruncatedTensor<T>& b) {
  detail::require_same_shape(a, b, "sub");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class T>
TruncatedTensor<T> operator-(TruncatedTensor<T> a) {
  for (auto& c : a.coeffs()) c = -c;
  return a;
}

template <class T>
TruncatedTensor<T> scale(TruncatedTensor<T> a, const Rational& q) {
  for (auto& c : a.coeffs()) ScalarTraits<T>::scale(c, q);
  return a;
}

inline Tensor scale(Tensor a, double s) {
  for (auto& c : a.coeffs()) c *= s;
  return a;
}

/// Level-K block of a*b is sum_l a_l (x) b_{K-l}; anything above L is dropped.
template <class T>
TruncatedTensor<T> mul(const TruncatedTensor<T>& a, const TruncatedTensor<T>& b, const TopMask* mask = nullptr) {
  detail::require_same_shape(a, b, "mul");
  using Traits = ScalarTraits<T>;
  const int L = a.L();
  TruncatedTensor<T> out(a.shape());
  for (int K = 0; K <= L; ++K) {
    std::span<T> dst = out.level(K);
    if (K == L && mask != nullptr) {
      for (std::size_t idx : mask->indices) {
        for (int l = 0; l <= K; ++l) {
          std::size_t right = b.level_size(K - l);
          const T& x = a.level(l)[idx / right];
          if (Traits::is_zero(x)) continue;
          const T& y = b.level(K - l)[idx % right];
          if (Traits::is_zero(y)) continue;
          detail::add_product(dst[idx], x, y);
        }
      }
      continue;
    }
    for (int l = 0; l <= K; ++l) {
      std::span<const T> left = a.level(l);
      std::span<const T> right = b.level(K - l);
      const std::size_t rs = right.size();
      for (std::size_t i = 0; i < left.size(); ++i) {
        const T& x = left[i];
        if (Traits::is_zero(x)) continue;
        T* row = dst.data() + i * rs;
        for (std::size_t j = 0; j < rs; ++j) {
          if (Traits::is_zero(right[j])) continue;
          detail::add_product(row[j], x, right[j]);
        }
      }
    }
  }
  return out;
}

template <class T>
TruncatedTensor<T> bracket(const TruncatedTensor<T>& x, const TruncatedTensor<T>& y, const TopMask* mask = nullptr) {
  detail::require_same_shape(x, y, "bracket");
  return mul(x, y, mask) - mul(y, x, mask);
}

template <class T>
TruncatedTensor<T> exp_unchecked(const TruncatedTensor<T>& x, const TopMask* mask = nullptr) {
  TruncatedTensor<T> result = TruncatedTensor<T>::identity(x.shape());
  TruncatedTensor<T> power = result;
  for (int k = 1; k <= x.L(); ++k) {
    power = scale(mul(power, x, mask), Rational(1, k));
    result = result + power;
  }
  return result;
}

template <class T>
TruncatedTensor<T> log_unchecked(const TruncatedTensor<T>& g, const TopMask* mask = nullptr) {
  TruncatedTensor<T> h = g;
  h[0] = ScalarTraits<T>::zero();
  TruncatedTensor<T> result = h;
  TruncatedTensor<T> power = h;
  for (int k = 2; k <= g.L(); ++k) {
    power = mul(power, h, mask);
    result = result + scale(power, Rational(k % 2 == 0 ? -1 : 1, k));
  }
  return result;
}

template <class T>
TruncatedTensor<T> exp(const TruncatedTensor<T>& x, const TopMask* mask = nullptr) {
  if (!detail::constant_is_zero(x[0])) throw std::domain_error("exp: argument must have zero constant term");
  return exp_unchecked(x, mask);
}

template <class T>
TruncatedTensor<T> log(const TruncatedTensor<T>& g, const TopMask* mask = nullptr) {
  if (!detail::constant_is_one(g[0])) throw std::domain_error("log: argument must have constant term 1");
  return log_unchecked(g, mask);
}

template <class T>
TruncatedTensor<T> inv(const TruncatedTensor<T>& g) {
  if (!detail::constant_is_one(g[0])) throw std::domain_error("inv: argument must have constant term 1");
  TruncatedTensor<T> h = g;
  h[0] = ScalarTraits<T>::zero();
  TruncatedTensor<T> result = TruncatedTensor<T>::identity(g.shape());
  TruncatedTensor<T> power = result;
  for (int k = 1; k <= g.L(); ++k) {
    power = -mul(power, h);
    result = result + power;
  }
  return result;
}

/// sum_k coeffs[k] t^k, read as sum_k coeffs[k] ad_X^k.
struct AdPowerSeries {
  std::vector<Rational> coeffs;

  static AdPowerSeries identity(int n);
  /// (1 - e^{-t}) / t
  static AdPowerSeries f_series(int n);
  /// t / (1 - e^{-t}), computed as the reciprocal of f_series.
  static AdPowerSeries g_series(int n);
};

/// Product of two power series truncated to n coefficients.
AdPowerSeries series_product(const AdPowerSeries& a, const AdPowerSeries& b, int n);
AdPowerSeries series_reciprocal(const AdPowerSeries& a, int n);

/// sum_k s_k ad_x^k(y); terms with k >= L vanish for Lie x, y.
template <class T>
TruncatedTensor<T> apply_ad_series(const AdPowerSeries& s, const TruncatedTensor<T>& x, const TruncatedTensor<T>& y,
                                   const TopMask* mask = nullptr) {
  detail::require_same_shape(x, y, "apply_ad_series");
  TruncatedTensor<T> result(x.shape());
  TruncatedTensor<T> term = y;
  const int n = std::min<int>(static_cast<int>(s.coeffs.size()), x.L());
  for (int k = 0; k < n; ++k) {
    if (k > 0) term = bracket(x, term, mask);
    if (sgn(s.coeffs[static_cast<std::size_t>(k)]) != 0) result = result + scale(term, s.coeffs[static_cast<std::size_t>(k)]);
  }
  return result;
}

/// Copy of the levels 0..L' of a into shape (d, L').
template <class T>
TruncatedTensor<T> truncate(const TruncatedTensor<T>& a, int L) {
  if (L > a.L()) throw std::invalid_argument("truncate: target level above source level");
  TruncatedTensor<T> out(Shape{a.d(), L});
  std::copy(a.coeffs().begin(), a.coeffs().begin() + static_cast<std::ptrdiff_t>(out.size()), out.coeffs().begin());
  return out;
}

/// Largest |coefficient|.
double max_abs(const Tensor& a);

/// Element with only level-1 entries set.
Tensor from_level1(const Shape& shape, std::span<const double> values);

template <class To, class From>
TruncatedTensor<To> convert(const TruncatedTensor<From>& a) {
  TruncatedTensor<To> out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (std::is_same_v<To, double> && std::is_same_v<From, Rational>) {
      out[i] = a[i].get_d();
    } else {
      out[i] = To(a[i]);
    }
  }
  return out;
}

}  // namespace nilbary
