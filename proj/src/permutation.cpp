#include "nilbary/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nilbary {

bool is_permutation(std::span<const int> sigma) {
  std::vector<bool> seen(sigma.size(), false);
  for (int v : sigma) {
    if (v < 0 || static_cast<std::size_t>(v) >= sigma.size() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

Permutation inverse(std::span<const int> sigma) {
  if (!is_permutation(sigma)) throw std::invalid_argument("not a permutation");
  Permutation inv(sigma.size());
  for (std::size_t k = 0; k < sigma.size(); ++k) inv[static_cast<std::size_t>(sigma[k])] = static_cast<int>(k);
  return inv;
}

int descents(std::span<const int> sigma) {
  int count = 0;
  for (std::size_t k = 0; k + 1 < sigma.size(); ++k) count += sigma[k] > sigma[k + 1] ? 1 : 0;
  return count;
}

std::vector<Permutation> all_permutations(int K) {
  Permutation sigma(static_cast<std::size_t>(K));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

Rational pi1_coefficient(int K, int desc) {
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(K - 1), static_cast<unsigned long>(desc));
  Rational c(desc % 2 == 0 ? 1 : -1);
  c /= Rational(mpz_class(K) * binom);
  return c;
}

namespace {

void check_cap(int K, const Pi1Options& options) {
  if (K > options.max_level) {
    throw std::invalid_argument("pi1 at level " + std::to_string(K) + " would enumerate " + std::to_string(K) +
                                "! permutations; raise the level cap (currently " +
                                std::to_string(options.max_level) + ") to allow it");
  }
}

/// Input offset contributed by each output digit: digit m of the output word
/// lands at input position sigma[m].
std::vector<std::size_t> digit_weights(int d, std::span<const int> sigma) {
  const int K = static_cast<int>(sigma.size());
  std::vector<std::size_t> w(sigma.size());
  for (int m = 0; m < K; ++m) w[static_cast<std::size_t>(m)] = ipow(static_cast<std::size_t>(d), K - 1 - sigma[static_cast<std::size_t>(m)]);
  return w;
}

}  // namespace

template <class T>
std::vector<T> permute(std::span<const T> block, int d, std::span<const int> sigma) {
  if (!is_permutation(sigma)) throw std::invalid_argument("permute: invalid permutation");
  const int K = static_cast<int>(sigma.size());
  const std::size_t n = ipow(static_cast<std::size_t>(d), K);
  if (block.size() != n) throw std::invalid_argument("permute: block size does not match d^K");
  std::vector<std::size_t> w = digit_weights(d, sigma);
  std::vector<T> out(n);
  std::vector<int> digits(static_cast<std::size_t>(K), 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t src = 0;
    for (int m = 0; m < K; ++m) src += static_cast<std::size_t>(digits[static_cast<std::size_t>(m)]) * w[static_cast<std::size_t>(m)];
    out[j] = block[src];
    for (int m = K - 1; m >= 0; --m) {
      if (++digits[static_cast<std::size_t>(m)] < d) break;
      digits[static_cast<std::size_t>(m)] = 0;
    }
  }
  return out;
}

template <class T>
std::vector<T> pi1_level(std::span<const T> block, int d, int K, const Pi1Options& options) {
  using Traits = ScalarTraits<T>;
  if (K == 0) return std::vector<T>(block.size(), Traits::zero());
  check_cap(K, options);
  const std::size_t n = ipow(static_cast<std::size_t>(d), K);
  if (block.size() != n) throw std::invalid_argument("pi1: block size does not match d^K");

  // Group permutations by descent count so each output entry needs one
  // multiplication per class.
  std::vector<std::vector<std::size_t>> weights;
  std::vector<int> klass;
  for (const Permutation& sigma : all_permutations(K)) {
    weights.push_back(digit_weights(d, sigma));
    klass.push_back(descents(sigma));
  }
  std::vector<T> coeff;
  for (int s = 0; s < K; ++s) coeff.push_back(Traits::from_rational(pi1_coefficient(K, s)));

  std::vector<T> out(n, Traits::zero());
  const long long total = static_cast<long long>(n);
#pragma omp parallel for schedule(static) if (total >= 512)
  for (long long jj = 0; jj < total; ++jj) {
    const std::size_t j = static_cast<std::size_t>(jj);
    std::vector<std::size_t> digits(static_cast<std::size_t>(K));
    std::size_t rest = j;
    for (int m = K - 1; m >= 0; --m) {
      digits[static_cast<std::size_t>(m)] = rest % static_cast<std::size_t>(d);
      rest /= static_cast<std::size_t>(d);
    }
    std::vector<T> by_class(static_cast<std::size_t>(K), Traits::zero());
    for (std::size_t p = 0; p < weights.size(); ++p) {
      std::size_t src = 0;
      for (int m = 0; m < K; ++m) src += digits[static_cast<std::size_t>(m)] * weights[p][static_cast<std::size_t>(m)];
      by_class[static_cast<std::size_t>(klass[p])] += block[src];
    }
    T acc = Traits::zero();
    for (int s = 0; s < K; ++s) acc += coeff[static_cast<std::size_t>(s)] * by_class[static_cast<std::size_t>(s)];
    out[j] = acc;
  }
  return out;
}

template <class T>
TruncatedTensor<T> pi1(const TruncatedTensor<T>& x, const Pi1Options& options) {
  TruncatedTensor<T> out(x.shape());
  for (int K = 1; K <= x.L(); ++K) {
    std::vector<T> level = pi1_level<T>(x.level(K), x.d(), K, options);
    std::copy(level.begin(), level.end(), out.level(K).begin());
  }
  return out;
}

template <class T>
std::vector<T> pi1_level_serial(std::span<const T> block, int d, int K, const Pi1Options& options) {
  using Traits = ScalarTraits<T>;
  std::vector<T> out(block.size(), Traits::zero());
  if (K == 0) return out;
  check_cap(K, options);
  for (const Permutation& sigma : all_permutations(K)) {
    T c = Traits::from_rational(pi1_coefficient(K, descents(sigma)));
    std::vector<T> p = permute<T>(block, d, sigma);
    for (std::size_t i = 0; i < p.size(); ++i) out[i] += c * p[i];
  }
  return out;
}

template <class T>
TruncatedTensor<T> pi1_serial(const TruncatedTensor<T>& x, const Pi1Options& options) {
  TruncatedTensor<T> out(x.shape());
  for (int K = 1; K <= x.L(); ++K) {
    std::vector<T> level = pi1_level_serial<T>(x.level(K), x.d(), K, options);
    std::copy(level.begin(), level.end(), out.level(K).begin());
  }
  return out;
}

template <class T>
std::vector<T> reverse_words(std::span<const T> block, int d, int K) {
  Permutation rev(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) rev[static_cast<std::size_t>(k)] = K - 1 - k;
  return permute<T>(block, d, rev);
}

template std::vector<double> permute<double>(std::span<const double>, int, std::span<const int>);
template std::vector<Rational> permute<Rational>(std::span<const Rational>, int, std::span<const int>);
template std::vector<double> pi1_level<double>(std::span<const double>, int, int, const Pi1Options&);
template std::vector<Rational> pi1_level<Rational>(std::span<const Rational>, int, int, const Pi1Options&);
template std::vector<double> pi1_level_serial<double>(std::span<const double>, int, int, const Pi1Options&);
template std::vector<Rational> pi1_level_serial<Rational>(std::span<const Rational>, int, int, const Pi1Options&);
template Tensor pi1<double>(const Tensor&, const Pi1Options&);
template RationalTensor pi1<Rational>(const RationalTensor&, const Pi1Options&);
template Tensor pi1_serial<double>(const Tensor&, const Pi1Options&);
template RationalTensor pi1_serial<Rational>(const RationalTensor&, const Pi1Options&);
template std::vector<double> reverse_words<double>(std::span<const double>, int, int);
template std::vector<Rational> reverse_words<Rational>(std::span<const Rational>, int, int);

}  // namespace nilbary
