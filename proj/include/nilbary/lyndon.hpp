#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilbary/rational.hpp"
#include "nilbary/shape.hpp"
#include "nilbary/tensor.hpp"

namespace nilbary {

/// All Lyndon words of length <= L over d letters, sorted by length and then
/// lexicographically (Duval's generation).
std::vector<Word> lyndon_words(const Shape& shape);

bool is_lyndon(std::span<const Letter> word);

/// Moebius-function count of Lyndon words of length <= L.
std::size_t lie_dim(const Shape& shape);

/// Coordinates of a Lie element in the Lyndon basis.
using LieCoeffVec = std::vector<double>;

class NotLieElement : public std::runtime_error {
 public:
  NotLieElement(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Integer combination of words of a single level, keyed by position in the
/// level block.
struct SparseLevel {
  int level = 0;
  std::vector<std::pair<std::size_t, long long>> terms;
};

class LyndonBasis {
 public:
  explicit LyndonBasis(const Shape& shape);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  const Word& word(std::size_t b) const { return words_[b]; }
  int level(std::size_t b) const { return static_cast<int>(words_[b].size()); }

  /// Indices (u, v) with word(b) = word(u) word(v); (-1, -1) for letters.
  std::pair<int, int> factorization(std::size_t b) const { return factors_[b]; }

  /// Position of word(b) inside its level block.
  std::size_t position(std::size_t b) const { return positions_[b]; }

  /// Basis index of a Lyndon word; throws std::invalid_argument otherwise.
  std::size_t index_of(std::span<const Letter> word) const;

  /// Basis indices whose words have length k, in lexicographic order.
  std::pair<std::size_t, std::size_t> level_range(int k) const { return level_ranges_[static_cast<std::size_t>(k)]; }

  /// Bracket polynomial of word(b).
  const SparseLevel& expansion(std::size_t b) const { return expansions_[b]; }
  Tensor expansion_tensor(std::size_t b) const;

  /// Positions of the level-L Lyndon words; enough to recover every level-L
  /// coordinate by forward substitution.
  TopMask top_mask() const;

  Tensor to_tensor(std::span<const double> coords) const;
  RationalTensor to_tensor_exact(std::span<const Rational> coords) const;

  /// Coordinates of a Lie element. Throws NotLieElement if the residual of
  /// the reconstruction exceeds tol * max(1, max |x|).
  LieCoeffVec from_tensor(const Tensor& x, double tol = 1e-9) const;

  /// Forward substitution on Lyndon positions only, without any membership
  /// check. Works for any coefficient ring.
  template <class T>
  std::vector<T> from_tensor_unchecked(const TruncatedTensor<T>& x) const;

  /// u * v = log(exp(u) exp(v)) in coordinates.
  LieCoeffVec star(std::span<const double> u, std::span<const double> v) const;
  std::vector<Rational> star_exact(std::span<const Rational> u, std::span<const Rational> v) const;

 private:
  Shape shape_;
  std::vector<Word> words_;
  std::vector<std::pair<int, int>> factors_;
  std::vector<std::size_t> positions_;
  std::vector<std::pair<std::size_t, std::size_t>> level_ranges_;
  std::vector<SparseLevel> expansions_;
  std::map<Word, std::size_t> lookup_;
  /// For each b, the pairs (v, <B_v, word(b)>) with v < b at the same level
  /// and a nonzero pairing.
  std::vector<std::vector<std::pair<std::size_t, long long>>> lower_;
};

template <class T>
std::vector<T> LyndonBasis::from_tensor_unchecked(const TruncatedTensor<T>& x) const {
  if (!(x.shape() == shape_)) throw std::invalid_argument("from_tensor: shape mismatch");
  std::vector<T> c(words_.size(), ScalarTraits<T>::zero());
  for (std::size_t b = 0; b < words_.size(); ++b) {
    T value = x.level(level(b))[positions_[b]];
    for (const auto& [v, a] : lower_[b]) {
      T t = c[v];
      ScalarTraits<T>::scale(t, Rational(static_cast<long>(a)));
      value -= t;
    }
    c[b] = std::move(value);
  }
  return c;
}

}  // namespace nilbary
