#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nilbary/rational.hpp"
#include "nilbary/tensor.hpp"

namespace nilbary {

/// 0-based one-line notation: sigma[k] is the image of position k.
using Permutation = std::vector<int>;

bool is_permutation(std::span<const int> sigma);
Permutation inverse(std::span<const int> sigma);

/// Number of positions k with sigma(k) > sigma(k+1).
int descents(std::span<const int> sigma);

/// Every permutation of {0..K-1} in lexicographic order.
std::vector<Permutation> all_permutations(int K);

/// Output word (i_{sigma(1)}, ..., i_{sigma(K)}) receives the input value at
/// (i_1, ..., i_K). The block has d^K entries.
template <class T>
std::vector<T> permute(std::span<const T> block, int d, std::span<const int> sigma);

/// Weight of permute_sigma in the level-K projection:
/// (-1)^desc / (K * binom(K-1, desc)).
Rational pi1_coefficient(int K, int desc);

struct Pi1Options {
  /// Levels above this cap are refused because the kernel enumerates K!
  /// permutations per level.
  int max_level = 8;
};

/// Graded projection agreeing with log on grouplike elements. Level 0 maps
/// to 0. Parallel over output entries.
template <class T>
TruncatedTensor<T> pi1(const TruncatedTensor<T>& x, const Pi1Options& options = {});

/// Single-threaded reference: sums coefficient * permute_sigma(block).
template <class T>
TruncatedTensor<T> pi1_serial(const TruncatedTensor<T>& x, const Pi1Options& options = {});

/// Level-K block of the projection alone.
template <class T>
std::vector<T> pi1_level(std::span<const T> block, int d, int K, const Pi1Options& options = {});

template <class T>
std::vector<T> pi1_level_serial(std::span<const T> block, int d, int K, const Pi1Options& options = {});

/// Block with its words reversed, i.e. permute by the reversal.
template <class T>
std::vector<T> reverse_words(std::span<const T> block, int d, int K);

}  // namespace nilbary
