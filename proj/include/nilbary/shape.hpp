#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nilbary {

/// Letters are stored 0-based internally; every external format (JSON, CSV,
/// printed words) uses 1-based letters.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

/// Alphabet size and truncation level of T_{<=L}(R^d).
struct Shape {
  int d = 1;
  int L = 1;

  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Throws std::invalid_argument unless d >= 1, L >= 1 and the ambient
/// dimension fits comfortably in memory.
void validate(const Shape& shape);

std::size_t ipow(std::size_t base, int exponent);

/// Number of words of length k, d^k.
inline std::size_t level_size(const Shape& shape, int k) {
  return ipow(static_cast<std::size_t>(shape.d), k);
}

/// Flat offset of the level-k block, sum_{i<k} d^i.
std::size_t level_offset(const Shape& shape, int k);

/// sum_{i=0}^{L} d^i
std::size_t ambient_dim(const Shape& shape);

/// Big-endian position of a word inside its level block: the leftmost letter
/// is the most significant digit.
std::size_t word_index(const Shape& shape, std::span<const Letter> word);

Word index_word(const Shape& shape, int length, std::size_t index);

/// "112" style rendering with 1-based letters; letters above 9 are rendered
/// dot-separated ("1.10.2") to stay unambiguous.
std::string word_string(std::span<const Letter> word);

std::string to_string(const Shape& shape);

}  // namespace nilbary
