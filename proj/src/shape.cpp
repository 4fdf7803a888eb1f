#include "nilbary/shape.hpp"

#include <limits>
#include <stdexcept>

namespace nilbary {

namespace {
constexpr std::size_t kMaxAmbient = std::size_t{1} << 28;
}

std::size_t ipow(std::size_t base, int exponent) {
  std::size_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > std::numeric_limits<std::size_t>::max() / base) {
      throw std::overflow_error("ipow overflow");
    }
    result *= base;
  }
  return result;
}

void validate(const Shape& shape) {
  if (shape.d < 1) throw std::invalid_argument("alphabet size d must be >= 1");
  if (shape.L < 1) throw std::invalid_argument("truncation level L must be >= 1");
  if (shape.d > 255) throw std::invalid_argument("alphabet size d must be <= 255");
  if (ambient_dim(shape) > kMaxAmbient) {
    throw std::invalid_argument("shape " + to_string(shape) + " exceeds the supported ambient dimension");
  }
}

std::size_t level_offset(const Shape& shape, int k) {
  std::size_t offset = 0;
  std::size_t block = 1;
  for (int i = 0; i < k; ++i) {
    offset += block;
    block *= static_cast<std::size_t>(shape.d);
  }
  return offset;
}

std::size_t ambient_dim(const Shape& shape) { return level_offset(shape, shape.L + 1); }

std::size_t word_index(const Shape& shape, std::span<const Letter> word) {
  std::size_t idx = 0;
  for (Letter letter : word) {
    if (letter >= shape.d) throw std::out_of_range("letter outside alphabet");
    idx = idx * static_cast<std::size_t>(shape.d) + letter;
  }
  return idx;
}

Word index_word(const Shape& shape, int length, std::size_t index) {
  Word word(static_cast<std::size_t>(length));
  for (int t = length - 1; t >= 0; --t) {
    word[static_cast<std::size_t>(t)] = static_cast<Letter>(index % static_cast<std::size_t>(shape.d));
    index /= static_cast<std::size_t>(shape.d);
  }
  return word;
}

std::string word_string(std::span<const Letter> word) {
  bool wide = false;
  for (Letter letter : word) wide = wide || letter >= 9;
  std::string out;
  for (std::size_t t = 0; t < word.size(); ++t) {
    if (wide && t > 0) out += '.';
    out += std::to_string(static_cast<int>(word[t]) + 1);
  }
  return out;
}

std::string to_string(const Shape& shape) {
  return "(d=" + std::to_string(shape.d) + ", L=" + std::to_string(shape.L) + ")";
}

}  // namespace nilbary
