#include "nilbary/lyndon.hpp"

#include <algorithm>
#include <cmath>

namespace nilbary {

namespace {

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

SparseLevel concat_bracket(const SparseLevel& a, const SparseLevel& b, std::size_t d) {
  std::map<std::size_t, long long> acc;
  const std::size_t shift_b = ipow(d, b.level);
  const std::size_t shift_a = ipow(d, a.level);
  for (const auto& [ia, ca] : a.terms) {
    for (const auto& [ib, cb] : b.terms) {
      acc[ia * shift_b + ib] += ca * cb;
      acc[ib * shift_a + ia] -= ca * cb;
    }
  }
  SparseLevel out;
  out.level = a.level + b.level;
  for (const auto& [i, c] : acc) {
    if (c != 0) out.terms.emplace_back(i, c);
  }
  return out;
}

}  // namespace

bool is_lyndon(std::span<const Letter> word) {
  if (word.empty()) return false;
  for (std::size_t s = 1; s < word.size(); ++s) {
    if (!std::lexicographical_compare(word.begin(), word.end(), word.begin() + static_cast<std::ptrdiff_t>(s),
                                      word.end())) {
      return false;
    }
  }
  return true;
}

std::vector<Word> lyndon_words(const Shape& shape) {
  validate(shape);
  std::vector<Word> out;
  Word w{0};
  const int d = shape.d;
  const auto n = static_cast<std::size_t>(shape.L);
  while (!w.empty()) {
    out.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == d - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

std::size_t lie_dim(const Shape& shape) {
  validate(shape);
  std::size_t total = 0;
  for (int l = 1; l <= shape.L; ++l) {
    long long sum = 0;
    for (int a = 1; a <= l; ++a) {
      if (l % a != 0) continue;
      sum += moebius(a) * static_cast<long long>(ipow(static_cast<std::size_t>(shape.d), l / a));
    }
    total += static_cast<std::size_t>(sum / l);
  }
  return total;
}

LyndonBasis::LyndonBasis(const Shape& shape) : shape_(shape), words_(lyndon_words(shape)) {
  const std::size_t B = words_.size();
  factors_.assign(B, {-1, -1});
  positions_.resize(B);
  expansions_.resize(B);
  lower_.resize(B);
  level_ranges_.assign(static_cast<std::size_t>(shape.L) + 1, {0, 0});
  for (std::size_t b = 0; b < B; ++b) {
    lookup_.emplace(words_[b], b);
    positions_[b] = word_index(shape, words_[b]);
  }
  for (int k = 1; k <= shape.L; ++k) {
    auto first = std::find_if(words_.begin(), words_.end(), [k](const Word& w) { return static_cast<int>(w.size()) == k; });
    auto last = std::find_if(first, words_.end(), [k](const Word& w) { return static_cast<int>(w.size()) > k; });
    level_ranges_[static_cast<std::size_t>(k)] = {static_cast<std::size_t>(first - words_.begin()),
                                                  static_cast<std::size_t>(last - words_.begin())};
  }
  const auto d = static_cast<std::size_t>(shape.d);
  for (std::size_t b = 0; b < B; ++b) {
    const Word& w = words_[b];
    if (w.size() == 1) {
      expansions_[b] = SparseLevel{1, {{w[0], 1}}};
      continue;
    }
    // Longest proper Lyndon suffix.
    for (std::size_t s = 1; s < w.size(); ++s) {
      std::span<const Letter> suffix(w.data() + s, w.size() - s);
      if (is_lyndon(suffix)) {
        std::size_t u = lookup_.at(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s)));
        std::size_t v = lookup_.at(Word(suffix.begin(), suffix.end()));
        factors_[b] = {static_cast<int>(u), static_cast<int>(v)};
        expansions_[b] = concat_bracket(expansions_[u], expansions_[v], d);
        break;
      }
    }
  }

  // Pairings <B_v, w> between Lyndon words of equal length. Forward
  // substitution relies on B_v having smallest word v with coefficient 1.
  for (int k = 1; k <= shape.L; ++k) {
    auto [lo, hi] = level_range(k);
    std::map<std::size_t, std::size_t> by_position;
    for (std::size_t b = lo; b < hi; ++b) by_position.emplace(positions_[b], b);
    for (std::size_t v = lo; v < hi; ++v) {
      bool diagonal = false;
      for (const auto& [pos, coeff] : expansions_[v].terms) {
        auto it = by_position.find(pos);
        if (it == by_position.end()) continue;
        std::size_t w = it->second;
        if (w == v) {
          diagonal = coeff == 1;
        } else if (w < v) {
          throw std::logic_error("Lyndon pairing matrix is not unitriangular at word " + word_string(words_[v]));
        } else {
          lower_[w].emplace_back(v, coeff);
        }
      }
      if (!diagonal) throw std::logic_error("Lyndon pairing matrix has a non-unit diagonal at " + word_string(words_[v]));
    }
  }
}

std::size_t LyndonBasis::index_of(std::span<const Letter> word) const {
  auto it = lookup_.find(Word(word.begin(), word.end()));
  if (it == lookup_.end()) throw std::invalid_argument("not a Lyndon word of this basis: " + word_string(word));
  return it->second;
}

Tensor LyndonBasis::expansion_tensor(std::size_t b) const {
  Tensor t(shape_);
  auto lvl = t.level(expansions_[b].level);
  for (const auto& [pos, c] : expansions_[b].terms) lvl[pos] = static_cast<double>(c);
  return t;
}

TopMask LyndonBasis::top_mask() const {
  TopMask mask;
  auto [lo, hi] = level_range(shape_.L);
  for (std::size_t b = lo; b < hi; ++b) mask.indices.push_back(positions_[b]);
  return mask;
}

Tensor LyndonBasis::to_tensor(std::span<const double> coords) const {
  if (coords.size() != words_.size()) throw std::invalid_argument("coordinate vector length does not match basis");
  Tensor t(shape_);
  for (std::size_t b = 0; b < words_.size(); ++b) {
    if (coords[b] == 0.0) continue;
    auto lvl = t.level(expansions_[b].level);
    for (const auto& [pos, c] : expansions_[b].terms) lvl[pos] += coords[b] * static_cast<double>(c);
  }
  return t;
}

RationalTensor LyndonBasis::to_tensor_exact(std::span<const Rational> coords) const {
  if (coords.size() != words_.size()) throw std::invalid_argument("coordinate vector length does not match basis");
  RationalTensor t(shape_);
  for (std::size_t b = 0; b < words_.size(); ++b) {
    if (sgn(coords[b]) == 0) continue;
    auto lvl = t.level(expansions_[b].level);
    for (const auto& [pos, c] : expansions_[b].terms) lvl[pos] += coords[b] * Rational(static_cast<long>(c));
  }
  return t;
}

LieCoeffVec LyndonBasis::from_tensor(const Tensor& x, double tol) const {
  LieCoeffVec c = from_tensor_unchecked(x);
  Tensor back = to_tensor(c);
  double residual = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) residual = std::max(residual, std::abs(back[i] - x[i]));
  double bound = tol * std::max(1.0, max_abs(x));
  if (!(residual <= bound)) {
    throw NotLieElement("not a Lie element: reconstruction residual " + std::to_string(residual) + " exceeds " +
                            std::to_string(bound),
                        residual);
  }
  return c;
}

LieCoeffVec LyndonBasis::star(std::span<const double> u, std::span<const double> v) const {
  if (u.size() != words_.size() || v.size() != words_.size()) {
    throw std::invalid_argument("star: coordinate vectors do not match basis size");
  }
  Tensor g = mul(exp(to_tensor(u)), exp(to_tensor(v)));
  return from_tensor(log(g));
}

std::vector<Rational> LyndonBasis::star_exact(std::span<const Rational> u, std::span<const Rational> v) const {
  if (u.size() != words_.size() || v.size() != words_.size()) {
    throw std::invalid_argument("star: coordinate vectors do not match basis size");
  }
  RationalTensor g = mul(exp(to_tensor_exact(u)), exp(to_tensor_exact(v)));
  return from_tensor_unchecked(log(g));
}

}  // namespace nilbary
