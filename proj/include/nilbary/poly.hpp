#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nilbary/rational.hpp"

namespace nilbary {

/// M_b is encoded as b, C_b as kCFlag | b (0-based b). Sorting symbols
/// therefore lists the M-part before the C-part.
using Symbol = std::uint16_t;
inline constexpr Symbol kCFlag = 0x8000;

inline Symbol sym_m(std::size_t b) { return static_cast<Symbol>(b); }
inline Symbol sym_c(std::size_t b) { return static_cast<Symbol>(kCFlag | b); }
inline bool is_c(Symbol s) { return (s & kCFlag) != 0; }
inline std::size_t sym_index(Symbol s) { return s & static_cast<Symbol>(~kCFlag); }

/// Commutative monomial stored as a sorted multiset of symbols.
struct Monomial {
  static constexpr int kMaxDegree = 12;

  std::uint8_t n = 0;
  std::array<Symbol, kMaxDegree> s{};

  static Monomial one() { return {}; }
  static Monomial of(Symbol x);

  int degree() const { return n; }
  std::span<const Symbol> symbols() const { return {s.data(), n}; }
  /// Number of leading M symbols.
  int m_degree() const;
  Monomial m_part() const;
  Monomial c_part() const;
  int exponent(Symbol x) const;

  /// Every symbol of `other` (with multiplicity) appears in *this.
  bool divisible_by(const Monomial& other) const;
  /// *this / other; requires divisible_by(other).
  Monomial quotient(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.n == b.n && a.s == b.s; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.n != b.n ? a.n < b.n : a.s < b.s; }
};

Monomial operator*(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

struct Term {
  Monomial mono;
  Rational coeff;

  friend bool operator==(const Term& a, const Term& b) { return a.mono == b.mono && a.coeff == b.coeff; }
};

/// Exact polynomial in M_1..M_B, C_1..C_B. Terms are kept sorted by the
/// storage order of Monomial with no zero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rational& c);
  static Poly symbol(Symbol x, const Rational& c = Rational(1));
  static Poly m(std::size_t b) { return symbol(sym_m(b)); }
  static Poly c(std::size_t b) { return symbol(sym_c(b)); }
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Highest total degree; 0 for the zero polynomial.
  int degree() const;
  /// Coefficient of a monomial (zero if absent).
  Rational coeff(const Monomial& mono) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& q);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& q) { return a *= q; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// acc += a * b without building the product separately.
  static void add_product(Poly& acc, const Poly& a, const Poly& b);

  /// Substitutes M_b -> -M_b for all b.
  Poly negate_m() const;
  /// Partial derivative with respect to M_b.
  Poly diff_m(std::size_t b) const;

  Rational evaluate(std::span<const Rational> m, std::span<const Rational> c) const;
  double evaluate(std::span<const double> m, std::span<const double> c) const;

  /// Largest symbol index used, or -1.
  long max_index() const;

 private:
  std::vector<Term> terms_;
};

template <>
struct ScalarTraits<Poly> {
  static Poly zero() { return Poly(); }
  static Poly one() { return Poly(Rational(1)); }
  static bool is_zero(const Poly& p) { return p.is_zero(); }
  static Poly from_rational(const Rational& q) { return Poly(q); }
  static void scale(Poly& p, const Rational& q) { p *= q; }
  static void add_product(Poly& acc, const Poly& a, const Poly& b) { Poly::add_product(acc, a, b); }
};

/// Strict total order on monomials given by symbol ranks (higher rank is
/// larger). Lex compares exponents of symbols from the highest rank down;
/// degree-lex compares total degree first.
class MonomialOrder {
 public:
  enum class Kind { Lex, DegLex };

  /// Lex with C_B > ... > C_1 > M_B > ... > M_1.
  static MonomialOrder lex(std::size_t B);
  /// Degree-lex with C_1 > ... > C_B > M_1 > ... > M_B.
  static MonomialOrder deglex(std::size_t B);
  /// Explicit priority list, highest first.
  MonomialOrder(Kind kind, std::span<const Symbol> priority);

  Kind kind() const { return kind_; }
  std::size_t num_symbols() const { return m_rank_.size(); }
  int rank(Symbol x) const { return is_c(x) ? c_rank_[sym_index(x)] : m_rank_[sym_index(x)]; }

  /// Sort key whose lexicographic order equals the monomial order.
  using Key = std::array<std::uint16_t, Monomial::kMaxDegree + 1>;
  Key key(const Monomial& mono) const;

  /// Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;

 private:
  MonomialOrder() = default;
  Kind kind_ = Kind::Lex;
  std::vector<int> m_rank_;
  std::vector<int> c_rank_;
};

/// Terms sorted descending in the given order.
std::vector<Term> ordered_terms(const Poly& p, const MonomialOrder& order);

std::string monomial_string(const Monomial& mono);
/// Human-readable form with terms in descending order, e.g.
/// "1/12*C1*C2*M1 - 1/12*C1^2*M2".
std::string to_string(const Poly& p, const MonomialOrder& order);

/// Parses the text form produced by to_string; symbols are M<k>/C<k> with
/// 1-based k, and "*" between factors is optional.
Poly parse_poly(const std::string& text);

/// Polynomial evaluator with double coefficients, used in the numeric
/// recursions. Variables are addressed as m[b] and c[b].
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly& p);

  double operator()(std::span<const double> m, std::span<const double> c) const;
  std::size_t term_count() const { return coeffs_.size(); }

 private:
  std::vector<double> coeffs_;
  std::vector<std::uint32_t> starts_;
  std::vector<Symbol> symbols_;
};

}  // namespace nilbary
