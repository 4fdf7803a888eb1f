#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "nilbary/poly.hpp"

namespace nilbary {

/// Basis for reduction with frozen C: a divisor g may only be multiplied by
/// an M-monomial, so it applies to a term whose C-part equals the C-part of
/// lm(g) and whose M-part is divisible by the M-part of lm(g).
class FrozenBasis {
 public:
  explicit FrozenBasis(MonomialOrder order) : order_(std::move(order)) {}

  const MonomialOrder& order() const { return order_; }
  std::size_t size() const { return polys_.size(); }
  const std::vector<Poly>& polys() const { return polys_; }

  /// Adds g as is (no reduction, no pairs). Zero polynomials are ignored.
  void insert(const Poly& g);

  /// Reduced normal form: no monomial of the result is an M-multiple of any
  /// leading monomial in the basis.
  Poly rnf(const Poly& q) const;

  /// Adds q unchanged and closes under frozen-C S-polynomials. Pairs are
  /// processed by increasing lcm, ties in creation order. Returns the number
  /// of polynomials added, q included.
  std::size_t add_and_close(const Poly& q);

  /// S-pairs whose lcm has a higher degree are skipped (and counted). The
  /// default keeps every pair a Monomial can represent.
  void set_max_pair_degree(int degree) { max_pair_degree_ = degree; }
  int max_pair_degree() const { return max_pair_degree_; }
  std::size_t skipped_pairs() const { return skipped_pairs_; }

 private:
  struct Entry {
    Monomial lead;
    Monomial lead_m;
    Rational lead_coeff;
  };
  /// Index of a usable divisor for `mono`, or -1.
  long find_divisor(const Monomial& mono) const;

  MonomialOrder order_;
  int max_pair_degree_ = Monomial::kMaxDegree;
  std::size_t skipped_pairs_ = 0;
  std::vector<Poly> polys_;
  std::vector<Entry> entries_;
  std::unordered_map<Monomial, std::vector<std::size_t>, MonomialHash> by_c_part_;
};

Poly rnf(const Poly& q, const std::vector<Poly>& G, const MonomialOrder& order);

/// Frozen-C Buchberger closure of F.
std::vector<Poly> buchberger(const std::vector<Poly>& F, const MonomialOrder& order);

Monomial leading_monomial(const Poly& p, const MonomialOrder& order);

}  // namespace nilbary
