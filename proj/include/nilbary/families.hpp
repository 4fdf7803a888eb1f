#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "nilbary/groebner.hpp"
#include "nilbary/lyndon.hpp"
#include "nilbary/poly.hpp"
#include "nilbary/tensor.hpp"

namespace nilbary {

/// Relation families for one shape, indexed by Lyndon basis position
/// (0-based; printed 1-based).
struct PQFamilies {
  /// p_j = B*_j(BCH(X, Y)) - M_j - C_j
  std::vector<Poly> p;
  /// q_j = B*_j(BCH(-X, Y)) = p_j(-M, C) - M_j + C_j
  std::vector<Poly> q;
};

/// Symbolic BCH with X = sum_b M_b B_b and Y = sum_b C_b B_b, evaluated as
/// log(exp(-X) exp(Y)) over polynomial coefficients.
PQFamilies generate_pq(const Shape& shape);

struct ReductionOptions {
  /// After rNF, subtract rational multiples of the earlier reduced relations
  /// whenever that lowers the term count.
  bool sparsify = false;
  /// S-pairs whose lcm exceeds this degree are skipped. 0 means the largest
  /// degree among the q_j.
  int max_pair_degree = 0;
};

/// r_j = s_j - C_j + M_j where s_j is rNF(q_j, G^(j-1)), optionally
/// sparsified against s_1..s_(j-1).
std::vector<Poly> generate_r(const Shape& shape, const MonomialOrder& order, const ReductionOptions& options = {});
std::vector<Poly> generate_r_from_q(const std::vector<Poly>& q, const MonomialOrder& order,
                                    const ReductionOptions& options = {});

/// Order and reduction settings behind the reference extra-term counts:
/// lex with plain rNF everywhere, except d=3, L=4 which uses deg-lex with
/// sparsification (lex gives 8 there, this gives 7).
struct RelationProcedure {
  MonomialOrder order;
  ReductionOptions options;
};
RelationProcedure reference_procedure(const Shape& shape);

/// Same relations from the asymmetrized BCH: B*_j(aBCH(-X, Y)) - C_j with
/// aBCH(X, Y) = f(ad_X)(BCH(X, Y) - X), f(t) = (1 - e^{-t}) / t.
std::vector<Poly> generate_abch_r(const Shape& shape);

struct TermCounts {
  std::vector<std::size_t> counts;
  std::size_t max = 0;
};
TermCounts term_counts(const std::vector<Poly>& polys);

/// Update polynomials u_j with m_j = sum_i w_i u_j(m, c^(i)).
std::vector<Poly> update_polys_from_p(const std::vector<Poly>& p);
std::vector<Poly> update_polys_from_r(const std::vector<Poly>& r);

/// One Taylor term d^alpha u / (dM)^alpha with alpha given as sorted
/// (M index, exponent) pairs, and 1/alpha!.
struct TaylorTerm {
  std::vector<std::pair<std::size_t, int>> alpha;
  Rational inv_alpha_factorial;
  Poly derivative;
};

/// Every nonzero derivative of u with respect to M of order 1..j (j is the
/// 0-based index, so derivatives involve at most j earlier coordinates).
std::vector<TaylorTerm> taylor_update_terms(const Poly& u, std::size_t j);

/// Upper bound binom(j - 1 + deg, deg) on the number of Taylor terms for the
/// 1-based index j.
std::size_t taylor_term_bound(std::size_t j_one_based, int degree);

/// Ambient remainder R_L(b, c) of the aBCH recursion, expanded over
/// letters b_1..b_L, c_1..c_L (letter k has weight k).
struct AmbientRemainder {
  int L = 0;
  /// Word (letters 0..L-1 are b_1..b_L, L..2L-1 are c_1..c_L) -> coefficient,
  /// weight-L words only, c_L excluded.
  std::map<Word, Rational> terms;

  std::size_t monomial_count() const { return terms.size(); }
  /// Monomial counts keyed by the number of b letters.
  std::map<int, std::size_t> count_by_b_letters() const;
};
AmbientRemainder ambient_abch_remainder(int L);

/// aBCH(x, y) for the two letters of the free algebra on two generators,
/// truncated at level L; its level-k block is the homogeneous part aBCH_k.
RationalTensor abch_two_letters(int L);

}  // namespace nilbary
