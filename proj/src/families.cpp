#include "nilbary/families.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace nilbary {

namespace {

using PolyTensor = TruncatedTensor<Poly>;

PolyTensor lie_symbol_tensor(const LyndonBasis& basis, bool c_symbols, bool negate) {
  PolyTensor t(basis.shape());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const SparseLevel& e = basis.expansion(b);
    auto lvl = t.level(e.level);
    Symbol x = c_symbols ? sym_c(b) : sym_m(b);
    for (const auto& [pos, c] : e.terms) lvl[pos] += Poly::symbol(x, Rational(static_cast<long>(negate ? -c : c)));
  }
  return t;
}

struct SymbolicBch {
  PolyTensor neg_x;
  PolyTensor x;
  PolyTensor bch;  // BCH(-X, Y), top level only at Lyndon positions
};

SymbolicBch symbolic_bch(const LyndonBasis& basis, const TopMask& mask) {
  SymbolicBch out;
  out.x = lie_symbol_tensor(basis, false, false);
  out.neg_x = lie_symbol_tensor(basis, false, true);
  PolyTensor y = lie_symbol_tensor(basis, true, false);
  PolyTensor g = mul(exp_unchecked(out.neg_x, &mask), exp_unchecked(y, &mask), &mask);
  out.bch = log_unchecked(g, &mask);
  return out;
}

}  // namespace

PQFamilies generate_pq(const Shape& shape) {
  LyndonBasis basis(shape);
  TopMask mask = basis.top_mask();
  SymbolicBch s = symbolic_bch(basis, mask);
  PQFamilies out;
  out.q = basis.from_tensor_unchecked(s.bch);
  out.p.reserve(out.q.size());
  for (std::size_t j = 0; j < out.q.size(); ++j) {
    out.p.push_back(out.q[j].negate_m() - Poly::m(j) - Poly::c(j));
  }
  return out;
}

namespace {

/// Greedily subtracts rational multiples of earlier relations from s while
/// that lowers its term count. `users` maps a monomial to the relations
/// containing it.
Poly sparsify(Poly s, const std::vector<Poly>& earlier,
              const std::unordered_map<Monomial, std::vector<std::size_t>, MonomialHash>& users) {
  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<std::size_t> candidates;
    for (const auto& t : s.terms()) {
      auto it = users.find(t.mono);
      if (it != users.end()) candidates.insert(candidates.end(), it->second.begin(), it->second.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (std::size_t k : candidates) {
      const Poly& g = earlier[k];
      for (const auto& t : g.terms()) {
        const Rational a = s.coeff(t.mono);
        if (sgn(a) == 0) continue;
        Poly cand = s - g * Rational(a / t.coeff);
        if (cand.term_count() < s.term_count()) {
          s = std::move(cand);
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
  }
  return s;
}

}  // namespace

std::vector<Poly> generate_r_from_q(const std::vector<Poly>& q, const MonomialOrder& order,
                                    const ReductionOptions& options) {
  int cap = options.max_pair_degree;
  if (cap <= 0) {
    for (const auto& p : q) cap = std::max(cap, p.degree());
  }
  FrozenBasis G(order);
  G.set_max_pair_degree(std::min(cap, static_cast<int>(Monomial::kMaxDegree)));
  std::vector<Poly> reduced;
  std::unordered_map<Monomial, std::vector<std::size_t>, MonomialHash> users;
  std::vector<Poly> r;
  r.reserve(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    Poly s = G.rnf(q[j]);
    if (options.sparsify) s = sparsify(std::move(s), reduced, users);
    for (const auto& t : s.terms()) users[t.mono].push_back(reduced.size());
    reduced.push_back(s);
    r.push_back(s - Poly::c(j) + Poly::m(j));
    G.add_and_close(q[j]);
  }
  return r;
}

std::vector<Poly> generate_r(const Shape& shape, const MonomialOrder& order, const ReductionOptions& options) {
  return generate_r_from_q(generate_pq(shape).q, order, options);
}

RelationProcedure reference_procedure(const Shape& shape) {
  const std::size_t B = lie_dim(shape);
  if (shape.d == 3 && shape.L == 4) return {MonomialOrder::deglex(B), ReductionOptions{true, 0}};
  return {MonomialOrder::lex(B), ReductionOptions{}};
}

std::vector<Poly> generate_abch_r(const Shape& shape) {
  LyndonBasis basis(shape);
  TopMask mask = basis.top_mask();
  SymbolicBch s = symbolic_bch(basis, mask);
  // aBCH(-X, Y) = f(ad_{-X})(BCH(-X, Y) + X)
  PolyTensor a = apply_ad_series(AdPowerSeries::f_series(shape.L), s.neg_x, s.bch + s.x, &mask);
  std::vector<Poly> coords = basis.from_tensor_unchecked(a);
  for (std::size_t j = 0; j < coords.size(); ++j) coords[j] -= Poly::c(j);
  return coords;
}

TermCounts term_counts(const std::vector<Poly>& polys) {
  TermCounts out;
  for (const auto& p : polys) {
    out.counts.push_back(p.term_count());
    out.max = std::max(out.max, p.term_count());
  }
  return out;
}

std::vector<Poly> update_polys_from_p(const std::vector<Poly>& p) {
  std::vector<Poly> u;
  for (std::size_t j = 0; j < p.size(); ++j) u.push_back(p[j].negate_m() + Poly::c(j));
  return u;
}

std::vector<Poly> update_polys_from_r(const std::vector<Poly>& r) {
  std::vector<Poly> u;
  for (std::size_t j = 0; j < r.size(); ++j) u.push_back(r[j] + Poly::c(j));
  return u;
}

namespace {

void collect_derivatives(const Poly& f, std::vector<std::size_t>& alpha, std::size_t first, std::size_t max_order,
                         std::vector<TaylorTerm>& out) {
  if (alpha.size() == max_order) return;
  std::vector<std::size_t> vars;
  for (const auto& t : f.terms()) {
    for (Symbol x : t.mono.symbols()) {
      if (!is_c(x) && sym_index(x) >= first) vars.push_back(sym_index(x));
    }
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (std::size_t b : vars) {
    Poly g = f.diff_m(b);
    if (g.is_zero()) continue;
    alpha.push_back(b);
    TaylorTerm term;
    mpz_class fact = 1;
    for (std::size_t i = 0; i < alpha.size();) {
      std::size_t k = i;
      while (k < alpha.size() && alpha[k] == alpha[i]) ++k;
      int e = static_cast<int>(k - i);
      term.alpha.emplace_back(alpha[i], e);
      for (int t = 2; t <= e; ++t) fact *= t;
      i = k;
    }
    term.inv_alpha_factorial = Rational(1) / Rational(fact);
    term.derivative = g;
    out.push_back(term);
    collect_derivatives(g, alpha, b, max_order, out);
    alpha.pop_back();
  }
}

}  // namespace

std::vector<TaylorTerm> taylor_update_terms(const Poly& u, std::size_t j) {
  std::vector<TaylorTerm> out;
  std::vector<std::size_t> alpha;
  collect_derivatives(u, alpha, 0, std::max<std::size_t>(j, 1), out);
  return out;
}

std::size_t taylor_term_bound(std::size_t j_one_based, int degree) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(j_one_based - 1 + static_cast<std::size_t>(degree)),
               static_cast<unsigned long>(degree));
  return b.get_ui();
}

std::map<int, std::size_t> AmbientRemainder::count_by_b_letters() const {
  std::map<int, std::size_t> out;
  for (const auto& [w, c] : terms) {
    int nb = static_cast<int>(std::count_if(w.begin(), w.end(), [this](Letter x) { return x < L; }));
    ++out[nb];
  }
  return out;
}

AmbientRemainder ambient_abch_remainder(int L) {
  if (L < 1 || L > 6) throw std::invalid_argument("ambient remainder supported for 1 <= L <= 6");
  const Shape shape{2 * L, L};
  RationalTensor b(shape);
  RationalTensor c(shape);
  for (int k = 0; k < L; ++k) {
    b.level(1)[static_cast<std::size_t>(k)] = 1;
    c.level(1)[static_cast<std::size_t>(L + k)] = 1;
  }
  RationalTensor bch = log_unchecked(mul(exp_unchecked(b), exp_unchecked(c)));
  RationalTensor a = apply_ad_series(AdPowerSeries::f_series(L), b, bch - b);
  AmbientRemainder out;
  out.L = L;
  for (int len = 1; len <= L; ++len) {
    auto lvl = a.level(len);
    for (std::size_t i = 0; i < lvl.size(); ++i) {
      if (sgn(lvl[i]) == 0) continue;
      Word w = index_word(shape, len, i);
      int weight = 0;
      for (Letter x : w) weight += (x < L ? x : x - L) + 1;
      if (weight != L) continue;
      if (len == 1 && w[0] == 2 * L - 1) continue;  // the linear c_L term
      out.terms.emplace(std::move(w), lvl[i]);
    }
  }
  return out;
}

RationalTensor abch_two_letters(int L) {
  const Shape shape{2, L};
  RationalTensor x(shape);
  RationalTensor y(shape);
  x.level(1)[0] = 1;
  y.level(1)[1] = 1;
  RationalTensor bch = log_unchecked(mul(exp_unchecked(x), exp_unchecked(y)));
  return apply_ad_series(AdPowerSeries::f_series(L), x, bch - x);
}

}  // namespace nilbary
