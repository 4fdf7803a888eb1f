#include "nilbary/groebner.hpp"

#include <map>
#include <queue>
#include <tuple>

namespace nilbary {

namespace {

using Key = MonomialOrder::Key;

struct Descending {
  bool operator()(const Key& a, const Key& b) const { return b < a; }
};

using Workspace = std::map<Key, Term, Descending>;

void accumulate(Workspace& ws, const MonomialOrder& order, const Monomial& mono, const Rational& c) {
  Key k = order.key(mono);
  auto it = ws.find(k);
  if (it == ws.end()) {
    ws.emplace(k, Term{mono, c});
    return;
  }
  it->second.coeff += c;
  if (sgn(it->second.coeff) == 0) ws.erase(it);
}

}  // namespace

Monomial leading_monomial(const Poly& p, const MonomialOrder& order) {
  if (p.is_zero()) throw std::invalid_argument("leading monomial of the zero polynomial");
  const Monomial* best = &p.terms().front().mono;
  Key best_key = order.key(*best);
  for (const auto& t : p.terms()) {
    Key k = order.key(t.mono);
    if (best_key < k) {
      best_key = k;
      best = &t.mono;
    }
  }
  return *best;
}

void FrozenBasis::insert(const Poly& g) {
  if (g.is_zero()) return;
  Monomial lead = leading_monomial(g, order_);
  entries_.push_back({lead, lead.m_part(), g.coeff(lead)});
  polys_.push_back(g);
  by_c_part_[lead.c_part()].push_back(polys_.size() - 1);
}

long FrozenBasis::find_divisor(const Monomial& mono) const {
  auto it = by_c_part_.find(mono.c_part());
  if (it == by_c_part_.end()) return -1;
  Monomial m = mono.m_part();
  for (std::size_t idx : it->second) {
    if (m.divisible_by(entries_[idx].lead_m)) return static_cast<long>(idx);
  }
  return -1;
}

Poly FrozenBasis::rnf(const Poly& q) const {
  Workspace ws;
  for (const auto& t : q.terms()) ws.emplace(order_.key(t.mono), t);
  std::vector<Term> result;
  while (!ws.empty()) {
    auto top = ws.begin();
    long g = find_divisor(top->second.mono);
    if (g < 0) {
      result.push_back(std::move(top->second));
      ws.erase(top);
      continue;
    }
    const Entry& e = entries_[static_cast<std::size_t>(g)];
    Monomial cofactor = top->second.mono.quotient(e.lead);
    Rational factor = top->second.coeff / e.lead_coeff;
    for (const auto& t : polys_[static_cast<std::size_t>(g)].terms()) {
      accumulate(ws, order_, t.mono * cofactor, Rational(-factor * t.coeff));
    }
  }
  return Poly::from_terms(std::move(result));
}

namespace {

int lcm_degree(const Monomial& a, const Monomial& b) {
  auto x = a.symbols();
  auto y = b.symbols();
  std::size_t i = 0, j = 0;
  int n = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i] < y[j])) {
      ++i;
    } else if (i == x.size() || y[j] < x[i]) {
      ++j;
    } else {
      ++i;
      ++j;
    }
    ++n;
  }
  return n;
}

}  // namespace

std::size_t FrozenBasis::add_and_close(const Poly& q) {
  using Pair = std::tuple<Key, std::size_t, std::size_t, std::size_t>;  // lcm key, seq, i, j
  std::priority_queue<Pair, std::vector<Pair>, std::greater<>> pairs;
  std::size_t seq = 0;
  std::size_t added = 0;

  auto add = [&](const Poly& h) {
    insert(h);
    ++added;
    const std::size_t n = polys_.size() - 1;
    const Monomial c = entries_[n].lead.c_part();
    for (std::size_t i : by_c_part_[c]) {
      if (i == n) continue;
      if (lcm_degree(entries_[i].lead, entries_[n].lead) > max_pair_degree_) {
        ++skipped_pairs_;
        continue;
      }
      Monomial l = lcm(entries_[i].lead, entries_[n].lead);
      pairs.emplace(order_.key(l), seq++, i, n);
    }
  };

  if (q.is_zero()) return 0;
  add(q);
  while (!pairs.empty()) {
    auto [key, s, i, j] = pairs.top();
    pairs.pop();
    const Entry& a = entries_[i];
    const Entry& b = entries_[j];
    Monomial l = lcm(a.lead, b.lead);
    Monomial fa = l.quotient(a.lead);
    Monomial fb = l.quotient(b.lead);
    std::vector<Term> terms;
    for (const auto& t : polys_[i].terms()) terms.push_back({t.mono * fa, t.coeff / a.lead_coeff});
    for (const auto& t : polys_[j].terms()) terms.push_back({t.mono * fb, -t.coeff / b.lead_coeff});
    Poly spoly = Poly::from_terms(std::move(terms));
    Poly r = rnf(spoly);
    if (!r.is_zero()) add(r);
  }
  return added;
}

Poly rnf(const Poly& q, const std::vector<Poly>& G, const MonomialOrder& order) {
  FrozenBasis basis(order);
  for (const auto& g : G) basis.insert(g);
  return basis.rnf(q);
}

std::vector<Poly> buchberger(const std::vector<Poly>& F, const MonomialOrder& order) {
  FrozenBasis basis(order);
  for (const auto& f : F) basis.add_and_close(f);
  return basis.polys();
}

}  // namespace nilbary
