#include "nilbary/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace nilbary {

Monomial Monomial::of(Symbol x) {
  Monomial m;
  m.n = 1;
  m.s[0] = x;
  return m;
}

int Monomial::m_degree() const {
  int k = 0;
  while (k < n && !is_c(s[static_cast<std::size_t>(k)])) ++k;
  return k;
}

Monomial Monomial::m_part() const {
  Monomial out;
  out.n = static_cast<std::uint8_t>(m_degree());
  std::copy(s.begin(), s.begin() + out.n, out.s.begin());
  return out;
}

Monomial Monomial::c_part() const {
  Monomial out;
  const int k = m_degree();
  out.n = static_cast<std::uint8_t>(n - k);
  std::copy(s.begin() + k, s.begin() + n, out.s.begin());
  return out;
}

int Monomial::exponent(Symbol x) const {
  return static_cast<int>(std::count(s.begin(), s.begin() + n, x));
}

bool Monomial::divisible_by(const Monomial& other) const {
  int i = 0;
  for (int j = 0; j < other.n; ++j) {
    while (i < n && s[static_cast<std::size_t>(i)] < other.s[static_cast<std::size_t>(j)]) ++i;
    if (i == n || s[static_cast<std::size_t>(i)] != other.s[static_cast<std::size_t>(j)]) return false;
    ++i;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& other) const {
  Monomial out;
  int j = 0;
  for (int i = 0; i < n; ++i) {
    if (j < other.n && s[static_cast<std::size_t>(i)] == other.s[static_cast<std::size_t>(j)]) {
      ++j;
      continue;
    }
    out.s[out.n++] = s[static_cast<std::size_t>(i)];
  }
  if (j != other.n) throw std::logic_error("monomial quotient: not divisible");
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.n + b.n > Monomial::kMaxDegree) throw std::overflow_error("monomial degree above Monomial::kMaxDegree");
  Monomial out;
  std::merge(a.s.begin(), a.s.begin() + a.n, b.s.begin(), b.s.begin() + b.n, out.s.begin());
  out.n = static_cast<std::uint8_t>(a.n + b.n);
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  int i = 0;
  int j = 0;
  while (i < a.n || j < b.n) {
    Symbol x;
    if (j == b.n || (i < a.n && a.s[static_cast<std::size_t>(i)] < b.s[static_cast<std::size_t>(j)])) {
      x = a.s[static_cast<std::size_t>(i++)];
    } else if (i == a.n || b.s[static_cast<std::size_t>(j)] < a.s[static_cast<std::size_t>(i)]) {
      x = b.s[static_cast<std::size_t>(j++)];
    } else {
      x = a.s[static_cast<std::size_t>(i)];
      ++i;
      ++j;
    }
    if (out.n == Monomial::kMaxDegree) throw std::overflow_error("monomial degree above Monomial::kMaxDegree");
    out.s[out.n++] = x;
  }
  return out;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::uint64_t h = 1469598103934665603ULL ^ m.n;
  for (int i = 0; i < m.n; ++i) {
    h ^= m.s[static_cast<std::size_t>(i)];
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial::one(), c});
}

Poly Poly::symbol(Symbol x, const Rational& c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.push_back({Monomial::of(x), c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(p.terms_, [](const Term& t) { return sgn(t.coeff) == 0; });
  return p;
}

int Poly::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

Rational Poly::coeff(const Monomial& mono) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mono,
                             [](const Term& t, const Monomial& m) { return t.mono < m; });
  if (it != terms_.end() && it->mono == mono) return it->coeff;
  return Rational(0);
}

namespace {

/// Sorted-merge of two term lists with coefficient sign `sign` on b.
std::vector<Term> merge_terms(std::vector<Term>&& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono < b[j].mono)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].mono < a[i].mono) {
      out.push_back({b[j].mono, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
      ++j;
    } else {
      Rational c = std::move(a[i].coeff);
      if (sign > 0) {
        c += b[j].coeff;
      } else {
        c -= b[j].coeff;
      }
      if (sgn(c) != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<Term> product_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  struct Entry {
    Monomial mono;
    std::uint32_t i;
    std::uint32_t j;
  };
  std::vector<Entry> entries;
  entries.reserve(a.size() * b.size());
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    for (std::uint32_t j = 0; j < b.size(); ++j) entries.push_back({a[i].mono * b[j].mono, i, j});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.mono < y.mono; });
  std::vector<Term> out;
  Rational scratch;
  for (std::size_t k = 0; k < entries.size();) {
    Rational c = a[entries[k].i].coeff * b[entries[k].j].coeff;
    std::size_t l = k + 1;
    for (; l < entries.size() && entries[l].mono == entries[k].mono; ++l) {
      mpq_mul(scratch.get_mpq_t(), a[entries[l].i].coeff.get_mpq_t(), b[entries[l].j].coeff.get_mpq_t());
      c += scratch;
    }
    if (sgn(c) != 0) out.push_back({entries[k].mono, std::move(c)});
    k = l;
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(std::move(terms_), other.terms_, +1);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(std::move(terms_), other.terms_, -1);
  return *this;
}

Poly& Poly::operator*=(const Rational& q) {
  if (sgn(q) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= q;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  out.terms_ = product_terms(a.terms_, b.terms_);
  return out;
}

void Poly::add_product(Poly& acc, const Poly& a, const Poly& b) {
  std::vector<Term> prod = product_terms(a.terms_, b.terms_);
  if (acc.terms_.empty()) {
    acc.terms_ = std::move(prod);
  } else {
    acc.terms_ = merge_terms(std::move(acc.terms_), prod, +1);
  }
}

Poly Poly::negate_m() const {
  Poly out = *this;
  for (auto& t : out.terms_) {
    if (t.mono.m_degree() % 2 == 1) t.coeff = -t.coeff;
  }
  return out;
}

Poly Poly::diff_m(std::size_t b) const {
  const Symbol x = sym_m(b);
  std::vector<Term> out;
  for (const auto& t : terms_) {
    int e = t.mono.exponent(x);
    if (e == 0) continue;
    out.push_back({t.mono.quotient(Monomial::of(x)), t.coeff * e});
  }
  return from_terms(std::move(out));
}

Rational Poly::evaluate(std::span<const Rational> m, std::span<const Rational> c) const {
  Rational total(0);
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (Symbol x : t.mono.symbols()) v *= is_c(x) ? c[sym_index(x)] : m[sym_index(x)];
    total += v;
  }
  return total;
}

double Poly::evaluate(std::span<const double> m, std::span<const double> c) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff.get_d();
    for (Symbol x : t.mono.symbols()) v *= is_c(x) ? c[sym_index(x)] : m[sym_index(x)];
    total += v;
  }
  return total;
}

long Poly::max_index() const {
  long out = -1;
  for (const auto& t : terms_) {
    for (Symbol x : t.mono.symbols()) out = std::max(out, static_cast<long>(sym_index(x)));
  }
  return out;
}

MonomialOrder MonomialOrder::lex(std::size_t B) {
  MonomialOrder o;
  o.kind_ = Kind::Lex;
  o.m_rank_.resize(B);
  o.c_rank_.resize(B);
  for (std::size_t b = 0; b < B; ++b) {
    o.m_rank_[b] = static_cast<int>(b);
    o.c_rank_[b] = static_cast<int>(B + b);
  }
  return o;
}

MonomialOrder MonomialOrder::deglex(std::size_t B) {
  MonomialOrder o;
  o.kind_ = Kind::DegLex;
  o.m_rank_.resize(B);
  o.c_rank_.resize(B);
  for (std::size_t b = 0; b < B; ++b) {
    o.m_rank_[b] = static_cast<int>(B - 1 - b);
    o.c_rank_[b] = static_cast<int>(2 * B - 1 - b);
  }
  return o;
}

MonomialOrder::MonomialOrder(Kind kind, std::span<const Symbol> priority) : kind_(kind) {
  std::size_t B = priority.size() / 2;
  if (priority.size() != 2 * B) throw std::invalid_argument("priority must list every M and C symbol once");
  m_rank_.assign(B, -1);
  c_rank_.assign(B, -1);
  const int total = static_cast<int>(priority.size());
  for (int i = 0; i < total; ++i) {
    Symbol x = priority[static_cast<std::size_t>(i)];
    if (sym_index(x) >= B) throw std::invalid_argument("priority symbol index out of range");
    int& slot = is_c(x) ? c_rank_[sym_index(x)] : m_rank_[sym_index(x)];
    if (slot != -1) throw std::invalid_argument("priority lists a symbol twice");
    slot = total - 1 - i;
  }
}

MonomialOrder::Key MonomialOrder::key(const Monomial& mono) const {
  Key k{};
  k[0] = kind_ == Kind::DegLex ? static_cast<std::uint16_t>(mono.n) : 0;
  for (int i = 0; i < mono.n; ++i) k[static_cast<std::size_t>(i) + 1] = static_cast<std::uint16_t>(rank(mono.s[static_cast<std::size_t>(i)]) + 1);
  std::sort(k.begin() + 1, k.begin() + 1 + mono.n, std::greater<>());
  return k;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  Key ka = key(a);
  Key kb = key(b);
  return ka < kb ? -1 : (kb < ka ? 1 : 0);
}

std::vector<Term> ordered_terms(const Poly& p, const MonomialOrder& order) {
  std::vector<std::pair<MonomialOrder::Key, std::size_t>> keyed;
  for (std::size_t i = 0; i < p.terms().size(); ++i) keyed.emplace_back(order.key(p.terms()[i].mono), i);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return y.first < x.first; });
  std::vector<Term> out;
  for (const auto& [k, i] : keyed) out.push_back(p.terms()[i]);
  return out;
}

std::string monomial_string(const Monomial& mono) {
  if (mono.n == 0) return "1";
  std::string out;
  auto emit = [&](bool want_c) {
    for (int i = 0; i < mono.n;) {
      Symbol x = mono.s[static_cast<std::size_t>(i)];
      int e = 1;
      while (i + e < mono.n && mono.s[static_cast<std::size_t>(i + e)] == x) ++e;
      if (is_c(x) == want_c) {
        if (!out.empty()) out += '*';
        out += (want_c ? "C" : "M") + std::to_string(sym_index(x) + 1);
        if (e > 1) out += "^" + std::to_string(e);
      }
      i += e;
    }
  };
  emit(true);
  emit(false);
  return out;
}

std::string to_string(const Poly& p, const MonomialOrder& order) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : ordered_terms(p, order)) {
    Rational c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.mono.n == 0) {
      out += c.get_str();
    } else if (c == 1) {
      out += monomial_string(t.mono);
    } else {
      out += c.get_str() + "*" + monomial_string(t.mono);
    }
  }
  return out;
}

Poly parse_poly(const std::string& text) {
  std::string src;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) src += ch;
  }
  if (src.empty()) throw std::invalid_argument("empty polynomial");
  std::vector<Term> terms;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse polynomial '" + text + "': " + why);
  };
  while (i < src.size()) {
    int sign = 1;
    if (src[i] == '+' || src[i] == '-') {
      sign = src[i] == '-' ? -1 : 1;
      ++i;
    } else if (!terms.empty()) {
      fail("expected + or -");
    }
    Term term{Monomial::one(), Rational(sign)};
    bool any = false;
    while (i < src.size()) {
      if (std::isdigit(static_cast<unsigned char>(src[i]))) {
        std::size_t j = i;
        while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '/' || src[j] == '.')) ++j;
        term.coeff *= parse_rational(src.substr(i, j - i));
        i = j;
      } else if (src[i] == 'M' || src[i] == 'C') {
        bool c = src[i] == 'C';
        std::size_t j = i + 1;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        if (j == i + 1) fail("symbol without index");
        long idx = std::stol(src.substr(i + 1, j - i - 1));
        if (idx < 1 || idx > 0x7FFF) fail("symbol index out of range");
        int e = 1;
        i = j;
        if (i < src.size() && src[i] == '^') {
          j = i + 1;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
          if (j == i + 1) fail("missing exponent");
          e = std::stoi(src.substr(i + 1, j - i - 1));
          i = j;
        }
        Symbol x = c ? sym_c(static_cast<std::size_t>(idx - 1)) : sym_m(static_cast<std::size_t>(idx - 1));
        for (int k = 0; k < e; ++k) term.mono = term.mono * Monomial::of(x);
      } else {
        fail(std::string("unexpected character '") + src[i] + "'");
      }
      any = true;
      if (i < src.size() && src[i] == '*') {
        ++i;
        continue;
      }
      if (i < src.size() && (src[i] == 'M' || src[i] == 'C')) continue;
      break;
    }
    if (!any) fail("empty term");
    terms.push_back(std::move(term));
  }
  return Poly::from_terms(std::move(terms));
}

CompiledPoly::CompiledPoly(const Poly& p) {
  for (const auto& t : p.terms()) {
    coeffs_.push_back(t.coeff.get_d());
    starts_.push_back(static_cast<std::uint32_t>(symbols_.size()));
    for (Symbol x : t.mono.symbols()) symbols_.push_back(x);
  }
  starts_.push_back(static_cast<std::uint32_t>(symbols_.size()));
}

double CompiledPoly::operator()(std::span<const double> m, std::span<const double> c) const {
  double total = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double v = coeffs_[t];
    for (std::uint32_t k = starts_[t]; k < starts_[t + 1]; ++k) {
      Symbol x = symbols_[k];
      v *= is_c(x) ? c[sym_index(x)] : m[sym_index(x)];
    }
    total += v;
  }
  return total;
}

}  // namespace nilbary
