#include <gtest/gtest.h>

#include <array>

#include "nilbary/families.hpp"
#include "support.hpp"

using namespace nilbary;
using namespace nilbary::testing;

namespace {

Poly P(const std::string& s) { return parse_poly(s); }

std::vector<Poly> parse_all(const std::vector<std::string>& v) {
  std::vector<Poly> out;
  for (const auto& s : v) out.push_back(s == "0" ? Poly() : P(s));
  return out;
}

}  // namespace

TEST(GeneratePQ, PFamilyTwoLettersLevelThree) {
  auto pq = generate_pq(Shape{2, 3});
  auto expect = parse_all({
      "0",
      "0",
      "1/2 C2M1 - 1/2 C1M2",
      "-1/12 C1C2M1 + 1/12 C2M1^2 + 1/12 C1^2M2 - 1/12 C1M1M2 + 1/2 C3M1 - 1/2 C1M3",
      "1/12 C2^2M1 - 1/12 C1C2M2 - 1/12 C2M1M2 + 1/12 C1M2^2 - 1/2 C3M2 + 1/2 C2M3",
  });
  EXPECT_EQ(pq.p, expect);
}

TEST(GeneratePQ, QFamilyTwoLettersLevelThree) {
  auto pq = generate_pq(Shape{2, 3});
  auto expect = parse_all({
      "C1 - M1",
      "C2 - M2",
      "-1/2 C2M1 + 1/2 C1M2 + C3 - M3",
      "1/12 C1C2M1 + 1/12 C2M1^2 - 1/12 C1^2M2 - 1/12 C1M1M2 - 1/2 C3M1 + 1/2 C1M3 + C4 - M4",
      "-1/12 C2^2M1 + 1/12 C1C2M2 - 1/12 C2M1M2 + 1/12 C1M2^2 + 1/2 C3M2 - 1/2 C2M3 + C5 - M5",
  });
  EXPECT_EQ(pq.q, expect);
}

TEST(GeneratePQ, QMatchesNumericBchCoordinates) {
  // q_j(m, c) = B*_j(log(exp(-X) exp(Y))) for X = sum m_b B_b, Y = sum c_b B_b
  Rng rng(41);
  for (Shape s : {Shape{2, 4}, Shape{3, 3}, Shape{3, 4}}) {
    LyndonBasis basis(s);
    auto pq = generate_pq(s);
    auto m = gaussian_vector(rng, basis.size(), 0.5), c = gaussian_vector(rng, basis.size(), 0.5);
    Tensor g = mul(exp(-basis.to_tensor(m)), exp(basis.to_tensor(c)));
    auto coords = basis.from_tensor(log(g));
    for (std::size_t j = 0; j < basis.size(); ++j) EXPECT_NEAR(pq.q[j].evaluate(m, c), coords[j], 1e-13);
    // p_j = B*_j(BCH(X, Y)) - M_j - C_j
    auto bch = basis.from_tensor(log(mul(exp(basis.to_tensor(m)), exp(basis.to_tensor(c)))));
    for (std::size_t j = 0; j < basis.size(); ++j) EXPECT_NEAR(pq.p[j].evaluate(m, c), bch[j] - m[j] - c[j], 1e-13);
  }
}

TEST(GeneratePQ, PTermCountsUpToLevelFour) {
  const std::array<std::array<std::size_t, 5>, 3> table{{{2, 2, 2, 2, 2}, {6, 10, 10, 10, 10}, {12, 24, 30, 30, 30}}};
  for (int L = 2; L <= 4; ++L) {
    for (int d = 2; d <= 6; ++d) {
      EXPECT_EQ(term_counts(generate_pq(Shape{d, L}).p).max, table[static_cast<std::size_t>(L - 2)][static_cast<std::size_t>(d - 2)])
          << d << "," << L;
    }
  }
}

TEST(GenerateR, TwoLettersLevelThree) {
  auto r = generate_r(Shape{2, 3}, MonomialOrder::lex(5));
  EXPECT_EQ(r, parse_all({"0", "0", "0", "1/12 C1C2M1 - 1/12 C1^2M2", "-1/12 C2^2M1 + 1/12 C1C2M2"}));
}

TEST(GenerateR, ExtraTermTableUpToLevelFour) {
  const std::array<std::array<std::size_t, 5>, 3> table{{{0, 0, 0, 0, 0}, {2, 3, 3, 3, 3}, {3, 7, 9, 9, 9}}};
  for (int L = 2; L <= 4; ++L) {
    for (int d = 2; d <= 6; ++d) {
      RelationProcedure proc = reference_procedure(Shape{d, L});
      EXPECT_EQ(term_counts(generate_r(Shape{d, L}, proc.order, proc.options)).max,
                table[static_cast<std::size_t>(L - 2)][static_cast<std::size_t>(d - 2)])
          << d << "," << L;
    }
  }
}

TEST(GenerateR, LexGivesEightForThreeLettersLevelFour) {
  EXPECT_EQ(term_counts(generate_r(Shape{3, 4}, MonomialOrder::lex(32))).max, 8u);
}

TEST(GenerateR, RelationsVanishAtConsistentPoints) {
  // With C = M every q_j vanishes (BCH(-X, X) = 0), so every reduced
  // relation s_j = r_j + C_j - M_j vanishes there too.
  Rng rng(42);
  for (Shape s : {Shape{2, 4}, Shape{3, 4}}) {
    RelationProcedure proc = reference_procedure(s);
    auto r = generate_r(s, proc.order, proc.options);
    auto m = gaussian_vector(rng, r.size());
    for (std::size_t j = 0; j < r.size(); ++j) EXPECT_NEAR(r[j].evaluate(m, m), 0.0, 1e-12) << j;
  }
}

class WorkedReduction : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    RelationProcedure proc = reference_procedure(Shape{3, 4});
    r_ = generate_r(Shape{3, 4}, proc.order, proc.options);
  }
  static std::vector<Poly> r_;
};
std::vector<Poly> WorkedReduction::r_;

TEST_F(WorkedReduction, PerIndexTermCounts) {
  const std::vector<std::size_t> expect{0, 0, 0, 0, 0, 0, 2, 2, 2, 3, 3, 2, 2, 2, 2, 2,
                                        3, 5, 6, 3, 6, 2, 6, 5, 5, 5, 7, 5, 2, 2, 3, 2};
  EXPECT_EQ(term_counts(r_).counts, expect);
}

TEST_F(WorkedReduction, S25AndS27) {
  Poly s25 = r_[24] + Poly::c(24) - Poly::m(24);
  Poly s27 = r_[26] + Poly::c(26) - Poly::m(26);
  EXPECT_EQ(s25, P("-1/12 C3C6M1 + 1/12 C3C4M3 - 1/12 C1C6M3 - 1/12 C3^2M4 + 1/6 C1C3M6 + C25 - M25"));
  EXPECT_EQ(s27, P("1/6 C3C5M2 - 1/12 C2C5M3 + 1/4 C1C6M3 - 1/12 C2C3M5 - 1/4 C1C3M6 - 2C25 + C27 + 2M25 - M27"));
}

TEST_F(WorkedReduction, AsymmetrizedBchAgreesExceptAt27) {
  auto rt = generate_abch_r(Shape{3, 4});
  for (std::size_t j = 0; j < rt.size(); ++j) {
    if (j == 26) continue;
    EXPECT_EQ(rt[j], r_[j]) << j + 1;
  }
  EXPECT_EQ(rt[26], P("-1/6 C3C6M1 + 1/6 C3C5M2 + 1/6 C3C4M3 - 1/12 C2C5M3 + 1/12 C1C6M3 - 1/6 C3^2M4 - "
                      "1/12 C2C3M5 + 1/12 C1C3M6"));
  // the two differ by -2 s25
  EXPECT_EQ(rt[26] - r_[26], (r_[24] + Poly::c(24) - Poly::m(24)) * Rational(2));
}

TEST(AbchR, MatchesNumericAsymmetrizedBch) {
  Rng rng(43);
  Shape s{2, 5};
  LyndonBasis basis(s);
  auto rt = generate_abch_r(s);
  auto m = gaussian_vector(rng, basis.size(), 0.5), c = gaussian_vector(rng, basis.size(), 0.5);
  Tensor x = -basis.to_tensor(m), y = basis.to_tensor(c);
  Tensor bch = log(mul(exp(x), exp(y)));
  Tensor a = apply_ad_series(AdPowerSeries::f_series(s.L), x, bch - x);
  auto coords = basis.from_tensor(a);
  for (std::size_t j = 0; j < basis.size(); ++j) EXPECT_NEAR(rt[j].evaluate(m, c), coords[j] - c[j], 1e-13);
}

TEST(Abch, EvenComponentsVanishExactly) {
  RationalTensor a = abch_two_letters(8);
  for (int k = 2; k <= 8; k += 2) {
    for (const auto& v : a.level(k)) EXPECT_EQ(sgn(v), 0) << k;
  }
}

TEST(Abch, NumericEvenLevelsVanishForLevelOneInputs) {
  // with x, y at level 1 the degree-k part of aBCH(x, y) is its level-k block
  Rng rng(45);
  const Shape s{3, 7};
  for (int t = 0; t < 5; ++t) {
    Tensor x = from_level1(s, gaussian_vector(rng, 3)), y = from_level1(s, gaussian_vector(rng, 3));
    Tensor a = apply_ad_series(AdPowerSeries::f_series(s.L), x, log(mul(exp(x), exp(y))) - x);
    for (int k = 2; k <= s.L; k += 2) {
      for (double v : a.level(k)) EXPECT_LT(std::abs(v), 1e-12) << k;
    }
    double odd = 0.0;
    for (double v : a.level(3)) odd = std::max(odd, std::abs(v));
    EXPECT_GT(odd, 1e-4);
  }
}

TEST(Abch, DegreeThreeIsOneTwelfthDoubleBracket) {
  RationalTensor a = abch_two_letters(3);
  RationalTensor x(Shape{2, 3}), y(Shape{2, 3});
  x.level(1)[0] = 1;
  y.level(1)[1] = 1;
  RationalTensor expect = scale(bracket(bracket(x, y), y), Rational(1, 12));
  for (std::size_t i = 0; i < a.level(3).size(); ++i) EXPECT_EQ(a.level(3)[i], expect.level(3)[i]);
  // degree one part is y, i.e. aBCH(x, y) = y + ...
  EXPECT_EQ(a.level(1)[0], Rational(0));
  EXPECT_EQ(a.level(1)[1], Rational(1));
}

TEST(AmbientRemainder, MonomialCounts) {
  EXPECT_EQ(ambient_abch_remainder(3).monomial_count(), 3u);
  EXPECT_EQ(ambient_abch_remainder(4).monomial_count(), 9u);
  AmbientRemainder r5 = ambient_abch_remainder(5);
  EXPECT_EQ(r5.monomial_count(), 43u);
}

TEST(AmbientRemainder, LevelThreeCoefficients) {
  // 1/12 (c1 c1 b1 + b1 c1 c1 - 2 c1 b1 c1); letters: b1 = 0, c1 = 3
  AmbientRemainder r = ambient_abch_remainder(3);
  EXPECT_EQ(r.terms.at(Word{3, 3, 0}), Rational(1, 12));
  EXPECT_EQ(r.terms.at(Word{0, 3, 3}), Rational(1, 12));
  EXPECT_EQ(r.terms.at(Word{3, 0, 3}), Rational(-1, 6));
}

TEST(AmbientRemainder, LevelFiveSplitsBySingleLetterStructure) {
  // words in b1, c1 only: 5 with one b, 10 with two, 10 with three; the
  // 18 others use higher letters
  AmbientRemainder r = ambient_abch_remainder(5);
  std::size_t only_first = 0;
  std::map<int, std::size_t> by_b;
  for (const auto& [w, c] : r.terms) {
    bool first = true;
    int nb = 0;
    for (Letter x : w) {
      first = first && (x == 0 || x == 5);
      nb += x < 5 ? 1 : 0;
    }
    if (first) {
      ++only_first;
      ++by_b[nb];
    }
  }
  EXPECT_EQ(r.monomial_count() - only_first, 18u);
  EXPECT_EQ(by_b[1], 5u);   // [[[[b,c],c],c],c]
  EXPECT_EQ(by_b[2], 10u);
  EXPECT_EQ(by_b[3], 10u);
  EXPECT_EQ(r.count_by_b_letters().at(1), 5u + 18u);
  // single-b part is -1/720 [[[[b,c],c],c],c]
  EXPECT_EQ(r.terms.at(Word{0, 5, 5, 5, 5}), Rational(-1, 720));
  EXPECT_EQ(r.terms.at(Word{5, 0, 5, 5, 5}), Rational(1, 180));
  EXPECT_EQ(r.terms.at(Word{5, 5, 0, 5, 5}), Rational(-1, 120));
}

TEST(TaylorTerms, ExpansionIsExactForPolynomials) {
  auto pq = generate_pq(Shape{2, 4});
  auto u = update_polys_from_p(pq.p);
  Rng rng(46);
  std::uniform_int_distribution<long> num(-9, 9);
  for (std::size_t j = 0; j < u.size(); ++j) {
    std::vector<Rational> m, c, dm;
    for (std::size_t b = 0; b < u.size(); ++b) {
      m.emplace_back(num(rng), 5);
      c.emplace_back(num(rng), 7);
      dm.emplace_back(b < j ? Rational(num(rng), 3) : Rational(0));
    }
    std::vector<Rational> shifted(m);
    for (std::size_t b = 0; b < m.size(); ++b) shifted[b] += dm[b];
    Rational lhs = u[j].evaluate(shifted, c);
    Rational rhs = u[j].evaluate(m, c);
    for (const TaylorTerm& t : taylor_update_terms(u[j], j)) {
      Rational mono = t.inv_alpha_factorial;
      for (const auto& [b, e] : t.alpha) {
        for (int k = 0; k < e; ++k) mono *= dm[b];
      }
      rhs += mono * t.derivative.evaluate(m, c);
    }
    EXPECT_EQ(lhs, rhs) << j;
  }
}

TEST(TaylorTerms, CountWithinBinomialBound) {
  auto pq = generate_pq(Shape{3, 4});
  auto u = update_polys_from_p(pq.p);
  for (std::size_t j = 0; j < u.size(); ++j) {
    EXPECT_LE(taylor_update_terms(u[j], j).size(), taylor_term_bound(j + 1, u[j].degree()));
  }
}

TEST(UpdatePolys, SignConventions) {
  Poly p = P("1/2 C2M1 - 1/2 C1M2");
  auto u = update_polys_from_p({Poly(), Poly(), p});
  EXPECT_EQ(u[2], P("-1/2 C2M1 + 1/2 C1M2 + C3"));
  auto v = update_polys_from_r({Poly(), Poly(), P("1/12 C1C2M1")});
  EXPECT_EQ(v[2], P("1/12 C1C2M1 + C3"));
}
