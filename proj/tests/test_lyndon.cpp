#include <gtest/gtest.h>

#include <array>

#include "nilbary/lyndon.hpp"
#include "support.hpp"

using namespace nilbary;
using namespace nilbary::testing;

namespace {

Word w1(const std::string& digits) {
  Word w;
  for (char c : digits) w.push_back(static_cast<Letter>(c - '1'));
  return w;
}

}  // namespace

TEST(LyndonWords, ShortListD2L4) {
  std::vector<Word> expect{w1("1"), w1("2"), w1("12"), w1("112"), w1("122"), w1("1112"), w1("1122"), w1("1222")};
  EXPECT_EQ(lyndon_words(Shape{2, 4}), expect);
}

TEST(LyndonWords, SortedByLengthThenLex) {
  auto words = lyndon_words(Shape{3, 5});
  for (std::size_t i = 1; i < words.size(); ++i) {
    const auto& a = words[i - 1];
    const auto& b = words[i];
    EXPECT_TRUE(a.size() < b.size() || (a.size() == b.size() && a < b));
  }
  for (const auto& w : words) EXPECT_TRUE(is_lyndon(w));
}

TEST(LyndonWords, IsLyndonExamples) {
  EXPECT_TRUE(is_lyndon(w1("1")));
  EXPECT_TRUE(is_lyndon(w1("1223")));
  EXPECT_FALSE(is_lyndon(w1("11")));
  EXPECT_FALSE(is_lyndon(w1("1212")));
  EXPECT_FALSE(is_lyndon(w1("21")));
}

TEST(LieDim, MatchesBruteForceCount) {
  for (int d = 1; d <= 4; ++d) {
    for (int L = 1; L <= 6; ++L) {
      EXPECT_EQ(lie_dim(Shape{d, L}), brute_force_lyndon_count(d, L)) << d << "," << L;
      EXPECT_EQ(lie_dim(Shape{d, L}), lyndon_words(Shape{d, L}).size());
    }
  }
}

TEST(LieDim, DimensionTable) {
  const std::array<std::array<std::size_t, 6>, 4> table{{
      {3, 6, 10, 15, 21, 28},
      {5, 14, 30, 55, 91, 140},
      {8, 32, 90, 205, 406, 728},
      {14, 80, 294, 829, 1960, 4088},
  }};
  for (int L = 2; L <= 5; ++L) {
    for (int d = 2; d <= 7; ++d) {
      EXPECT_EQ(lie_dim(Shape{d, L}), table[static_cast<std::size_t>(L - 2)][static_cast<std::size_t>(d - 2)]);
    }
  }
}

TEST(LieDim, DegenerateCases) {
  EXPECT_EQ(lie_dim(Shape{1, 5}), 1u);
  EXPECT_EQ(lie_dim(Shape{5, 1}), 5u);
}

TEST(Basis, StandardFactorization) {
  LyndonBasis basis(Shape{2, 4});
  auto check = [&](const std::string& w, const std::string& u, const std::string& v) {
    auto b = basis.index_of(w1(w));
    auto [l, r] = basis.factorization(b);
    EXPECT_EQ(basis.word(static_cast<std::size_t>(l)), w1(u)) << w;
    EXPECT_EQ(basis.word(static_cast<std::size_t>(r)), w1(v)) << w;
  };
  check("12", "1", "2");
  check("112", "1", "12");
  check("122", "12", "2");
  check("1122", "1", "122");
  check("1222", "122", "2");
  EXPECT_EQ(basis.factorization(0).first, -1);
}

TEST(Basis, BracketExpansionByHand) {
  LyndonBasis basis(Shape{2, 3});
  // [1,2] = 12 - 21
  Tensor e = basis.expansion_tensor(basis.index_of(w1("12")));
  EXPECT_EQ(e.at(w1("12")), 1.0);
  EXPECT_EQ(e.at(w1("21")), -1.0);
  // [1,[1,2]] = 112 - 2*121 + 211
  Tensor f = basis.expansion_tensor(basis.index_of(w1("112")));
  EXPECT_EQ(f.at(w1("112")), 1.0);
  EXPECT_EQ(f.at(w1("121")), -2.0);
  EXPECT_EQ(f.at(w1("211")), 1.0);
  EXPECT_EQ(max_abs(f), 2.0);
}

TEST(Basis, ExpansionIsTriangularWithUnitDiagonal) {
  LyndonBasis basis(Shape{3, 4});
  for (std::size_t b = 0; b < basis.size(); ++b) {
    Tensor e = basis.expansion_tensor(b);
    EXPECT_EQ(e.at(basis.word(b)), 1.0);
    for (std::size_t v = 0; v < basis.size(); ++v) {
      if (basis.level(v) != basis.level(b) || !(basis.word(v) < basis.word(b))) continue;
      EXPECT_EQ(e.at(basis.word(v)), 0.0);
    }
  }
}

TEST(Basis, ExpansionsAreLieElements) {
  LyndonBasis basis(Shape{2, 5});
  for (std::size_t b = 0; b < basis.size(); ++b) {
    auto [l, r] = basis.factorization(b);
    if (l < 0) continue;
    Tensor br = bracket(basis.expansion_tensor(static_cast<std::size_t>(l)),
                        basis.expansion_tensor(static_cast<std::size_t>(r)));
    EXPECT_EQ(br, basis.expansion_tensor(b));
  }
}

TEST(Basis, RoundTrip) {
  Rng rng(21);
  for (int d = 2; d <= 4; ++d) {
    LyndonBasis basis(Shape{d, 4});
    auto v = gaussian_vector(rng, basis.size());
    EXPECT_LT(max_abs_diff(basis.from_tensor(basis.to_tensor(v)), v), 1e-13);
  }
}

TEST(Basis, FromTensorOfZeroAndUnitVectors) {
  LyndonBasis basis(Shape{2, 3});
  EXPECT_EQ(basis.from_tensor(Tensor(basis.shape())), LieCoeffVec(basis.size(), 0.0));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    LieCoeffVec unit(basis.size(), 0.0);
    unit[b] = 1.0;
    EXPECT_EQ(basis.from_tensor(basis.expansion_tensor(b)), unit);
  }
}

TEST(Basis, RejectsNonLieInput) {
  LyndonBasis basis(Shape{2, 2});
  Tensor x(basis.shape());
  x.at(w1("11")) = 1.0;
  EXPECT_THROW(basis.from_tensor(x), NotLieElement);
  Tensor y(basis.shape());
  y.at(w1("12")) = 1.0;  // not antisymmetric
  try {
    basis.from_tensor(y);
    FAIL();
  } catch (const NotLieElement& e) {
    EXPECT_GT(e.residual(), 0.5);
  }
  Tensor c(basis.shape());
  c[0] = 1.0;
  EXPECT_THROW(basis.from_tensor(c), NotLieElement);
}

TEST(Basis, ExactConversion) {
  LyndonBasis basis(Shape{3, 3});
  std::vector<Rational> v;
  for (std::size_t b = 0; b < basis.size(); ++b) {
    v.emplace_back(static_cast<long>(b) - 4, 7);
    v.back().canonicalize();
  }
  EXPECT_EQ(basis.from_tensor_unchecked(basis.to_tensor_exact(v)), v);
}

TEST(Star, ExampleFormulaExactOnRationals) {
  LyndonBasis basis(Shape{2, 2});
  Rng rng(22);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
  for (int t = 0; t < 100; ++t) {
    std::vector<Rational> u, v;
    for (int k = 0; k < 3; ++k) {
      u.emplace_back(num(rng), den(rng));
      v.emplace_back(num(rng), den(rng));
    }
    for (auto& x : u) x.canonicalize();
    for (auto& x : v) x.canonicalize();
    std::vector<Rational> expect{u[0] + v[0], u[1] + v[1], u[2] + v[2] + Rational(1, 2) * (u[0] * v[1] - u[1] * v[0])};
    EXPECT_EQ(basis.star_exact(u, v), expect);
  }
}

TEST(Star, GroupAxioms) {
  Rng rng(23);
  LyndonBasis basis(Shape{3, 4});
  auto u = gaussian_vector(rng, basis.size(), 0.5);
  auto v = gaussian_vector(rng, basis.size(), 0.5);
  auto w = gaussian_vector(rng, basis.size(), 0.5);
  LieCoeffVec zero(basis.size(), 0.0), neg(u);
  for (auto& x : neg) x = -x;
  EXPECT_LT(max_abs_diff(basis.star(u, zero), u), 1e-14);
  EXPECT_LT(max_abs_diff(basis.star(zero, u), u), 1e-14);
  EXPECT_LT(max_abs_diff(basis.star(u, neg), zero), 1e-14);
  EXPECT_LT(max_abs_diff(basis.star(basis.star(u, v), w), basis.star(u, basis.star(v, w))), 1e-13);
}

TEST(Star, HeisenbergMatrixIsomorphism) {
  using M3 = std::array<std::array<double, 3>, 3>;
  auto phi = [](const LieCoeffVec& u) {
    return M3{{{1.0, u[0], u[2] + 0.5 * u[0] * u[1]}, {0.0, 1.0, u[1]}, {0.0, 0.0, 1.0}}};
  };
  auto matmul = [](const M3& a, const M3& b) {
    M3 c{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  LyndonBasis basis(Shape{2, 2});
  Rng rng(24);
  for (int t = 0; t < 100; ++t) {
    auto u = gaussian_vector(rng, 3), v = gaussian_vector(rng, 3);
    M3 lhs = matmul(phi(u), phi(v)), rhs = phi(basis.star(u, v));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(lhs[i][j], rhs[i][j], 1e-12);
  }
}
