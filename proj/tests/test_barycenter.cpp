#include <gtest/gtest.h>

#include "nilbary/barycenter.hpp"
#include "nilbary/families.hpp"
#include "support.hpp"

using namespace nilbary;
using namespace nilbary::testing;

namespace {

UpdateFamily reference_family(const Shape& s) {
  RelationProcedure proc = reference_procedure(s);
  return UpdateFamily::from_r(s, generate_r(s, proc.order, proc.options));
}

std::vector<BarycenterResult> all_algorithms(const DiscreteMeasure& nu, const UpdateFamily& fam,
                                             Execution exec = Execution::Parallel) {
  BarycenterOptions opt;
  opt.execution = exec;
  return {barycenter_lyndon(nu, fam, opt), barycenter_ambient(nu, opt), barycenter_abch(nu, opt),
          barycenter_pi1(nu, opt)};
}

}  // namespace

TEST(Measure, ValidateRejectsBadInput) {
  LyndonBasis basis(Shape{2, 3});
  Rng rng(51);
  DiscreteMeasure nu = DiscreteMeasure::uniform({random_grouplike(basis, rng), random_grouplike(basis, rng)});
  EXPECT_NO_THROW(nu.validate());
  DiscreteMeasure bad = nu;
  bad.weights = {0.45, 0.45};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = nu;
  bad.weights = {1.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = nu;
  bad.samples[1] = random_grouplike(LyndonBasis(Shape{3, 3}), rng);
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = nu;
  bad.samples[0][0] = 2.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_THROW(DiscreteMeasure{}.validate(), std::invalid_argument);
  EXPECT_THROW(barycenter_ambient(DiscreteMeasure{}), std::invalid_argument);
}

TEST(Barycenter, AllAlgorithmsMatchFixedPointOracle) {
  Rng rng(52);
  for (Shape s : {Shape{2, 3}, Shape{2, 5}, Shape{3, 4}, Shape{4, 3}}) {
    LyndonBasis basis(s);
    UpdateFamily fam = reference_family(s);
    for (int t = 0; t < 4; ++t) {
      DiscreteMeasure nu = random_measure(basis, 2 + static_cast<std::size_t>(t) * 2, rng);
      Tensor oracle = fixed_point_barycenter(nu);
      for (const auto& res : all_algorithms(nu, fam)) {
        EXPECT_LT(normalized_distance(res.mean, oracle, nu), 1e-12) << res.algorithm << " d=" << s.d << " L=" << s.L;
        EXPECT_LT(res.residual_norm / coefficient_scale(nu), 1e-12) << res.algorithm;
      }
    }
  }
}

TEST(Barycenter, PFamilyAgreesWithRFamily) {
  Rng rng(53);
  Shape s{3, 3};
  LyndonBasis basis(s);
  DiscreteMeasure nu = random_measure(basis, 5, rng);
  auto a = barycenter_lyndon(nu, reference_family(s));
  auto b = barycenter_lyndon(nu, UpdateFamily::from_p(s, generate_pq(s).p));
  EXPECT_LT(normalized_distance(a.mean, b.mean, nu), 1e-13);
}

TEST(Barycenter, ResidualVanishesAndLogCoordsConsistent) {
  Rng rng(54);
  Shape s{2, 4};
  LyndonBasis basis(s);
  DiscreteMeasure nu = random_measure(basis, 6, rng);
  auto res = barycenter_ambient(nu);
  EXPECT_LT(max_abs(residual(res.mean, nu)), 1e-12);
  EXPECT_LT(max_abs(res.mean - exp(basis.to_tensor(res.lyndon_coords))), 1e-12);
}

TEST(Barycenter, SingleSampleIsItsOwnMean) {
  Rng rng(55);
  LyndonBasis basis(Shape{3, 4});
  Tensor x = random_grouplike(basis, rng);
  DiscreteMeasure nu = DiscreteMeasure::uniform({x});
  for (const auto& res : all_algorithms(nu, reference_family(basis.shape()))) {
    EXPECT_LT(max_abs(res.mean - x), 1e-13) << res.algorithm;
  }
}

TEST(Barycenter, CommutingSamplesGiveNaiveMean) {
  // samples on one line through the origin of the Lie algebra commute
  Rng rng(56);
  LyndonBasis basis(Shape{2, 4});
  Tensor dir = random_lie(basis, rng);
  std::vector<Tensor> xs;
  for (double t : {-1.0, 0.3, 0.8, 2.0}) xs.push_back(exp(scale(dir, t)));
  DiscreteMeasure nu = DiscreteMeasure::uniform(xs);
  EXPECT_LT(max_abs(barycenter_ambient(nu).mean - naive_mean(nu)), 1e-13);
}

TEST(Barycenter, NaiveMeanDiffersForNonCommutingSamples) {
  Rng rng(57);
  LyndonBasis basis(Shape{2, 3});
  DiscreteMeasure nu = random_measure(basis, 3, rng, 0.1);
  EXPECT_GT(max_abs(barycenter_ambient(nu).mean - naive_mean(nu)), 1e-4);
}

TEST(Barycenter, BiInvariance) {
  Rng rng(58);
  for (Shape s : {Shape{2, 4}, Shape{3, 3}}) {
    LyndonBasis basis(s);
    DiscreteMeasure nu = random_measure(basis, 5, rng);
    Tensor g = random_grouplike(basis, rng), h = random_grouplike(basis, rng);
    Tensor m = barycenter_ambient(nu).mean;
    Tensor left = barycenter_ambient(translate_measure(nu, g, Side::Left)).mean;
    Tensor right = barycenter_ambient(translate_measure(nu, h, Side::Right)).mean;
    EXPECT_LT(max_abs(left - mul(g, m)), 1e-11);
    EXPECT_LT(max_abs(right - mul(m, h)), 1e-11);
    // inversion: mean of x_i^-1 is m^-1
    DiscreteMeasure inv_nu = nu;
    for (auto& x : inv_nu.samples) x = inv(x);
    EXPECT_LT(max_abs(barycenter_ambient(inv_nu).mean - inv(m)), 1e-11);
  }
}

TEST(Barycenter, SerialAndParallelAgreeBitwise) {
  Rng rng(59);
  Shape s{3, 4};
  LyndonBasis basis(s);
  UpdateFamily fam = reference_family(s);
  DiscreteMeasure nu = random_measure(basis, 9, rng);
  auto ser = all_algorithms(nu, fam, Execution::Serial);
  auto par = all_algorithms(nu, fam, Execution::Parallel);
  for (std::size_t k = 0; k < ser.size(); ++k) {
    EXPECT_LT(max_abs(ser[k].mean - par[k].mean), 1e-14) << ser[k].algorithm;
  }
  // parallel results do not depend on the thread count
  int saved = thread_count();
  set_thread_count(1);
  auto one = all_algorithms(nu, fam, Execution::Parallel);
  set_thread_count(3);
  auto three = all_algorithms(nu, fam, Execution::Parallel);
  set_thread_count(saved);
  for (std::size_t k = 0; k < one.size(); ++k) EXPECT_EQ(one[k].mean, three[k].mean) << one[k].algorithm;
}

TEST(Barycenter, SignedWeights) {
  Rng rng(60);
  LyndonBasis basis(Shape{2, 4});
  DiscreteMeasure nu = random_measure(basis, 4, rng, -0.8);
  ASSERT_TRUE(nu.has_negative_weights());
  Tensor oracle = fixed_point_barycenter(nu);
  for (const auto& res : all_algorithms(nu, reference_family(basis.shape()))) {
    EXPECT_LT(normalized_distance(res.mean, oracle, nu), 1e-12) << res.algorithm;
  }
}

TEST(Barycenter, LevelOneIsWeightedMeanOfIncrements) {
  Rng rng(61);
  LyndonBasis basis(Shape{3, 3});
  DiscreteMeasure nu = random_measure(basis, 5, rng);
  Tensor m = barycenter_pi1(nu).mean;
  for (std::size_t a = 0; a < 3; ++a) {
    double expect = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) expect += nu.weights[i] * nu.samples[i].level(1)[a];
    EXPECT_NEAR(m.level(1)[a], expect, 1e-14);
  }
}

TEST(Barycenter, FamilyShapeMismatchThrows) {
  Rng rng(62);
  LyndonBasis basis(Shape{2, 3});
  DiscreteMeasure nu = random_measure(basis, 3, rng);
  EXPECT_THROW(barycenter_lyndon(nu, reference_family(Shape{2, 4})), std::invalid_argument);
}

TEST(OnlineUpdate, MatchesBatchMean) {
  Rng rng(63);
  for (Shape s : {Shape{2, 4}, Shape{3, 3}}) {
    LyndonBasis basis(s);
    UpdateFamily fam = reference_family(s);
    OnlineUpdater updater(fam);
    std::vector<Tensor> xs{random_grouplike(basis, rng)};
    Tensor m = xs[0];
    for (int n = 1; n < 7; ++n) {
      Tensor x = random_grouplike(basis, rng);
      m = updater.update(m, xs, x);
      xs.push_back(x);
      DiscreteMeasure nu = DiscreteMeasure::uniform(xs);
      EXPECT_LT(normalized_distance(m, barycenter_ambient(nu).mean, nu), 1e-12) << n;
    }
    // repeated sample through the free function
    Tensor again = online_update(m, xs, xs[0], fam);
    xs.push_back(xs[0]);
    EXPECT_LT(max_abs(again - barycenter_ambient(DiscreteMeasure::uniform(xs)).mean), 1e-11);
  }
}

TEST(NormalizedDistance, ScalesByLargestSampleCoefficient) {
  Shape s{2, 2};
  Tensor a = Tensor::identity(s), b = Tensor::identity(s);
  b.level(1)[0] = 0.5;
  DiscreteMeasure small = DiscreteMeasure::uniform({a});
  EXPECT_DOUBLE_EQ(normalized_distance(a, b, small), 0.5);
  Tensor big = exp(from_level1(s, std::vector<double>{4.0, 0.0}));
  DiscreteMeasure large = DiscreteMeasure::uniform({big});
  EXPECT_DOUBLE_EQ(coefficient_scale(large), 8.0);
  EXPECT_DOUBLE_EQ(normalized_distance(a, b, large), 0.5 / 8.0);
}

TEST(Barycenter, CenteredMeasureHasIdentityMean) {
  // build samples whose weighted logs sum to zero
  Rng rng(64);
  LyndonBasis basis(Shape{3, 4});
  std::vector<Tensor> logs;
  Tensor sum(basis.shape());
  for (int i = 0; i < 4; ++i) {
    logs.push_back(random_lie(basis, rng));
    sum += logs.back();
  }
  logs.push_back(-sum);
  std::vector<Tensor> xs;
  for (const auto& l : logs) xs.push_back(exp(l));
  DiscreteMeasure nu = DiscreteMeasure::uniform(xs);
  EXPECT_LT(max_abs(naive_mean(nu) - Tensor::identity(basis.shape())), 1e-14);
  for (const auto& res : all_algorithms(nu, reference_family(basis.shape()))) {
    EXPECT_LT(max_abs(res.mean - Tensor::identity(basis.shape())), 1e-12) << res.algorithm;
  }
}

TEST(Barycenter, LowerLevelsIndependentOfTruncation) {
  Rng rng(65);
  LyndonBasis big(Shape{2, 5});
  DiscreteMeasure nu = random_measure(big, 5, rng);
  Tensor m5 = barycenter_ambient(nu).mean;
  for (int L = 1; L < 5; ++L) {
    DiscreteMeasure cut = nu;
    for (auto& x : cut.samples) x = truncate(x, L);
    Tensor mL = barycenter_ambient(cut).mean;
    EXPECT_LT(max_abs(mL - truncate(m5, L)), 1e-13) << L;
  }
}

TEST(Barycenter, FirstTwoLogLevelsAreWeightedAverages) {
  Rng rng(66);
  LyndonBasis basis(Shape{3, 4});
  DiscreteMeasure nu = random_measure(basis, 6, rng);
  Tensor lm = log(barycenter_abch(nu).mean);
  Tensor avg(basis.shape());
  for (std::size_t i = 0; i < nu.size(); ++i) avg += scale(log(nu.samples[i]), nu.weights[i]);
  for (int k = 1; k <= 2; ++k) {
    for (std::size_t j = 0; j < lm.level(k).size(); ++j) EXPECT_NEAR(lm.level(k)[j], avg.level(k)[j], 1e-13);
  }
}

TEST(TranslateMeasure, ComposesAndKeepsWeights) {
  Rng rng(67);
  LyndonBasis basis(Shape{2, 3});
  DiscreteMeasure nu = random_measure(basis, 3, rng);
  Tensor g = random_grouplike(basis, rng), h = random_grouplike(basis, rng);
  DiscreteMeasure a = translate_measure(translate_measure(nu, h, Side::Left), g, Side::Left);
  DiscreteMeasure b = translate_measure(nu, mul(g, h), Side::Left);
  EXPECT_EQ(a.weights, nu.weights);
  for (std::size_t i = 0; i < nu.size(); ++i) EXPECT_LT(max_abs(a.samples[i] - b.samples[i]), 1e-13);
  DiscreteMeasure same = translate_measure(nu, Tensor::identity(basis.shape()), Side::Right);
  for (std::size_t i = 0; i < nu.size(); ++i) EXPECT_EQ(same.samples[i], nu.samples[i]);
  EXPECT_THROW(translate_measure(nu, Tensor::identity(Shape{2, 4}), Side::Left), std::invalid_argument);
}

TEST(OnlineUpdate, RepeatingTheMeanLeavesItUnchanged) {
  Rng rng(68);
  LyndonBasis basis(Shape{3, 3});
  UpdateFamily fam = reference_family(basis.shape());
  std::vector<Tensor> xs{random_grouplike(basis, rng), random_grouplike(basis, rng), random_grouplike(basis, rng)};
  Tensor m = barycenter_ambient(DiscreteMeasure::uniform(xs)).mean;
  EXPECT_LT(max_abs(online_update(m, xs, m, fam) - m), 1e-13);
}
