#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "concav/error.hpp"
#include "concav/relu_bounds.hpp"
#include "oracles.hpp"

using concav::CassiniVariant;
using concav::OracleOptions;
using concav::OracleStrategy;
using concav::Vector;
using concav::Weights;
namespace ct = concav::testing;

namespace {

// x1 = (1, 0), x2 = (0, 2)
concav::ReluDataset two_axis_points(std::size_t k) {
  return concav::make_dataset(2, {1.0, 0.0, 0.0, 2.0}, Weights(k, 2));
}

concav::ReluDataset one_d_fixture() {
  return concav::make_dataset(1, {1.0, -2.0}, Weights(1, 1, {1.0}));
}

OracleOptions pattern_enum() {
  OracleOptions o;
  o.strategy = OracleStrategy::kPatternEnum;
  return o;
}

OracleOptions random_search(std::size_t budget, std::uint64_t seed) {
  OracleOptions o;
  o.strategy = OracleStrategy::kRandomSearch;
  o.budget = budget;
  o.seed = seed;
  return o;
}

}  // namespace

TEST(SinglePoint, Examples) {
  EXPECT_DOUBLE_EQ(concav::alpha_single_point(Vector{3.0, 4.0}, 5), 125.0);
  EXPECT_DOUBLE_EQ(concav::alpha_single_point(Vector{0.0, 0.0}, 3), 0.0);
  EXPECT_DOUBLE_EQ(concav::alpha_single_point(Vector{0.6, 0.8}, 1), 1.0);
}

TEST(Alpha1, TwoAxisPoints) {
  // (3 / 2) * (1 + 4)
  EXPECT_DOUBLE_EQ(concav::bound_alpha1(two_axis_points(3), 3), 7.5);
}

TEST(Alpha1, SinglePointReducesToSinglePointFormula) {
  const auto data = concav::make_dataset(3, {1.0, -2.0, 0.5}, Weights(1, 3));
  EXPECT_DOUBLE_EQ(concav::bound_alpha1(data, 4),
                   concav::alpha_single_point(data.input(0), 4));
}

TEST(Alpha2, TwoAxisPointsAgainstExplicitGram) {
  const auto data = two_axis_points(3);
  const double reference = ct::lambda_max(ct::allactive_gram(data, 3));
  EXPECT_NEAR(reference, 6.0, 1e-12);
  EXPECT_NEAR(concav::bound_alpha2(data, 3), reference, 1e-9);
}

TEST(Alpha2, SinglePointIsRankOne) {
  const auto data = concav::make_dataset(2, {3.0, 4.0}, Weights(1, 2));
  for (std::size_t k = 1; k <= 5; ++k)
    EXPECT_NEAR(concav::bound_alpha2(data, k), 25.0 * static_cast<double>(k),
                1e-9 * 25.0 * static_cast<double>(k));
}

TEST(SecondMoment, MatchesDataMatrixProduct) {
  const auto data = concav::generate_dataset({4, 1, 37, 3});
  const Eigen::MatrixXd x = ct::data_matrix(data);
  const Eigen::MatrixXd ref = x.transpose() * x / 37.0;
  EXPECT_LT((ct::to_eigen(concav::second_moment(data)) - ref).norm(), 1e-12);
}

TEST(AbarGram, MatchesKroneckerConstruction) {
  const auto data = concav::generate_dataset({3, 4, 20, 5});
  const Eigen::MatrixXd ref = ct::allactive_gram(data, 4);
  EXPECT_LT((ct::to_eigen(concav::abar_gram(data, 4)) - ref).norm(), 1e-12);
}

TEST(Alpha3, SinglePointAxisVector) {
  const auto data = concav::make_dataset(2, {1.0, 0.0}, Weights(1, 2));
  EXPECT_DOUBLE_EQ(concav::bound_alpha3(data, 1), 1.0);
}

TEST(Alpha3, DominatesAlpha2) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto data = concav::generate_dataset({4, 3, 40, s});
    EXPECT_GE(concav::bound_alpha3(data, 3), concav::bound_alpha2(data, 3) - 1e-9);
  }
}

TEST(Alpha4, SinglePointAxisVectorStandard) {
  const auto data = concav::make_dataset(2, {1.0, 0.0}, Weights(1, 2));
  // M = [[1, 0], [0, 0]]: centre 1/2, half-gap 1/2, radii zero.
  const double reference = (1.0 + 0.0) / 2.0 + std::sqrt(0.25 + 0.0);
  EXPECT_DOUBLE_EQ(concav::bound_alpha4(data, 1, CassiniVariant::kStandard), reference);
  EXPECT_DOUBLE_EQ(concav::bound_alpha4(data, 1, CassiniVariant::kUnhalved), 1.5);
}

TEST(Alpha4, EqualDiagonalUniformRadiiMatchesAlpha3) {
  // Two points (1, 1) and (1, -1): S = I, so M has unit diagonal and every
  // row has the same radius k - 1.
  const auto data = concav::make_dataset(2, {1.0, 1.0, 1.0, -1.0}, Weights(3, 2));
  const double a3 = concav::bound_alpha3(data, 3);
  EXPECT_DOUBLE_EQ(a3, 3.0);
  EXPECT_DOUBLE_EQ(concav::bound_alpha4(data, 3), a3);
}

TEST(Alpha4, NeedsTwoCoordinates) {
  const auto data = concav::make_dataset(1, {2.0}, Weights(1, 1));
  EXPECT_THROW(concav::bound_alpha4(data, 1), concav::InvalidInput);
}

TEST(Oracle, SinglePointEqualsAlpha2ForBothStrategies) {
  const auto data = concav::make_dataset(2, {0.3, -1.1}, Weights(1, 2));
  for (std::size_t k = 1; k <= 3; ++k) {
    const double expected = concav::alpha_single_point(data.input(0), k);
    EXPECT_NEAR(concav::alpha_oracle(data, k, pattern_enum()), expected, 1e-12);
    // Random draws cannot hit w = 0 but every draw is either fully active or
    // partially active; for one point the top eigenvalue is #active * ||x||^2
    // and with 2000 draws all-active occurs.
    EXPECT_NEAR(concav::alpha_oracle(data, k, random_search(2000, 1)), expected,
                1e-9 * expected);
  }
}

TEST(Oracle, OneDimensionalFixture) {
  const auto data = one_d_fixture();
  // Reference: enumerate w in {-1, 0, 1}, covering every sign pattern on R.
  double reference = 0.0;
  for (double w : {-1.0, 0.0, 1.0}) {
    double h = 0.0;
    for (double x : {1.0, -2.0})
      if (x * w >= 0.0) h += x * x;
    reference = std::max(reference, h / 2.0);
  }
  EXPECT_DOUBLE_EQ(reference, 2.5);
  EXPECT_NEAR(concav::alpha_oracle(data, 1, pattern_enum()), reference, 1e-12);
}

TEST(Oracle, RealizablePatternsOfOneDimensionalFixture) {
  auto p = concav::realizable_patterns(one_d_fixture());
  std::sort(p.begin(), p.end());
  EXPECT_EQ(p, (std::vector<std::uint32_t>{0b01, 0b10, 0b11}));
}

TEST(Oracle, RealizablePatternsCoverRandomDirections) {
  const auto data = concav::generate_dataset({2, 1, 8, 4});
  const auto p = concav::realizable_patterns(data);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int t = 0; t < 2000; ++t) {
    const Vector w{g(rng), g(rng)};
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (concav::dot(data.input(i), w) >= 0.0) mask |= 1u << i;
    EXPECT_NE(std::find(p.begin(), p.end(), mask), p.end());
  }
}

TEST(Oracle, PatternEnumLimits) {
  EXPECT_THROW(concav::alpha_oracle(concav::generate_dataset({2, 2, 40, 0}), 2,
                                    pattern_enum()),
               concav::UnsupportedOperation);
  EXPECT_THROW(concav::alpha_oracle(concav::generate_dataset({5, 2, 6, 0}), 2,
                                    pattern_enum()),
               concav::UnsupportedOperation);
  auto tight = pattern_enum();
  tight.max_combinations = 3;
  EXPECT_THROW(concav::alpha_oracle(concav::generate_dataset({2, 3, 8, 0}), 3, tight),
               concav::UnsupportedOperation);
}

TEST(Oracle, RandomSearchNeedsBudget) {
  EXPECT_THROW(concav::alpha_oracle(one_d_fixture(), 1, random_search(0, 0)),
               concav::InvalidInput);
}

TEST(Oracle, NeverAboveAlpha2) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto data = concav::generate_dataset({2, 2, 8, s});
    const double a2 = concav::bound_alpha2(data, 2);
    EXPECT_LE(concav::alpha_oracle(data, 2, pattern_enum()), a2 + 1e-9 * a2);
    EXPECT_LE(concav::alpha_oracle(data, 2, random_search(500, s)), a2 + 1e-9 * a2);
  }
}

TEST(Oracle, PatternEnumDominatesRandomSearch) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto data = concav::generate_dataset({2, 2, 6, s});
    EXPECT_GE(concav::alpha_oracle(data, 2, pattern_enum()) * (1 + 1e-9),
              concav::alpha_oracle(data, 2, random_search(2000, s)));
  }
}

TEST(Oracle, StrategyNames) {
  for (auto s : {OracleStrategy::kPatternEnum, OracleStrategy::kRandomSearch})
    EXPECT_EQ(concav::parse_oracle_strategy(concav::to_string(s)), s);
  EXPECT_THROW(concav::parse_oracle_strategy("exhaustive"), concav::InvalidInput);
}

TEST(BoundReport, ChainHoldsAndVariantRecorded) {
  const concav::NetConfig cfg{3, 2, 30, 4};
  const auto data = concav::generate_dataset(cfg);
  const auto r = concav::compute_bounds(data, cfg, CassiniVariant::kStandard,
                                        random_search(300, 4));
  EXPECT_TRUE(r.chain_holds());
  EXPECT_TRUE(r.alpha4.has_value());
  EXPECT_TRUE(r.alpha_oracle.has_value());
  EXPECT_EQ(r.alpha4_variant, CassiniVariant::kStandard);
  const auto lit = concav::compute_bounds(data, cfg, CassiniVariant::kUnhalved);
  EXPECT_EQ(lit.alpha4_variant, CassiniVariant::kUnhalved);
  EXPECT_FALSE(lit.alpha_oracle.has_value());
}

TEST(BoundReport, ScalarCaseHasNoAlpha4) {
  const concav::NetConfig cfg{1, 1, 1, 0};
  const auto data = concav::generate_dataset(cfg);
  const auto r = concav::compute_bounds(data, cfg, CassiniVariant::kStandard,
                                        pattern_enum());
  EXPECT_FALSE(r.alpha4.has_value());
  const double x2 = data.input(0)[0] * data.input(0)[0];
  EXPECT_EQ(r.alpha1, x2);
  EXPECT_NEAR(r.alpha2, x2, 1e-12 * x2);
  EXPECT_NEAR(*r.alpha_oracle, x2, 1e-12 * x2);
}

TEST(BoundReport, BrokenChainIsReported) {
  concav::BoundReport r;
  r.alpha1 = 1.0;
  r.alpha2 = 2.0;
  r.alpha3 = 3.0;
  EXPECT_FALSE(r.chain_holds());
}
