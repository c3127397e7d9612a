#include <gtest/gtest.h>

#include <cmath>

#include "hpoly/errors.hpp"
#include "hpoly/ksz.hpp"
#include "hpoly/rng.hpp"
#include "hpoly/scaling.hpp"
#include "test_support.hpp"

namespace hpoly {
namespace {

TEST(KszSample, LinearFormHasUnitSigns) {
  const auto s = ksz::sample(1, 3, 17, ScalarField::Real);
  EXPECT_EQ(s.polynomial.size(), 3u);
  EXPECT_EQ(coeff_norm(s.polynomial, 1.0), 3.0);
  EXPECT_EQ(s.seed, 17u);
}

TEST(KszSample, SignsCoverEveryMonomial) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = ksz::sample(2, 4, seed, ScalarField::Complex);
    EXPECT_EQ(s.polynomial.size(), 10u);
    EXPECT_EQ(s.polynomial.field(), ScalarField::Complex);
    for (const auto& [alpha, a] : s.polynomial.coefficients()) {
      EXPECT_EQ(a.imag(), 0.0);
      EXPECT_EQ(std::fabs(a.real()), 1.0);
    }
  }
}

TEST(KszSample, ReconstructibleAndFieldIndependentSigns) {
  const auto a = ksz::sample(3, 5, 1234, ScalarField::Real);
  EXPECT_EQ(a.polynomial, ksz::sample(3, 5, 1234, ScalarField::Real).polynomial);
  EXPECT_EQ(complexify(a.polynomial), ksz::sample(3, 5, 1234, ScalarField::Complex).polynomial);
  EXPECT_NE(a.polynomial, ksz::sample(3, 5, 1235, ScalarField::Real).polynomial);
}

TEST(KszSample, SignsHaveZeroMean) {
  const MultiIndex alpha{1, 1, 0, 0};
  double sum = 0.0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    sum += ksz::sample(2, 4, ksz::sample_seed(77, s), ScalarField::Real).polynomial.coefficient(alpha).real();
  }
  EXPECT_NEAR(sum / 10000.0, 0.0, 0.03);
}

TEST(KszSample, CapIsEnforced) {
  EXPECT_THROW(ksz::sample(3, 50, 0, ScalarField::Real, 1000), BudgetExceeded);
  EXPECT_THROW(ksz::sample(40, 100, 0, ScalarField::Real), OverflowError);
}

TEST(KszClosedForm, Examples) {
  const auto s = ksz::sample(2, 4, 5, ScalarField::Real);
  EXPECT_EQ(ksz::coeff_norm_closed_form(s, 1.0), 10.0);
  EXPECT_NEAR(ksz::coeff_norm_closed_form(s, 4.0 / 3.0), 5.62341325, 1e-8);
  EXPECT_THROW(ksz::coeff_norm_closed_form(ksz::sample(3, 3, 5, ScalarField::Real), 1.0), DomainError);
}

TEST(KszClosedForm, MatchesDirectNorm) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int m = 1 + static_cast<int>(seed % 3);
    const int n = m + 1 + static_cast<int>(seed % 5);
    const auto s = ksz::sample(m, n, seed, seed % 2 ? ScalarField::Complex : ScalarField::Real);
    const auto d = count_decomposition(m, n);
    for (double r : {1.0, 1.2, 4.0 / 3.0}) {
      const double closed = ksz::coeff_norm_closed_form(s, r);
      EXPECT_NEAR(closed, coeff_norm(s.polynomial, r), 1e-12 * closed);
      EXPECT_NEAR(closed, std::pow(static_cast<double>(d.lower_term + d.remainder), 1.0 / r), 1e-12 * closed);
    }
  }
}

TEST(KszQuantile, TypeSevenInterpolation) {
  EXPECT_EQ(ksz::quantile({3.0, 1.0, 2.0, 4.0}, 0.5), 2.5);
  EXPECT_EQ(ksz::quantile({3.0, 1.0, 2.0, 4.0}, 0.25), 1.75);
  EXPECT_EQ(ksz::quantile({5.0}, 0.75), 5.0);
  EXPECT_EQ(ksz::quantile({1.0, 9.0}, 1.0), 9.0);
  EXPECT_THROW(ksz::quantile({}, 0.5), DomainError);
}

TEST(KszStatistic, LinearRealFormsAttainN) {
  const auto stat = ksz::supnorm_statistic(1, 5, 12, 3, ScalarField::Real, {});
  ASSERT_EQ(stat.samples.size(), 12u);
  for (const auto& row : stat.samples) {
    EXPECT_EQ(row.estimate.lower, 5.0);
    EXPECT_EQ(row.estimate.upper, 5.0);
  }
  EXPECT_EQ(stat.median, 5.0);
  EXPECT_EQ(stat.min, 5.0);
  EXPECT_EQ(stat.max, 5.0);
}

TEST(KszStatistic, WithinVertexAndL1Sandwich) {
  for (auto field : {ScalarField::Real, ScalarField::Complex}) {
    const auto stat = ksz::supnorm_statistic(2, 2, 50, 8, field, {});
    for (const auto& row : stat.samples) {
      EXPECT_GE(row.estimate.lower, row.vertex_max);
      EXPECT_LE(row.estimate.lower, 6.0);
      EXPECT_LE(row.estimate.lower, row.coeff_norm_1);
      EXPECT_EQ(row.coeff_norm_1, 3.0);
      EXPECT_LE(row.estimate.lower, row.estimate.upper);
    }
    EXPECT_LE(stat.q1, stat.median);
    EXPECT_LE(stat.median, stat.q3);
  }
  const auto wide = ksz::supnorm_statistic(2, 4, 100, 9, ScalarField::Complex, {});
  for (const auto& row : wide.samples) {
    EXPECT_GE(row.estimate.lower, row.vertex_max);
    EXPECT_LE(row.estimate.lower, row.coeff_norm_1);
    EXPECT_GE(row.estimate.upper, coeff_norm(ksz::sample(2, 4, row.seed, ScalarField::Complex).polynomial, kInfinity));
  }
}

TEST(KszStatistic, SamplesUseDerivedSeeds) {
  const auto stat = ksz::supnorm_statistic(2, 3, 5, 42, ScalarField::Real, {});
  for (const auto& row : stat.samples) {
    EXPECT_EQ(row.seed, derive_seed(42, {row.index}));
    EXPECT_EQ(row.seed, ksz::sample_seed(42, row.index));
    EXPECT_EQ(row.estimate.method.seed, ksz::search_seed(42, row.index));
  }
}

TEST(KszStatistic, IndependentOfWorkerCount) {
  SupNormBudget one;
  one.workers = 1;
  SupNormBudget many;
  many.workers = 4;
  const auto a = ksz::supnorm_statistic(2, 3, 10, 7, ScalarField::Complex, one);
  const auto b = ksz::supnorm_statistic(2, 3, 10, 7, ScalarField::Complex, many);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].estimate, b.samples[i].estimate);
  EXPECT_EQ(a.median, b.median);
}

TEST(KszStatistic, MedianGrowsLikeThreeHalvesPower) {
  const std::vector<int> ns{2, 4, 8, 16};
  std::vector<double> medians;
  for (int n : ns) medians.push_back(ksz::supnorm_statistic(2, n, 20, 2024, ScalarField::Complex, {}).median);
  const auto fit = fit_log_log(2, 1.0, ns, medians, "median_sup_lower", 20);
  EXPECT_NEAR(fit.slope, 1.5, 0.3);
}

TEST(KszStatistic, RejectsEmptySample) {
  EXPECT_THROW(ksz::supnorm_statistic(2, 3, 0, 1, ScalarField::Real, {}), DomainError);
}

}  // namespace
}  // namespace hpoly
