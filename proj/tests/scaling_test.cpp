#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hpoly/errors.hpp"
#include "hpoly/ksz.hpp"
#include "hpoly/rng.hpp"
#include "hpoly/scaling.hpp"
#include "test_support.hpp"

namespace hpoly {
namespace {

HomogeneousPolynomial all_ones(int m, int n) {
  return HomogeneousPolynomial::from_dense(ScalarField::Real, m, n, std::vector<Scalar>(count(m, n), 1.0));
}

TEST(Exponents, BhExponent) {
  EXPECT_EQ(bh_exponent(1), 1.0);
  EXPECT_EQ(bh_exponent(2), 4.0 / 3.0);
  EXPECT_THROW(bh_exponent(0), DomainError);
}

TEST(Exponents, SharpExponentExamples) {
  EXPECT_EQ(sharp_exponent(3, 1.2), 0.5);
  for (int m = 1; m <= 12; ++m) {
    EXPECT_EQ(sharp_exponent(m, 1.0), (m - 1) / 2.0);
    EXPECT_EQ(sharp_exponent(m, bh_exponent(m)), 0.0);
  }
}

TEST(Exponents, SharpExponentDecreasesInR) {
  for (int m = 2; m <= 8; ++m) {
    double previous = kInfinity;
    for (int k = 0; k <= 50; ++k) {
      const double r = 1.0 + (bh_exponent(m) - 1.0) * k / 50.0;
      const double e = sharp_exponent(m, r);
      EXPECT_LT(e, previous);
      previous = e;
    }
  }
}

TEST(Exponents, SharpExponentRejectsROutsideRange) {
  EXPECT_THROW(sharp_exponent(2, 0.99), DomainError);
  EXPECT_THROW(sharp_exponent(2, 1.34), DomainError);
  EXPECT_THROW(sharp_exponent(1, 1.5), DomainError);
  EXPECT_THROW(sharp_exponent(0, 1.0), DomainError);
}

TEST(Hoelder, Examples) {
  const auto eq = hoelder_interpolate(std::vector<double>{1.0, 1.0, 1.0}, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(eq.lhs, 3.0);
  EXPECT_DOUBLE_EQ(eq.rhs, 3.0);
  EXPECT_EQ(eq.support, 3u);
  const auto strict = hoelder_interpolate(std::vector<double>{1.0, 0.0, 0.0}, 1.0, 2.0);
  EXPECT_EQ(strict.lhs, 1.0);
  EXPECT_EQ(strict.rhs, 1.0);  // support is 1
  const auto inf = hoelder_interpolate(std::vector<double>{2.0, 2.0}, 1.0, kInfinity);
  EXPECT_DOUBLE_EQ(inf.rhs, 4.0);
  EXPECT_THROW(hoelder_interpolate(std::vector<double>{1.0}, 2.0, 1.0), DomainError);
  EXPECT_THROW(hoelder_interpolate(std::vector<double>{1.0}, 0.5, 1.0), DomainError);
}

TEST(Hoelder, PropertySweep) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> x(1 + trial % 12);
    for (auto& v : x) v = u(rng) < 0.2 ? 0.0 : u(rng);
    const double r = 1.0 + 3.0 * u(rng);
    const double s = trial % 10 == 0 ? kInfinity : r + 3.0 * u(rng);
    const auto h = hoelder_interpolate(x, r, s);
    EXPECT_LE(h.lhs, h.rhs * (1.0 + 1e-12));
    EXPECT_NEAR(h.lhs, testing::naive_lp(x, r), 1e-12 * std::max(1.0, h.lhs));
  }
}

TEST(UpperBoundChain, EqualityCases) {
  const auto a = upper_bound_chain(all_ones(2, 2), 1.0);
  EXPECT_DOUBLE_EQ(a.lhs, 3.0);
  EXPECT_NEAR(a.ratio_bound_shape * a.bh_norm, 3.0, 1e-14);
  EXPECT_TRUE(a.holds);
  const auto b = upper_bound_chain(ksz::sample(2, 4, 1, ScalarField::Real).polynomial, 1.0);
  EXPECT_NEAR(b.ratio_bound_shape * b.bh_norm, 10.0, 1e-13);
  EXPECT_NEAR(b.ratio_bound_shape, std::pow(10.0, 0.25), 1e-14);
}

TEST(UpperBoundChain, StrictForNonFlatCoefficients) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + trial % 3;
    const auto p = testing::random_polynomial(rng, trial % 2 ? ScalarField::Complex : ScalarField::Real, m, 2 + trial % 4);
    const double r = 1.0 + (bh_exponent(m) - 1.0) * (trial % 7) / 8.0;
    const auto c = upper_bound_chain(p, r);
    EXPECT_TRUE(c.holds);
    EXPECT_LT(c.lhs, c.ratio_bound_shape * c.bh_norm);
  }
  EXPECT_THROW(upper_bound_chain(HomogeneousPolynomial(ScalarField::Real, 2, 2, {{MultiIndex{2, 0}, 0.0}}), 1.0),
               DomainError);
  EXPECT_THROW(upper_bound_chain(all_ones(2, 2), 1.5), DomainError);
}

TEST(TheoreticalRatio, Examples) {
  const double log2 = std::log(2.0);
  EXPECT_NEAR(ratio_lower_bound_theoretical(2, 4, 1.0), 10.0 / (8.0 * std::sqrt(log2)), 1e-12);
  EXPECT_NEAR(ratio_lower_bound_theoretical(2, 4, 1.0), 1.50140, 1e-5);
  EXPECT_NEAR(ratio_lower_bound_theoretical(2, 4, 4.0 / 3.0), std::pow(10.0, 0.75) / (8.0 * std::sqrt(log2)), 1e-12);
  const double growth = ratio_lower_bound_theoretical(2, 8, 1.0) / ratio_lower_bound_theoretical(2, 4, 1.0);
  EXPECT_NEAR(growth, 36.0 / 10.0 / std::pow(2.0, 1.5), 1e-12);
  EXPECT_NEAR(growth / std::sqrt(2.0), 1.0, 0.25);
  EXPECT_THROW(ratio_lower_bound_theoretical(1, 4, 1.0), DomainError);
  EXPECT_THROW(ratio_lower_bound_theoretical(2, 2, 1.0), DomainError);
}

TEST(TheoreticalRatio, NoiseFreeSlopeApproachesSharpExponent) {
  const std::vector<int> ns{8, 12, 16, 24, 32, 48, 64};
  for (double r : {1.0, 1.1, 4.0 / 3.0}) {
    std::vector<double> values;
    for (int n : ns) values.push_back(ratio_lower_bound_theoretical(2, n, r));
    EXPECT_NEAR(fit_log_log(2, r, ns, values, "theory", 1).slope, sharp_exponent(2, r), 0.15);
  }
}

TEST(LeastSquares, ExactLine) {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  const auto f = least_squares(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-15);
  EXPECT_NEAR(f.intercept, 1.0, 1e-15);
  EXPECT_NEAR(f.residual_rms, 0.0, 1e-15);
  EXPECT_THROW(least_squares(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}), DomainError);
  EXPECT_THROW(least_squares(x, std::vector<double>{1.0}), DimensionMismatch);
}

TEST(FitLogLog, PowerLawAndValidation) {
  const std::vector<int> ns{2, 4, 8};
  const std::vector<double> v{3.0 * std::pow(2.0, 0.7), 3.0 * std::pow(4.0, 0.7), 3.0 * std::pow(8.0, 0.7)};
  const auto f = fit_log_log(2, 1.0, ns, v, "max_ratio_conservative", 30);
  EXPECT_NEAR(f.slope, 0.7, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
  EXPECT_EQ(f.predicted_exponent, 0.5);
  EXPECT_EQ(f.n_values, ns);
  EXPECT_EQ(f.samples_per_n, 30);
  EXPECT_THROW(fit_log_log(2, 1.0, std::vector<int>{2, 4}, std::vector<double>{1.0, 2.0}, "x", 1), DomainError);
  EXPECT_THROW(fit_log_log(2, 1.0, std::vector<int>{2, 2, 4}, v, "x", 1), DomainError);
  EXPECT_THROW(fit_log_log(2, 1.0, ns, std::vector<double>{1.0, 0.0, 1.0}, "x", 1), DomainError);
}

TEST(Records, InvariantsOnRandomPolynomials) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 3;
    const auto p = testing::random_polynomial(rng, trial % 2 ? ScalarField::Complex : ScalarField::Real, m, 2 + trial % 2);
    const double r = 1.0 + (bh_exponent(m) - 1.0) * (trial % 5) / 4.0;
    const auto rec = make_record(p, r, 7, RecordSource::User, {});
    EXPECT_LE(rec.ratio_conservative, rec.ratio);
    EXPECT_LE(rec.sup_lower, rec.sup_upper);
    EXPECT_EQ(rec.coeff_norm_r, coeff_norm(p, r));
    EXPECT_EQ(rec.ratio, rec.coeff_norm_r / rec.sup_lower);
    EXPECT_EQ(rec.source, RecordSource::User);
    EXPECT_TRUE(upper_bound_chain(p, r).holds);
  }
  const auto p = all_ones(2, 2);
  EXPECT_THROW(make_record(p, 1.5, 0, RecordSource::User, {}), DomainError);
  EXPECT_THROW(make_record(HomogeneousPolynomial(ScalarField::Real, 2, 2, {{MultiIndex{2, 0}, 0.0}}), 1.0, 0,
                           RecordSource::User, {}),
               DomainError);
}

TEST(RecordSourceText, RoundTrips) {
  EXPECT_EQ(parse_record_source(to_string(RecordSource::Ksz)), RecordSource::Ksz);
  EXPECT_EQ(parse_record_source(to_string(RecordSource::User)), RecordSource::User);
  EXPECT_THROW(parse_record_source("other"), DomainError);
}

ScalingOptions small_options() {
  ScalingOptions o;
  o.m = 2;
  o.r = 1.0;
  o.n_list = {2, 3, 4};
  o.samples_per_n = 4;
  o.seed = 11;
  return o;
}

TEST(ScalingExperiment, LinearControlHasZeroSlope) {
  ScalingOptions o;
  o.m = 1;
  o.r = 1.0;
  o.n_list = {2, 4, 8};
  o.samples_per_n = 5;
  o.seed = 3;
  o.field = ScalarField::Real;
  const auto result = run_scaling_experiment(o);
  ASSERT_TRUE(result.fit);
  EXPECT_NEAR(result.fit->slope, 0.0, 0.05);
  for (const auto& rec : result.records) EXPECT_EQ(rec.ratio, 1.0);
}

TEST(ScalingExperiment, RecordsAreOrderedAndSeeded) {
  const auto o = small_options();
  const auto result = run_scaling_experiment(o);
  ASSERT_EQ(result.records.size(), 12u);
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto& rec = result.records[i];
    const int n = o.n_list[i / 4];
    EXPECT_EQ(rec.n, n);
    EXPECT_EQ(rec.seed, derive_seed(o.seed, {static_cast<std::uint64_t>(n), i % 4}));
    EXPECT_EQ(rec.source, RecordSource::Ksz);
    EXPECT_LE(rec.ratio_conservative, rec.ratio);
    const auto p = ksz::sample(2, n, rec.seed, ScalarField::Complex).polynomial;
    EXPECT_LE(rec.coeff_norm_r, upper_bound_chain(p, 1.0).ratio_bound_shape * upper_bound_chain(p, 1.0).bh_norm * (1 + 1e-12));
  }
  ASSERT_TRUE(result.fit);
  EXPECT_EQ(result.fit->statistic, "max_ratio_conservative");
  EXPECT_EQ(result.fit->predicted_exponent, 0.5);
}

TEST(ScalingExperiment, DeterministicAndWorkerIndependent) {
  auto o = small_options();
  o.budget.workers = 1;
  const auto a = run_scaling_experiment(o);
  o.budget.workers = 3;
  const auto b = run_scaling_experiment(o);
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(a.fit, b.fit);
}

TEST(ScalingExperiment, CancelsBetweenItems) {
  std::stop_source stop;
  stop.request_stop();
  auto o = small_options();
  o.stop = stop.get_token();
  const auto result = run_scaling_experiment(o);
  EXPECT_TRUE(result.cancelled);
  EXPECT_FALSE(result.fit);
}

TEST(ScalingExperiment, BudgetFailuresBecomeFlaggedRecords) {
  auto o = small_options();
  o.n_list = {2, 3, 4, 6};
  o.samples_per_n = 2;
  o.budget.grid_cap = 40;  // only n = 2 fits the grid
  const auto result = run_scaling_experiment(o);
  EXPECT_EQ(result.failed, 0u);
  EXPECT_GT(result.grid_skipped, 0u);
  std::size_t flagged = 0;
  for (const auto& rec : result.records) flagged += rec.grid_skipped ? 1 : 0;
  EXPECT_EQ(flagged, result.grid_skipped);
}

TEST(ScalingExperiment, ValidatesOptions) {
  auto o = small_options();
  o.n_list = {2, 4};
  EXPECT_THROW(run_scaling_experiment(o), DomainError);
  o = small_options();
  o.n_list = {4, 2, 8};
  EXPECT_THROW(run_scaling_experiment(o), DomainError);
  o = small_options();
  o.r = 2.0;
  EXPECT_THROW(run_scaling_experiment(o), DomainError);
  o = small_options();
  o.samples_per_n = 0;
  EXPECT_THROW(run_scaling_experiment(o), DomainError);
}

}  // namespace
}  // namespace hpoly
