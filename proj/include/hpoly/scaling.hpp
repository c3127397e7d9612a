#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <vector>

#include "hpoly/polynomial.hpp"
#include "hpoly/supnorm.hpp"

namespace hpoly {

/// 2m/(m+1), the right end of the admissible r-interval.
double bh_exponent(int m);

/// m/r - (m+1)/2 for r in [1, 2m/(m+1)]: the power of n in the sharp
/// bound ||P||_r <= L^m n^(m/r - (m+1)/2) ||P||_inf.
double sharp_exponent(int m, double r);

struct HoelderBound {
  double lhs = 0.0;          // ||x||_r
  double rhs = 0.0;          // N^(1/r - 1/s) ||x||_s
  std::size_t support = 0;   // N, number of nonzero entries
};

/// Both sides of ||x||_r <= N^(1/r-1/s) ||x||_s for 1 <= r <= s <= inf.
HoelderBound hoelder_interpolate(std::span<const double> x, double r, double s);

struct UpperBoundChain {
  double ratio_bound_shape = 0.0;  // count(m,n)^(1/r - (m+1)/(2m))
  double bh_norm = 0.0;            // ||P||_{2m/(m+1)}
  double lhs = 0.0;                // ||P||_r
  bool holds = false;              // lhs <= shape * bh_norm up to 1e-12 relative
};

/// Constant-free Hoelder step from ||P||_r to the Bohnenblust-Hille norm.
UpperBoundChain upper_bound_chain(const HomogeneousPolynomial& p, double r);

/// count(m,n)^(1/r) / (n^((m+1)/2) sqrt(log m)): the n-dependent part of
/// the lower bound any valid constant must satisfy. Requires n > m >= 2.
double ratio_lower_bound_theoretical(int m, int n, double r);

enum class RecordSource { Ksz, User };
std::string_view to_string(RecordSource source) noexcept;
RecordSource parse_record_source(std::string_view text);

/// One row of a scaling sweep. ratio uses the certified sup-norm lower
/// bound (an over-estimate of the true ratio); ratio_conservative uses the
/// upper bound (an under-estimate).
struct ExperimentRecord {
  int m = 0;
  int n = 0;
  double r = 0.0;
  std::uint64_t seed = 0;
  RecordSource source = RecordSource::Ksz;
  double coeff_norm_r = 0.0;
  double sup_lower = 0.0;
  double sup_upper = 0.0;
  double ratio = 0.0;
  double ratio_conservative = 0.0;
  bool grid_skipped = false;  // not part of the CSV row

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

/// Throws DomainError when r is outside [1, 2m/(m+1)] or p is zero.
ExperimentRecord make_record(const HomogeneousPolynomial& p, double r, std::uint64_t seed, RecordSource source,
                             const SupNormBudget& budget);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 distinct x.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double predicted_exponent = 0.0;
  std::vector<int> n_values;
  std::string statistic;
  int samples_per_n = 0;

  friend bool operator==(const ScalingFit&, const ScalingFit&) = default;
};

/// Least squares of log(values) on log(n). n_values strictly increasing, >= 3 entries.
ScalingFit fit_log_log(int m, double r, std::span<const int> n_values, std::span<const double> values,
                       std::string statistic, int samples_per_n);

struct ScalingOptions {
  int m = 2;
  double r = 1.0;
  std::vector<int> n_list;
  int samples_per_n = 30;
  std::uint64_t seed = 0;
  ScalarField field = ScalarField::Complex;
  SupNormBudget budget;
  std::stop_token stop;  // checked between work items
};

struct ScalingResult {
  std::vector<ExperimentRecord> records;  // ordered by (n, sample)
  std::optional<ScalingFit> fit;          // absent if fewer than 3 n have usable records
  std::size_t grid_skipped = 0;
  std::size_t failed = 0;                 // samples lost to budget errors
  bool cancelled = false;
};

/// For each n: Bernoulli samples, per-sample records, and the max of
/// ratio_conservative; then the log-log fit against n. Sample s at n uses
/// polynomial seed derive_seed(seed, {n, s}).
ScalingResult run_scaling_experiment(const ScalingOptions& options);

}  // namespace hpoly
