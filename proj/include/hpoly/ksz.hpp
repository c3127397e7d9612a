#pragma once

#include <cstdint>
#include <vector>

#include "hpoly/polynomial.hpp"
#include "hpoly/supnorm.hpp"

// Random Bernoulli polynomials P(w) = sum_{|alpha| = m} eps_alpha w^alpha
// with i.i.d. uniform signs, the Kahane-Salem-Zygmund extremal family.
namespace hpoly::ksz {

struct BernoulliSample {
  HomogeneousPolynomial polynomial;
  std::uint64_t seed;

  int m() const noexcept { return polynomial.degree(); }
  int n() const noexcept { return polynomial.variables(); }
};

inline constexpr std::uint64_t kDefaultCoefficientCap = std::uint64_t{1} << 24;

/// The k-th sign (canonical enumeration order) is a pure function of
/// (seed, k). Throws BudgetExceeded when count(m, n) > cap.
BernoulliSample sample(int m, int n, std::uint64_t seed, ScalarField field,
                       std::uint64_t cap = kDefaultCoefficientCap);

/// count(m, n)^(1/r), the coefficient norm of any sign pattern. Requires n > m.
double coeff_norm_closed_form(const BernoulliSample& s, double r);

struct SampleSummary {
  std::size_t index = 0;
  std::uint64_t seed = 0;  // polynomial seed of this sample
  SupNormEstimate estimate;
  double vertex_max = 0.0;     // max |P| over {-1, 1}^n (NaN if over the vertex cap)
  double coeff_norm_1 = 0.0;
};

struct SupNormStatistic {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<SampleSummary> samples;
};

/// Draws `sample_count` Bernoulli polynomials (sample s uses seed
/// derive_seed(seed, {s})) and summarizes their certified sup-norm lower
/// bounds. Samples whose grid is over budget fall back to the gridless
/// certificate and are marked by estimate.method.grid_skipped.
SupNormStatistic supnorm_statistic(int m, int n, int sample_count, std::uint64_t seed, ScalarField field,
                                   const SupNormBudget& budget);

/// Seed of the s-th polynomial and of its sup-norm search.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);
std::uint64_t search_seed(std::uint64_t seed, std::uint64_t index);

/// Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile(std::vector<double> values, double q);

}  // namespace hpoly::ksz
