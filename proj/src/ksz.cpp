#include "hpoly/ksz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hpoly/errors.hpp"
#include "hpoly/parallel.hpp"
#include "hpoly/rng.hpp"

namespace hpoly::ksz {

BernoulliSample sample(int m, int n, std::uint64_t seed, ScalarField field, std::uint64_t cap) {
  const std::uint64_t total = count(m, n);
  if (total > cap) {
    throw BudgetExceeded("Bernoulli polynomial needs " + std::to_string(total) + " coefficients, cap is " +
                         std::to_string(cap));
  }
  const CounterRng rng(seed);
  std::vector<Scalar> signs(static_cast<std::size_t>(total));
  for (std::uint64_t k = 0; k < total; ++k) signs[k] = static_cast<double>(rng.sign_at(k));
  return {HomogeneousPolynomial::from_dense(field, m, n, signs), seed};
}

double coeff_norm_closed_form(const BernoulliSample& s, double r) {
  if (s.n() <= s.m()) throw DomainError("closed form requires n > m");
  if (!(r >= 1.0)) throw DomainError("norm exponent r must be >= 1");
  const auto total = static_cast<double>(count(s.m(), s.n()));
  return std::isinf(r) ? 1.0 : std::pow(total, 1.0 / r);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) { return derive_seed(seed, {index}); }
std::uint64_t search_seed(std::uint64_t seed, std::uint64_t index) { return derive_seed(seed, {index, 1}); }

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

SupNormStatistic supnorm_statistic(int m, int n, int sample_count, std::uint64_t seed, ScalarField field,
                                   const SupNormBudget& budget) {
  if (sample_count < 1) throw DomainError("sample_count must be >= 1");
  validate(budget);
  SupNormStatistic out;
  out.samples.resize(static_cast<std::size_t>(sample_count));

  SupNormBudget inner = budget;
  inner.allow_gridless = true;
  inner.workers = 1;
  parallel_for(out.samples.size(), budget.workers, [&](std::size_t s) {
    auto& row = out.samples[s];
    row.index = s;
    row.seed = sample_seed(seed, s);
    const BernoulliSample draw = sample(m, n, row.seed, field);
    SupNormBudget b = inner;
    b.seed = search_seed(seed, s);
    row.estimate = supnorm(draw.polynomial, b);
    row.coeff_norm_1 = coeff_norm(draw.polynomial, 1.0);
    try {
      row.vertex_max = vertex_max(draw.polynomial, budget.vertex_cap).first;
    } catch (const BudgetExceeded&) {
      row.vertex_max = std::numeric_limits<double>::quiet_NaN();
    }
  });

  std::vector<double> lower;
  lower.reserve(out.samples.size());
  for (const auto& row : out.samples) lower.push_back(row.estimate.lower);
  out.median = quantile(lower, 0.5);
  out.q1 = quantile(lower, 0.25);
  out.q3 = quantile(lower, 0.75);
  out.min = *std::min_element(lower.begin(), lower.end());
  out.max = *std::max_element(lower.begin(), lower.end());
  return out;
}

}  // namespace hpoly::ksz
