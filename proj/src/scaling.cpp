#include "hpoly/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hpoly/errors.hpp"
#include "hpoly/ksz.hpp"
#include "hpoly/parallel.hpp"
#include "hpoly/rng.hpp"

namespace hpoly {

namespace {

void require_r_in_range(int m, double r) {
  if (m < 1) throw DomainError("degree m must be >= 1");
  const double right = bh_exponent(m);
  // A few ulps of slack so that decimal spellings of 2m/(m+1) are accepted.
  if (!(r >= 1.0) || r > right * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
    throw DomainError("r = " + std::to_string(r) + " outside [1, 2m/(m+1)] for m = " + std::to_string(m));
  }
}

}  // namespace

double bh_exponent(int m) {
  if (m < 1) throw DomainError("degree m must be >= 1");
  return 2.0 * m / (m + 1);
}

double sharp_exponent(int m, double r) {
  require_r_in_range(m, r);
  return m / r - (m + 1) / 2.0;
}

HoelderBound hoelder_interpolate(std::span<const double> x, double r, double s) {
  if (!(r >= 1.0)) throw DomainError("hoelder_interpolate requires r >= 1");
  if (!(r <= s)) throw DomainError("hoelder_interpolate requires r <= s");
  HoelderBound out;
  out.support = static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [](double v) { return v != 0.0; }));
  out.lhs = lp_norm(x, r);
  const double exponent = 1.0 / r - (std::isinf(s) ? 0.0 : 1.0 / s);
  out.rhs = out.support == 0 ? 0.0 : std::pow(static_cast<double>(out.support), exponent) * lp_norm(x, s);
  return out;
}

UpperBoundChain upper_bound_chain(const HomogeneousPolynomial& p, double r) {
  const int m = p.degree();
  require_r_in_range(m, r);
  if (p.is_zero()) throw DomainError("upper_bound_chain requires a nonzero polynomial");
  UpperBoundChain out;
  const auto total = static_cast<double>(count(m, p.variables()));
  out.ratio_bound_shape = std::pow(total, 1.0 / r - (m + 1.0) / (2.0 * m));
  out.bh_norm = coeff_norm(p, bh_exponent(m));
  out.lhs = coeff_norm(p, r);
  out.holds = out.lhs <= out.ratio_bound_shape * out.bh_norm * (1.0 + 1e-12);
  return out;
}

double ratio_lower_bound_theoretical(int m, int n, double r) {
  if (m < 2) throw DomainError("ratio_lower_bound_theoretical requires m >= 2 (log m > 0)");
  if (n <= m) throw DomainError("ratio_lower_bound_theoretical requires n > m");
  require_r_in_range(m, r);
  const auto total = static_cast<double>(count(m, n));
  return std::pow(total, 1.0 / r) / (std::pow(static_cast<double>(n), (m + 1) / 2.0) * std::sqrt(std::log(m)));
}

std::string_view to_string(RecordSource source) noexcept {
  return source == RecordSource::Ksz ? "ksz" : "user";
}

RecordSource parse_record_source(std::string_view text) {
  if (text == "ksz") return RecordSource::Ksz;
  if (text == "user") return RecordSource::User;
  throw DomainError("unknown record source '" + std::string(text) + "'");
}

ExperimentRecord make_record(const HomogeneousPolynomial& p, double r, std::uint64_t seed, RecordSource source,
                             const SupNormBudget& budget) {
  require_r_in_range(p.degree(), r);
  if (p.is_zero()) throw DomainError("ratio of the zero polynomial is undefined");
  const SupNormEstimate sup = supnorm(p, budget);
  ExperimentRecord rec;
  rec.m = p.degree();
  rec.n = p.variables();
  rec.r = r;
  rec.seed = seed;
  rec.source = source;
  rec.coeff_norm_r = coeff_norm(p, r);
  rec.sup_lower = sup.lower;
  rec.sup_upper = sup.upper;
  rec.ratio = rec.coeff_norm_r / sup.lower;
  rec.ratio_conservative = rec.coeff_norm_r / sup.upper;
  rec.grid_skipped = sup.method.grid_skipped;
  return rec;
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("least_squares: x and y differ in length");
  if (x.size() < 2) throw DomainError("least_squares needs at least two points");
  const auto count = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  if (sxx == 0.0) throw DomainError("least_squares needs at least two distinct x values");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += e * e;
  }
  fit.residual_rms = std::sqrt(ss / count);
  return fit;
}

ScalingFit fit_log_log(int m, double r, std::span<const int> n_values, std::span<const double> values,
                       std::string statistic, int samples_per_n) {
  if (n_values.size() < 3) throw DomainError("scaling fit needs at least 3 n values");
  if (n_values.size() != values.size()) throw DimensionMismatch("scaling fit: n and value counts differ");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1 || (i > 0 && n_values[i] <= n_values[i - 1])) {
      throw DomainError("n values must be positive and strictly increasing");
    }
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) throw DomainError("scaling fit needs positive finite values");
    lx.push_back(std::log(static_cast<double>(n_values[i])));
    ly.push_back(std::log(values[i]));
  }
  const LineFit line = least_squares(lx, ly);
  ScalingFit fit;
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.residual_rms = line.residual_rms;
  fit.predicted_exponent = sharp_exponent(m, r);
  fit.n_values.assign(n_values.begin(), n_values.end());
  fit.statistic = std::move(statistic);
  fit.samples_per_n = samples_per_n;
  return fit;
}

ScalingResult run_scaling_experiment(const ScalingOptions& o) {
  require_r_in_range(o.m, o.r);
  if (o.n_list.size() < 3) throw DomainError("n_list needs at least 3 entries");
  for (std::size_t i = 0; i < o.n_list.size(); ++i) {
    if (o.n_list[i] < 1 || (i > 0 && o.n_list[i] <= o.n_list[i - 1])) {
      throw DomainError("n_list must be positive and strictly increasing");
    }
  }
  if (o.samples_per_n < 1) throw DomainError("samples_per_n must be >= 1");
  validate(o.budget);

  const auto per_n = static_cast<std::size_t>(o.samples_per_n);
  const std::size_t items = o.n_list.size() * per_n;
  std::vector<std::optional<ExperimentRecord>> slots(items);
  std::vector<char> failed(items, 0);

  SupNormBudget inner = o.budget;
  inner.allow_gridless = true;
  inner.workers = 1;

  parallel_for(
      items, o.budget.workers,
      [&](std::size_t item) {
        const int n = o.n_list[item / per_n];
        const std::uint64_t s = item % per_n;
        const std::uint64_t poly_seed = derive_seed(o.seed, {static_cast<std::uint64_t>(n), s});
        SupNormBudget b = inner;
        b.seed = derive_seed(o.seed, {static_cast<std::uint64_t>(n), s, 1});
        try {
          const auto draw = ksz::sample(o.m, n, poly_seed, o.field);
          slots[item] = make_record(draw.polynomial, o.r, poly_seed, RecordSource::Ksz, b);
        } catch (const BudgetExceeded&) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          ExperimentRecord rec;
          rec.m = o.m;
          rec.n = n;
          rec.r = o.r;
          rec.seed = poly_seed;
          rec.coeff_norm_r = nan;
          rec.sup_lower = nan;
          rec.sup_upper = nan;
          rec.ratio = nan;
          rec.ratio_conservative = nan;
          slots[item] = rec;
          failed[item] = 1;
        }
      },
      o.stop);

  ScalingResult out;
  std::vector<int> fit_n;
  std::vector<double> fit_values;
  for (std::size_t i = 0; i < o.n_list.size(); ++i) {
    double best = -1.0;
    for (std::size_t s = 0; s < per_n; ++s) {
      const std::size_t item = i * per_n + s;
      if (!slots[item]) {
        out.cancelled = true;
        continue;
      }
      const auto& rec = *slots[item];
      out.records.push_back(rec);
      if (failed[item]) {
        ++out.failed;
        continue;
      }
      if (rec.grid_skipped) ++out.grid_skipped;
      best = std::max(best, rec.ratio_conservative);
    }
    if (best > 0.0) {
      fit_n.push_back(o.n_list[i]);
      fit_values.push_back(best);
    }
  }
  if (fit_n.size() >= 3) {
    out.fit = fit_log_log(o.m, o.r, fit_n, fit_values, "max_ratio_conservative", o.samples_per_n);
  }
  return out;
}

}  // namespace hpoly
