#include "evaluator.hpp"

#include <cmath>

namespace hpoly::detail {

TermTable::TermTable(const HomogeneousPolynomial& p) : n(p.variables()), m(p.degree()) {
  begin.push_back(0);
  for (const auto& [alpha, a] : p.coefficients()) {
    if (a == Scalar{}) continue;
    coef.push_back(a);
    for (int j = 0; j < n; ++j) {
      if (alpha[j] > 0) {
        var.push_back(j);
        exp.push_back(alpha[j]);
      }
    }
    begin.push_back(static_cast<std::uint32_t>(var.size()));
  }
}

TorusEvaluator::TorusEvaluator(const TermTable& table)
    : t_(table), powers_(static_cast<std::size_t>(table.n * (table.m + 1))) {}

void TorusEvaluator::fill_powers(std::span<const double> theta) {
  const int stride = t_.m + 1;
  for (int j = 0; j < t_.n; ++j) {
    Scalar* row = powers_.data() + j * stride;
    row[0] = 1.0;
    for (int k = 1; k <= t_.m; ++k) row[k] = std::polar(1.0, k * theta[static_cast<std::size_t>(j)]);
  }
}

Scalar TorusEvaluator::value(std::span<const double> theta) {
  fill_powers(theta);
  const int stride = t_.m + 1;
  Scalar sum{};
  for (std::size_t t = 0; t < t_.size(); ++t) {
    Scalar mono = t_.coef[t];
    for (auto f = t_.begin[t]; f < t_.begin[t + 1]; ++f) mono *= powers_[t_.var[f] * stride + t_.exp[f]];
    sum += mono;
  }
  return sum;
}

Scalar TorusEvaluator::value_grad(std::span<const double> theta, std::span<Scalar> grad) {
  fill_powers(theta);
  const int stride = t_.m + 1;
  for (auto& g : grad) g = Scalar{};
  Scalar sum{};
  for (std::size_t t = 0; t < t_.size(); ++t) {
    Scalar mono = t_.coef[t];
    for (auto f = t_.begin[t]; f < t_.begin[t + 1]; ++f) mono *= powers_[t_.var[f] * stride + t_.exp[f]];
    sum += mono;
    for (auto f = t_.begin[t]; f < t_.begin[t + 1]; ++f) grad[t_.var[f]] += static_cast<double>(t_.exp[f]) * mono;
  }
  // d/dtheta e^{i k theta} = i k e^{i k theta}
  for (auto& g : grad) g = Scalar{-g.imag(), g.real()};
  return sum;
}

CubeEvaluator::CubeEvaluator(const TermTable& table)
    : t_(table),
      powers_(static_cast<std::size_t>(table.n * (table.m + 1))),
      prefix_(static_cast<std::size_t>(table.m + 1)) {}

void CubeEvaluator::fill_powers(std::span<const double> x) {
  const int stride = t_.m + 1;
  for (int j = 0; j < t_.n; ++j) {
    double* row = powers_.data() + j * stride;
    row[0] = 1.0;
    for (int k = 1; k <= t_.m; ++k) row[k] = row[k - 1] * x[static_cast<std::size_t>(j)];
  }
}

double CubeEvaluator::value(std::span<const double> x) {
  fill_powers(x);
  const int stride = t_.m + 1;
  double sum = 0.0;
  for (std::size_t t = 0; t < t_.size(); ++t) {
    double mono = t_.coef[t].real();
    for (auto f = t_.begin[t]; f < t_.begin[t + 1]; ++f) mono *= powers_[t_.var[f] * stride + t_.exp[f]];
    sum += mono;
  }
  return sum;
}

Scalar CubeEvaluator::value_complex(std::span<const double> x) {
  fill_powers(x);
  const int stride = t_.m + 1;
  Scalar sum{};
  for (std::size_t t = 0; t < t_.size(); ++t) {
    double mono = 1.0;
    for (auto f = t_.begin[t]; f < t_.begin[t + 1]; ++f) mono *= powers_[t_.var[f] * stride + t_.exp[f]];
    sum += t_.coef[t] * mono;
  }
  return sum;
}

double CubeEvaluator::value_grad(std::span<const double> x, std::span<double> grad) {
  fill_powers(x);
  const int stride = t_.m + 1;
  for (auto& g : grad) g = 0.0;
  double sum = 0.0;
  for (std::size_t t = 0; t < t_.size(); ++t) {
    const auto first = t_.begin[t];
    const auto count = t_.begin[t + 1] - first;
    // prefix_[k] = product of the first k factors
    prefix_[0] = t_.coef[t].real();
    for (std::uint32_t k = 0; k < count; ++k) {
      prefix_[k + 1] = prefix_[k] * powers_[t_.var[first + k] * stride + t_.exp[first + k]];
    }
    sum += prefix_[count];
    double suffix = 1.0;
    for (std::uint32_t k = count; k-- > 0;) {
      const int v = t_.var[first + k];
      const int e = t_.exp[first + k];
      grad[static_cast<std::size_t>(v)] += prefix_[k] * suffix * e * powers_[v * stride + e - 1];
      suffix *= powers_[v * stride + e];
    }
  }
  return sum;
}

}  // namespace hpoly::detail
