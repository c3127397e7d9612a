#pragma once

// Fast evaluation kernels for the search loops. These skip compensated
// summation; final reported values always go through hpoly::evaluate.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hpoly/polynomial.hpp"

namespace hpoly::detail {

// Nonzero terms of a polynomial, each stored as its list of (variable,
// exponent) factors with exponent > 0.
struct TermTable {
  explicit TermTable(const HomogeneousPolynomial& p);

  std::size_t size() const noexcept { return coef.size(); }

  int n = 0;
  int m = 0;
  std::vector<Scalar> coef;
  std::vector<std::uint32_t> begin;  // factors of term t: [begin[t], begin[t+1])
  std::vector<int> var;
  std::vector<int> exp;
};

// P(e^{i theta}) and its derivatives with respect to the angles.
class TorusEvaluator {
public:
  explicit TorusEvaluator(const TermTable& table);

  Scalar value(std::span<const double> theta);
  // grad[j] = dP/dtheta_j
  Scalar value_grad(std::span<const double> theta, std::span<Scalar> grad);

private:
  void fill_powers(std::span<const double> theta);

  const TermTable& t_;
  std::vector<Scalar> powers_;  // powers_[j * (m + 1) + k] = e^{i k theta_j}
};

// P(x) at real points, with real (or, for value_complex, complex) coefficients.
class CubeEvaluator {
public:
  explicit CubeEvaluator(const TermTable& table);

  double value(std::span<const double> x);
  Scalar value_complex(std::span<const double> x);
  // grad[j] = dP/dx_j
  double value_grad(std::span<const double> x, std::span<double> grad);

private:
  void fill_powers(std::span<const double> x);

  const TermTable& t_;
  std::vector<double> powers_;
  std::vector<double> prefix_;
};

}  // namespace hpoly::detail
