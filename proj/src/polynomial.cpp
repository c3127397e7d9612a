#include "hpoly/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hpoly/errors.hpp"
#include "summation.hpp"

namespace hpoly {

std::string_view to_string(ScalarField field) noexcept {
  return field == ScalarField::Real ? "real" : "complex";
}

ScalarField parse_field(std::string_view text) {
  if (text == "real") return ScalarField::Real;
  if (text == "complex") return ScalarField::Complex;
  throw DomainError("unknown scalar field '" + std::string(text) + "' (expected real|complex)");
}

HomogeneousPolynomial::HomogeneousPolynomial(ScalarField field, int m, int n,
                                             CoefficientMap coefficients)
    : field_(field), m_(m), n_(n), coefficients_(std::move(coefficients)) {
  if (m < 1) throw DomainError("degree m must be >= 1");
  if (n < 1) throw DomainError("variable count n must be >= 1");
  for (const auto& [alpha, a] : coefficients_) {
    if (alpha.variables() != n) {
      throw DimensionMismatch("multi-index " + alpha.to_string() + " has " +
                              std::to_string(alpha.variables()) + " variables, expected " +
                              std::to_string(n));
    }
    if (alpha.degree() != m) {
      throw DomainError("multi-index " + alpha.to_string() + " has degree " +
                        std::to_string(alpha.degree()) + ", expected " + std::to_string(m));
    }
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw DomainError("non-finite coefficient at " + alpha.to_string());
    }
    if (field == ScalarField::Real && a.imag() != 0.0) {
      throw DomainError("complex coefficient at " + alpha.to_string() + " in a real polynomial");
    }
  }
}

HomogeneousPolynomial HomogeneousPolynomial::from_dense(ScalarField field, int m, int n,
                                                        std::span<const Scalar> coefficients) {
  const auto indices = enumerate(m, n);
  if (coefficients.size() != indices.size()) {
    throw DimensionMismatch("dense coefficient vector has " + std::to_string(coefficients.size()) +
                            " entries, expected " + std::to_string(indices.size()));
  }
  CoefficientMap map;
  auto hint = map.end();
  for (std::size_t k = 0; k < indices.size(); ++k) {
    hint = map.emplace_hint(hint, indices[k], coefficients[k]);
    ++hint;
  }
  return HomogeneousPolynomial(field, m, n, std::move(map));
}

Scalar HomogeneousPolynomial::coefficient(const MultiIndex& alpha) const {
  auto it = coefficients_.find(alpha);
  return it == coefficients_.end() ? Scalar{} : it->second;
}

bool HomogeneousPolynomial::is_zero() const noexcept {
  return std::all_of(coefficients_.begin(), coefficients_.end(),
                     [](const auto& kv) { return kv.second == Scalar{}; });
}

bool HomogeneousPolynomial::is_multilinear() const noexcept {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](const auto& kv) {
    return kv.second == Scalar{} || kv.first.is_multilinear();
  });
}

HomogeneousPolynomial HomogeneousPolynomial::scaled(Scalar c) const {
  if (field_ == ScalarField::Real && c.imag() != 0.0) {
    throw DomainError("complex scale factor for a real polynomial");
  }
  CoefficientMap out = coefficients_;
  for (auto& kv : out) kv.second *= c;
  return HomogeneousPolynomial(field_, m_, n_, std::move(out));
}

namespace {

template <typename T>
Scalar evaluate_impl(const HomogeneousPolynomial& p, std::span<const T> z) {
  if (static_cast<int>(z.size()) != p.variables()) {
    throw DimensionMismatch("point has " + std::to_string(z.size()) + " coordinates, polynomial has " +
                            std::to_string(p.variables()) + " variables");
  }
  detail::NeumaierSum re;
  detail::NeumaierSum im;
  for (const auto& [alpha, a] : p.coefficients()) {
    Scalar monomial{1.0, 0.0};
    for (int j = 0; j < p.variables(); ++j) {
      for (int e = alpha[j]; e > 0; --e) monomial *= z[static_cast<std::size_t>(j)];
    }
    const Scalar term = a * monomial;
    re.add(term.real());
    im.add(term.imag());
  }
  return {re.value(), im.value()};
}

}  // namespace

Scalar evaluate(const HomogeneousPolynomial& p, std::span<const Scalar> z) {
  if (p.field() == ScalarField::Real) {
    for (const auto& zj : z) {
      if (zj.imag() != 0.0) throw DomainError("complex point passed to a real polynomial");
    }
  }
  return evaluate_impl(p, z);
}

Scalar evaluate(const HomogeneousPolynomial& p, std::span<const double> x) {
  return evaluate_impl(p, x);
}

double lp_norm(std::span<const double> moduli, double r) {
  if (!(r >= 1.0)) throw DomainError("norm exponent r must be >= 1");
  double largest = 0.0;
  for (double v : moduli) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("norm input must be finite and non-negative");
    largest = std::max(largest, v);
  }
  if (largest == 0.0 || std::isinf(r)) return largest;
  detail::NeumaierSum sum;
  if (r == 1.0) {
    for (double v : moduli) sum.add(v);
    return sum.value();
  }
  for (double v : moduli) sum.add(std::pow(v / largest, r));
  return largest * std::pow(sum.value(), 1.0 / r);
}

double coeff_norm(const HomogeneousPolynomial& p, double r) {
  std::vector<double> moduli;
  moduli.reserve(p.size());
  for (const auto& kv : p.coefficients()) moduli.push_back(std::abs(kv.second));
  return lp_norm(moduli, r);
}

HomogeneousPolynomial complexify(const HomogeneousPolynomial& p) {
  if (p.field() != ScalarField::Real) throw DomainError("complexify expects a real polynomial");
  return HomogeneousPolynomial(ScalarField::Complex, p.degree(), p.variables(), p.coefficients());
}

}  // namespace hpoly
