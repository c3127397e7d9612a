#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "hpoly/multiindex.hpp"

namespace hpoly {

enum class ScalarField { Real, Complex };

std::string_view to_string(ScalarField field) noexcept;
ScalarField parse_field(std::string_view text);

using Scalar = std::complex<double>;
using CoefficientMap = std::map<MultiIndex, Scalar, CanonicalOrder>;

/// P(z) = sum_{|alpha| = m} a_alpha z^alpha on l_inf^n over R or C.
///
/// Coefficients are stored sparsely in canonical order. Over the real field
/// every coefficient must have zero imaginary part. Explicit zero entries are
/// kept, so a polynomial round-trips through text unchanged.
class HomogeneousPolynomial {
public:
  HomogeneousPolynomial(ScalarField field, int m, int n, CoefficientMap coefficients);

  /// Dense construction: coefficients[k] belongs to enumerate(m, n)[k].
  static HomogeneousPolynomial from_dense(ScalarField field, int m, int n,
                                          std::span<const Scalar> coefficients);

  ScalarField field() const noexcept { return field_; }
  int degree() const noexcept { return m_; }
  int variables() const noexcept { return n_; }
  const CoefficientMap& coefficients() const noexcept { return coefficients_; }
  std::size_t size() const noexcept { return coefficients_.size(); }

  Scalar coefficient(const MultiIndex& alpha) const;
  bool is_zero() const noexcept;
  bool is_multilinear() const noexcept;

  /// c * P. A complex factor is rejected over the real field.
  HomogeneousPolynomial scaled(Scalar c) const;

  friend bool operator==(const HomogeneousPolynomial&, const HomogeneousPolynomial&) = default;

private:
  ScalarField field_;
  int m_;
  int n_;
  CoefficientMap coefficients_;
};

/// Sum a_alpha z^alpha with Neumaier-compensated accumulation.
Scalar evaluate(const HomogeneousPolynomial& p, std::span<const Scalar> z);
/// Real points are accepted for either field.
Scalar evaluate(const HomogeneousPolynomial& p, std::span<const double> x);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// l_r norm of a vector of moduli, r in [1, inf]. Rescales by the largest
/// entry before powering.
double lp_norm(std::span<const double> moduli, double r);

/// (sum |a_alpha|^r)^(1/r); r = kInfinity gives max |a_alpha|.
double coeff_norm(const HomogeneousPolynomial& p, double r);

/// The same coefficient map reinterpreted over C.
HomogeneousPolynomial complexify(const HomogeneousPolynomial& p);

}  // namespace hpoly
