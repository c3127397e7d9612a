#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpoly/polynomial.hpp"

namespace hpoly {

/// Search and certification limits for sup-norm estimation.
///
/// The grid tiles the search domain with `grid` cells per coordinate. For
/// complex polynomials the domain is the torus with the first angle fixed
/// to 0 (|P| is invariant under a common phase); for real polynomials it is
/// the cube with x_1 >= 0 (|P(-x)| = |P(x)|).
struct SupNormBudget {
  int grid = 32;
  int restarts = 64;
  int max_iterations = 200;

  // Backtracking line search for the ascent runs.
  double initial_step = 0.25;
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 40;

  std::uint64_t grid_cap = std::uint64_t{1} << 22;      // initial grid cells
  std::uint64_t refine_cap = std::uint64_t{1} << 18;    // cells evaluated by refinement
  std::uint64_t vertex_cap = std::uint64_t{1} << 22;    // cube vertices
  std::uint64_t spectral_cap = std::uint64_t{1} << 22;  // entries of the flattening matrix
  double target_gap = 1e-6;                             // refinement stops when upper <= lower * (1 + target_gap)

  // When the grid would exceed grid_cap: false throws BudgetExceeded, true
  // skips the grid phase and certifies with the spectral and l1 bounds only.
  bool allow_gridless = false;

  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0 = hardware concurrency
};

/// Throws DomainError for nonsensical budget fields.
void validate(const SupNormBudget& budget);

struct SupNormMethod {
  int grid = 0;
  std::uint64_t grid_cells = 0;  // 0 when the grid phase was skipped
  bool grid_skipped = false;
  int restarts = 0;
  std::uint64_t seed = 0;
  std::uint64_t vertices = 0;
  std::uint64_t refined_cells = 0;
  std::string upper_source;  // "grid", "shift", "spectral", "l1" or "exact"

  friend bool operator==(const SupNormMethod&, const SupNormMethod&) = default;
};

/// Certified bracket lower <= ||P||_inf <= upper. `lower` equals
/// |evaluate(P, witness)| and ||witness||_inf <= 1.
struct SupNormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<Scalar> witness;
  SupNormMethod method;

  double gap() const noexcept { return upper - lower; }
  friend bool operator==(const SupNormEstimate&, const SupNormEstimate&) = default;
};

/// sup over the closed polydisc, searched on the torus (maximum modulus).
SupNormEstimate supnorm_complex(const HomogeneousPolynomial& p, const SupNormBudget& budget);

/// sup over the cube [-1, 1]^n. Exact (lower == upper) for multilinear P
/// when the vertex count is within budget.
SupNormEstimate supnorm_real(const HomogeneousPolynomial& p, const SupNormBudget& budget);

/// Dispatches on p.field().
SupNormEstimate supnorm(const HomogeneousPolynomial& p, const SupNormBudget& budget);

/// Flattening certificate: with T the symmetric coefficient tensor reshaped
/// into an n^ceil(m/2) x n^floor(m/2) matrix M, |P(z)| <= ||M||_2 ||z||_2^m
/// <= ||M||_2 n^(m/2) on the unit ball of l_inf^n. Returns +inf if the
/// matrix would exceed `max_entries`.
double spectral_bound(const HomogeneousPolynomial& p, std::uint64_t max_entries);

/// Degree-2 certificate from diagonal shifts. Over C, sup |P| = sup Re P
/// on the torus (rotate by a common phase) and Re P(x + iy) is a quadratic
/// form w^T B w in w = (x, y) with x_j^2 + y_j^2 = 1, so for every real d
///   sup |P| <= sum_j d_j + n lambda_max(B - diag(d, d)).
/// Over R the same holds on the cube for d >= 0, applied to P and -P. The
/// shift d is improved by projected subgradient steps; every iterate is a
/// valid bound. Returns +inf unless m = 2 and 2n <= max_dimension.
double quadratic_shift_bound(const HomogeneousPolynomial& p, int iterations = 200, int max_dimension = 512);

/// max |P(x)| over x in {-1, 1}^n. Exact sup of a multilinear real P.
/// Returns the value and a maximizing vertex.
std::pair<double, std::vector<double>> vertex_max(const HomogeneousPolynomial& p, std::uint64_t cap);

struct VisserResult {
  double lhs = 0.0;  // certified lower bound of ||P_C||_inf
  double rhs = 0.0;  // 2^(m-1) * certified upper bound of ||P||_inf
  bool ok = false;
  SupNormEstimate complex_estimate;
  SupNormEstimate real_estimate;
};

/// ||P_C||_inf <= 2^(m-1) ||P||_inf for a nonzero real P, checked with the
/// complex lower bound against the real upper bound.
VisserResult visser_check(const HomogeneousPolynomial& p, const SupNormBudget& budget);

}  // namespace hpoly
