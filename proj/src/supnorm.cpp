#include "hpoly/supnorm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "evaluator.hpp"
#include "hpoly/errors.hpp"
#include "hpoly/parallel.hpp"
#include "hpoly/rng.hpp"

namespace hpoly {

void validate(const SupNormBudget& b) {
  if (b.grid < 1) throw DomainError("grid resolution must be >= 1");
  if (b.restarts < 0) throw DomainError("restart count must be >= 0");
  if (b.max_iterations < 0) throw DomainError("ascent iteration cap must be >= 0");
  if (!(b.initial_step > 0.0)) throw DomainError("initial ascent step must be > 0");
  if (!(b.armijo > 0.0 && b.armijo < 1.0)) throw DomainError("armijo parameter must lie in (0, 1)");
  if (!(b.backtrack > 0.0 && b.backtrack < 1.0)) throw DomainError("backtracking factor must lie in (0, 1)");
  if (b.max_backtracks < 1) throw DomainError("max_backtracks must be >= 1");
  if (!(b.target_gap >= 0.0)) throw DomainError("target gap must be >= 0");
}

namespace {

using detail::CubeEvaluator;
using detail::TermTable;
using detail::TorusEvaluator;

// Relative inflation of computed certificates to cover rounding in the
// bound arithmetic itself.
constexpr double kCertSlack = 1e-12;
constexpr std::size_t kShardCells = 8192;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<std::uint64_t>::max();
  return out;
}

// Box in the free coordinates tiled by level-0 cells. Complex: angles
// theta_2..theta_n (theta_1 = 0). Real: x_1 in [0, 1], x_2..x_n in [-1, 1].
struct SearchBox {
  bool torus = false;
  int n = 0;
  std::vector<int> free_var;
  std::vector<int> dim_of_var;  // -1 for the fixed angle
  std::vector<std::uint64_t> cells;
  std::vector<double> lo;
  std::vector<double> h0;
  std::uint64_t total_cells = 1;

  int dims() const noexcept { return static_cast<int>(free_var.size()); }

  void add_dim(int var, std::uint64_t count, double lower, double halfwidth) {
    dim_of_var[static_cast<std::size_t>(var)] = dims();
    free_var.push_back(var);
    cells.push_back(count);
    lo.push_back(lower);
    h0.push_back(halfwidth);
    total_cells = saturating_mul(total_cells, count);
  }

  // Center of level-0 cell `index` (last free dimension varies fastest).
  void center(std::uint64_t index, std::span<double> coords) const {
    for (int k = dims(); k-- > 0;) {
      const auto ku = static_cast<std::size_t>(k);
      const std::uint64_t digit = index % cells[ku];
      index /= cells[ku];
      coords[ku] = lo[ku] + (2.0 * static_cast<double>(digit) + 1.0) * h0[ku];
    }
  }

  void to_point(std::span<const double> coords, std::span<double> point) const {
    std::fill(point.begin(), point.end(), 0.0);
    for (int k = 0; k < dims(); ++k) point[static_cast<std::size_t>(free_var[static_cast<std::size_t>(k)])] = coords[static_cast<std::size_t>(k)];
  }
};

SearchBox make_box(bool torus, int n, int grid) {
  SearchBox box;
  box.torus = torus;
  box.n = n;
  box.dim_of_var.assign(static_cast<std::size_t>(n), -1);
  const auto g = static_cast<std::uint64_t>(grid);
  if (torus) {
    const double h = std::numbers::pi / grid;
    for (int j = 1; j < n; ++j) box.add_dim(j, g, -h, h);  // centers at 2 pi k / grid
  } else {
    const std::uint64_t first = (g + 1) / 2;
    box.add_dim(0, first, 0.0, 0.5 / static_cast<double>(first));
    for (int j = 1; j < n; ++j) box.add_dim(j, g, -1.0, 1.0 / grid);
  }
  return box;
}

// Level-0 constants of the cell bound
//   |P(c + d)| <= |P(c)| + min(L1, sum_k h_k |dP/du_k(c)| + L2 / 2)
// where |d_k| <= h_k, L1 = sum |a| s and L2 = sum |a| s^2 with
// s = sum_k h_k alpha_{var(k)}. Both scale by 2^-level and 4^-level.
struct CellConstants {
  double l1 = 0.0;
  double l2 = 0.0;
};

CellConstants cell_constants(const TermTable& t, const SearchBox& box) {
  CellConstants c;
  for (std::size_t term = 0; term < t.size(); ++term) {
    double s = 0.0;
    for (auto f = t.begin[term]; f < t.begin[term + 1]; ++f) {
      const int dim = box.dim_of_var[static_cast<std::size_t>(t.var[f])];
      if (dim >= 0) s += box.h0[static_cast<std::size_t>(dim)] * t.exp[f];
    }
    const double a = std::abs(t.coef[term]);
    c.l1 += a * s;
    c.l2 += a * s * s;
  }
  return c;
}

// Per-thread evaluation state.
class Probe {
public:
  Probe(const TermTable& t, const SearchBox& box)
      : box_(box), torus_(t), cube_(t), gz_(static_cast<std::size_t>(t.n)), gx_(static_cast<std::size_t>(t.n)),
        point_(static_cast<std::size_t>(t.n)) {}

  double modulus(std::span<const double> point) {
    return box_.torus ? std::abs(torus_.value(point)) : std::fabs(cube_.value(point));
  }

  // f = |P|^2 and df/du over all n coordinates.
  double objective_grad(std::span<const double> point, std::span<double> grad) {
    if (box_.torus) {
      const Scalar v = torus_.value_grad(point, gz_);
      for (std::size_t j = 0; j < grad.size(); ++j) grad[j] = 2.0 * (std::conj(v) * gz_[j]).real();
      return std::norm(v);
    }
    const double v = cube_.value_grad(point, gx_);
    for (std::size_t j = 0; j < grad.size(); ++j) grad[j] = 2.0 * v * gx_[j];
    return v * v;
  }

  // |P(c)| and the certified bound for the cell at `level` centered at c.
  std::pair<double, double> cell(std::span<const double> coords, int level, const CellConstants& k) {
    box_.to_point(coords, point_);
    double value = 0.0;
    double slope = 0.0;
    if (box_.torus) {
      value = std::abs(torus_.value_grad(point_, gz_));
      for (int d = 0; d < box_.dims(); ++d) {
        slope += box_.h0[static_cast<std::size_t>(d)] * std::abs(gz_[static_cast<std::size_t>(box_.free_var[static_cast<std::size_t>(d)])]);
      }
    } else {
      value = std::fabs(cube_.value_grad(point_, gx_));
      for (int d = 0; d < box_.dims(); ++d) {
        slope += box_.h0[static_cast<std::size_t>(d)] * std::fabs(gx_[static_cast<std::size_t>(box_.free_var[static_cast<std::size_t>(d)])]);
      }
    }
    const double shrink = std::ldexp(1.0, -level);
    const double first_order = k.l1 * shrink;
    const double second_order = slope * shrink + 0.5 * k.l2 * shrink * shrink;
    return {value, value + std::min(first_order, second_order)};
  }

  std::span<const double> last_point() const noexcept { return point_; }

private:
  const SearchBox& box_;
  TorusEvaluator torus_;
  CubeEvaluator cube_;
  std::vector<Scalar> gz_;
  std::vector<double> gx_;
  std::vector<double> point_;
};

struct Candidate {
  double value = -1.0;
  std::vector<double> point;
};

// Keeps the first strictly larger value, so ties go to the earliest offer.
void offer(Candidate& best, double value, std::span<const double> point) {
  if (value > best.value) {
    best.value = value;
    best.point.assign(point.begin(), point.end());
  }
}

// Normalized-gradient ascent on |P|^2 with Armijo backtracking; projection
// onto the box for the cube. Returns |P| at the final point.
Candidate ascend(Probe& probe, bool torus, std::vector<double> x, const SupNormBudget& b) {
  const std::size_t n = x.size();
  std::vector<double> g(n);
  std::vector<double> y(n);
  std::vector<double> gy(n);
  double f = probe.objective_grad(x, g);
  double step = b.initial_step;

  for (int it = 0; it < b.max_iterations; ++it) {
    if (!torus) {
      for (std::size_t j = 0; j < n; ++j) {
        if ((x[j] >= 1.0 && g[j] > 0.0) || (x[j] <= -1.0 && g[j] < 0.0)) g[j] = 0.0;
      }
    }
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, std::fabs(v));
    if (!(gmax > 1e-15 * f)) break;

    bool accepted = false;
    double t = step;
    double fy = 0.0;
    for (int k = 0; k < b.max_backtracks; ++k) {
      double predicted = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        y[j] = x[j] + t * g[j] / gmax;
        if (!torus) y[j] = std::clamp(y[j], -1.0, 1.0);
        predicted += g[j] * (y[j] - x[j]);
      }
      fy = probe.objective_grad(y, gy);
      if (fy > f && fy >= f + b.armijo * predicted) {
        accepted = true;
        break;
      }
      t *= b.backtrack;
    }
    if (!accepted) break;
    x.swap(y);
    g.swap(gy);
    f = fy;
    step = std::min(b.initial_step, t / b.backtrack);
  }
  return {std::sqrt(f), std::move(x)};
}

struct HeapCell {
  double bound;
  std::uint64_t id;
  int level;
};

bool heap_less(const HeapCell& a, const HeapCell& b) {
  if (a.bound != b.bound) return a.bound < b.bound;
  return a.id > b.id;
}

std::uint64_t vertex_count(int n) {
  return n - 1 >= 63 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << (n - 1));
}

void vertex(std::uint64_t mask, std::span<double> x) {
  x[0] = 1.0;
  for (std::size_t j = 1; j < x.size(); ++j) x[j] = ((mask >> (j - 1)) & 1U) ? -1.0 : 1.0;
}

// e^{iu}, exact at the quarter turns the grid and vertices land on.
Scalar unit(double u) {
  if (u == 0.0) return 1.0;
  if (u == std::numbers::pi || u == -std::numbers::pi) return -1.0;
  if (u == 0.5 * std::numbers::pi) return Scalar(0.0, 1.0);
  if (u == -0.5 * std::numbers::pi) return Scalar(0.0, -1.0);
  return std::polar(1.0, u);
}

SupNormEstimate estimate(const HomogeneousPolynomial& p, const SupNormBudget& budget, bool torus) {
  validate(budget);
  const int n = p.variables();
  const TermTable table(p);

  SupNormEstimate est;
  est.method.grid = budget.grid;
  est.method.restarts = budget.restarts;
  est.method.seed = budget.seed;

  // Best vertex, kept so that lower never falls below the vertex maximum
  // when the search value differs from it only by rounding.
  Candidate vertex_best;

  auto finish = [&](const Candidate& best, double upper, std::string source) {
    auto witness_of = [&](const Candidate& c) {
      std::vector<Scalar> w(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        const double u = c.point[static_cast<std::size_t>(j)];
        w[static_cast<std::size_t>(j)] = torus ? unit(u) : Scalar{u, 0.0};
      }
      return w;
    };
    est.witness = witness_of(best);
    double value = std::abs(evaluate(p, std::span<const Scalar>(est.witness)));
    if (!vertex_best.point.empty()) {
      auto w = witness_of(vertex_best);
      const double v = std::abs(evaluate(p, std::span<const Scalar>(w)));
      if (v >= value) {
        value = v;
        est.witness = std::move(w);
      }
    }
    // |P| <= ||P||_1 on the unit ball; larger values are rounding.
    est.lower = std::min(value, coeff_norm(p, 1.0));
    est.upper = std::max(upper, est.lower);
    est.method.upper_source = std::move(source);
    return est;
  };

  Candidate best;
  best.point.assign(static_cast<std::size_t>(n), 0.0);
  if (!torus) best.point[0] = 1.0;

  if (table.size() == 0) return finish(best, 0.0, "exact");

  // Vertices: exact for multilinear real P, cheap lower bounds otherwise.
  // On the torus a vertex is the angle vector with entries 0 or pi.
  if (vertex_count(n) <= budget.vertex_cap) {
    auto [value, point] = vertex_max(p, budget.vertex_cap);
    if (torus) {
      for (auto& x : point) x = x < 0.0 ? std::numbers::pi : 0.0;
    }
    offer(best, value, point);
    offer(vertex_best, value, point);
    est.method.vertices = vertex_count(n);
    if (!torus && p.is_multilinear()) return finish(best, best.value, "exact");
  }

  const SearchBox box = make_box(torus, n, budget.grid);
  const bool use_grid = box.total_cells <= budget.grid_cap;
  if (!use_grid && !budget.allow_gridless) {
    throw BudgetExceeded("sup-norm grid needs " + (box.total_cells == std::numeric_limits<std::uint64_t>::max()
                                                        ? std::string("more than 2^64")
                                                        : std::to_string(box.total_cells)) +
                         " cells, cap is " + std::to_string(budget.grid_cap));
  }
  est.method.grid_skipped = !use_grid;
  const CellConstants constants = cell_constants(table, box);
  const auto dims = static_cast<std::size_t>(box.dims());
  const std::size_t shards = use_grid ? static_cast<std::size_t>((box.total_cells + kShardCells - 1) / kShardCells) : 0;

  // Grid pass 1: best cell centers as ascent seeds.
  const std::size_t seed_count =
      use_grid ? static_cast<std::size_t>(std::min<std::uint64_t>(static_cast<std::uint64_t>(budget.restarts / 4), box.total_cells))
               : 0;
  std::vector<std::pair<double, std::uint64_t>> seeds;
  if (use_grid) {
    est.method.grid_cells = box.total_cells;
    std::vector<std::vector<std::pair<double, std::uint64_t>>> shard_top(shards);
    const std::size_t keep = std::max<std::size_t>(seed_count, 1);
    auto by_value = [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; };
    parallel_for(shards, budget.workers, [&](std::size_t s) {
      Probe probe(table, box);
      std::vector<double> coords(dims);
      std::vector<double> point(static_cast<std::size_t>(n));
      auto& top = shard_top[s];
      const std::uint64_t first = s * kShardCells;
      const std::uint64_t last = std::min<std::uint64_t>(box.total_cells, first + kShardCells);
      for (std::uint64_t c = first; c < last; ++c) {
        box.center(c, coords);
        box.to_point(coords, point);
        top.emplace_back(probe.modulus(point), c);
        if (top.size() >= 4 * keep) {
          std::partial_sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(keep), top.end(), by_value);
          top.resize(keep);
        }
      }
      const auto k = std::min(keep, top.size());
      std::partial_sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k), top.end(), by_value);
      top.resize(k);
    });
    for (auto& top : shard_top) seeds.insert(seeds.end(), top.begin(), top.end());
    const auto k = std::min(keep, seeds.size());
    std::partial_sort(seeds.begin(), seeds.begin() + static_cast<std::ptrdiff_t>(k), seeds.end(), by_value);
    seeds.resize(k);

    std::vector<double> coords(dims);
    std::vector<double> point(static_cast<std::size_t>(n));
    box.center(seeds.front().second, coords);
    box.to_point(coords, point);
    offer(best, seeds.front().first, point);
    seeds.resize(std::min(seeds.size(), seed_count));
  }

  // Multi-start ascent: grid seeds first, then random starts from per-restart streams.
  std::vector<Candidate> runs(static_cast<std::size_t>(budget.restarts));
  parallel_for(runs.size(), budget.workers, [&](std::size_t k) {
    Probe probe(table, box);
    std::vector<double> start(static_cast<std::size_t>(n));
    if (k < seeds.size()) {
      std::vector<double> coords(dims);
      box.center(seeds[k].second, coords);
      box.to_point(coords, start);
    } else {
      CounterRng rng(derive_seed(budget.seed, {k}));
      for (auto& u : start) u = torus ? rng.uniform(0.0, 2.0 * std::numbers::pi) : rng.uniform(-1.0, 1.0);
    }
    runs[k] = ascend(probe, torus, std::move(start), budget);
  });
  for (const auto& run : runs) offer(best, run.value, run.point);

  double upper = std::numeric_limits<double>::infinity();
  std::string source = "none";
  if (use_grid) {
    // Grid pass 2: cell bounds; cells that cannot beat the target are retired.
    const double threshold = best.value * (1.0 + budget.target_gap);
    std::vector<std::vector<HeapCell>> shard_keep(shards);
    std::vector<double> shard_retired(shards, 0.0);
    parallel_for(shards, budget.workers, [&](std::size_t s) {
      Probe probe(table, box);
      std::vector<double> coords(dims);
      const std::uint64_t first = s * kShardCells;
      const std::uint64_t last = std::min<std::uint64_t>(box.total_cells, first + kShardCells);
      for (std::uint64_t c = first; c < last; ++c) {
        box.center(c, coords);
        const auto [value, bound] = probe.cell(coords, 0, constants);
        if (bound > threshold) {
          shard_keep[s].push_back({bound, c, 0});
        } else {
          shard_retired[s] = std::max(shard_retired[s], bound);
        }
      }
    });

    double retired = 0.0;
    for (double r : shard_retired) retired = std::max(retired, r);
    std::vector<HeapCell> heap;
    std::vector<double> centers;
    std::vector<double> coords(dims);
    for (const auto& keep : shard_keep) {
      for (const auto& cell : keep) {
        box.center(cell.id, coords);
        heap.push_back({cell.bound, centers.size() / std::max<std::size_t>(dims, 1), 0});
        centers.insert(centers.end(), coords.begin(), coords.end());
      }
    }
    std::make_heap(heap.begin(), heap.end(), heap_less);

    // Best-first refinement: split the cell with the largest bound into 2^d children.
    Probe probe(table, box);
    const std::uint64_t children = std::uint64_t{1} << dims;
    std::vector<double> child(dims);
    while (!heap.empty()) {
      const HeapCell top = heap.front();
      if (top.bound <= best.value * (1.0 + budget.target_gap)) break;
      if (dims == 0 || est.method.refined_cells + children > budget.refine_cap) break;
      std::pop_heap(heap.begin(), heap.end(), heap_less);
      heap.pop_back();
      const int level = top.level + 1;
      const double shrink = std::ldexp(1.0, -level);
      for (std::uint64_t c = 0; c < children; ++c) {
        for (std::size_t k = 0; k < dims; ++k) {
          const double offset = box.h0[k] * shrink;
          child[k] = centers[top.id * dims + k] + (((c >> k) & 1U) ? offset : -offset);
        }
        const auto [value, bound] = probe.cell(child, level, constants);
        ++est.method.refined_cells;
        offer(best, value, probe.last_point());
        if (bound > best.value * (1.0 + budget.target_gap)) {
          heap.push_back({bound, centers.size() / dims, level});
          centers.insert(centers.end(), child.begin(), child.end());
          std::push_heap(heap.begin(), heap.end(), heap_less);
        } else {
          retired = std::max(retired, bound);
        }
      }
    }
    upper = std::max(retired, heap.empty() ? 0.0 : heap.front().bound) * (1.0 + kCertSlack);
    source = "grid";
  }

  const double shift = quadratic_shift_bound(p);
  if (shift < upper) {
    upper = shift;
    source = "shift";
  }
  const double spectral = spectral_bound(p, budget.spectral_cap);
  if (spectral < upper) {
    upper = spectral;
    source = "spectral";
  }
  const double l1 = coeff_norm(p, 1.0) * (1.0 + kCertSlack);
  if (l1 < upper) {
    upper = l1;
    source = "l1";
  }
  return finish(best, upper, std::move(source));
}

template <typename Matrix>
double largest_singular_value(const Matrix& m) {
  const Matrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  const double lambda = solver.eigenvalues().maxCoeff();
  // Backward-stable eigensolver: error is a modest multiple of eps * ||G||.
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(gram.rows()) * gram.norm();
  return std::sqrt(std::max(0.0, lambda + slack));
}

// sum d + n * lambda_max(B - diag(d)) minimized over d by subgradient steps.
// `paired` repeats each d_j on the x_j and y_j diagonal entries; `nonnegative`
// projects d onto d >= 0 and clips the eigenvalue term at 0.
double shifted_eigen_bound(const Eigen::MatrixXd& b, int n, bool paired, bool nonnegative, int iterations) {
  const Eigen::Index dim = b.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  const double scale = b.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd shifted(dim, dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  for (int it = 0; it <= iterations; ++it) {
    shifted = b;
    for (Eigen::Index j = 0; j < dim; ++j) shifted(j, j) -= d(paired ? j % n : j);
    solver.compute(shifted);
    const double top = solver.eigenvalues()(dim - 1);
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(dim) * shifted.norm();
    const double lambda = top + slack;
    const double value = d.sum() + n * (nonnegative ? std::max(lambda, 0.0) : lambda);
    best = std::min(best, value);
    if (it == iterations) break;

    const auto v = solver.eigenvectors().col(dim - 1);
    Eigen::VectorXd grad = Eigen::VectorXd::Ones(n);
    if (!nonnegative || lambda > 0.0) {
      for (Eigen::Index j = 0; j < dim; ++j) grad(paired ? j % n : j) -= n * v(j) * v(j);
    }
    d -= (0.5 * scale / std::sqrt(it + 1.0)) * grad;
    if (nonnegative) d = d.cwiseMax(0.0);
  }
  return best;
}

}  // namespace

double quadratic_shift_bound(const HomogeneousPolynomial& p, int iterations, int max_dimension) {
  const int n = p.variables();
  if (p.degree() != 2 || 2 * n > max_dimension) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXd re = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [alpha, a] : p.coefficients()) {
    int first = -1;
    int second = -1;
    for (int j = 0; j < n; ++j) {
      for (int e = 0; e < alpha[j]; ++e) (first < 0 ? first : second) = j;
    }
    const double w = first == second ? 1.0 : 0.5;
    re(first, second) += w * a.real();
    im(first, second) += w * a.imag();
    if (first != second) {
      re(second, first) += w * a.real();
      im(second, first) += w * a.imag();
    }
  }
  double bound = 0.0;
  if (p.field() == ScalarField::Complex) {
    // Re (x+iy)^T (R + iI) (x+iy) = x^T R x - y^T R y - 2 x^T I y
    Eigen::MatrixXd b(2 * n, 2 * n);
    b << re, -im, -im, -re;
    bound = shifted_eigen_bound(b, n, true, false, iterations);
  } else {
    bound = std::max(shifted_eigen_bound(re, n, false, true, iterations),
                     shifted_eigen_bound(-re, n, false, true, iterations));
  }
  return bound * (1.0 + kCertSlack);
}

std::pair<double, std::vector<double>> vertex_max(const HomogeneousPolynomial& p, std::uint64_t cap) {
  const int n = p.variables();
  const std::uint64_t total = vertex_count(n);
  if (total > cap) {
    throw BudgetExceeded("vertex enumeration needs " + std::to_string(total) + " vertices, cap is " +
                         std::to_string(cap));
  }
  const TermTable table(p);
  CubeEvaluator cube(table);
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> best_x(static_cast<std::size_t>(n), 1.0);
  double best = -1.0;
  const bool real = p.field() == ScalarField::Real;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    vertex(mask, x);
    const double v = real ? std::fabs(cube.value(x)) : std::abs(cube.value_complex(x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return {std::abs(evaluate(p, std::span<const double>(best_x))), best_x};
}

double spectral_bound(const HomogeneousPolynomial& p, std::uint64_t max_entries) {
  const int n = p.variables();
  const int m = p.degree();
  const int row_order = (m + 1) / 2;
  const int col_order = m / 2;
  std::uint64_t rows = 1;
  std::uint64_t cols = 1;
  for (int k = 0; k < row_order; ++k) rows = saturating_mul(rows, static_cast<std::uint64_t>(n));
  for (int k = 0; k < col_order; ++k) cols = saturating_mul(cols, static_cast<std::uint64_t>(n));
  if (saturating_mul(rows, cols) > max_entries) return std::numeric_limits<double>::infinity();

  // Spread a_alpha evenly over the distinct orderings of its index multiset.
  auto fill = [&](auto& matrix, auto convert) {
    std::vector<int> idx;
    for (const auto& [alpha, a] : p.coefficients()) {
      if (a == Scalar{}) continue;
      idx.clear();
      double orderings = std::tgamma(m + 1.0);
      for (int j = 0; j < n; ++j) {
        for (int e = 0; e < alpha[j]; ++e) idx.push_back(j);
        orderings /= std::tgamma(alpha[j] + 1.0);
      }
      const auto entry = convert(a / std::round(orderings));
      do {
        Eigen::Index r = 0;
        Eigen::Index c = 0;
        for (int k = 0; k < row_order; ++k) r = r * n + idx[static_cast<std::size_t>(k)];
        for (int k = row_order; k < m; ++k) c = c * n + idx[static_cast<std::size_t>(k)];
        matrix(r, c) += entry;
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
  };

  const double radius = std::pow(static_cast<double>(n), 0.5 * m);
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(cols);
  if (p.field() == ScalarField::Real) {
    Eigen::MatrixXd matrix = Eigen::MatrixXd::Zero(r, c);
    fill(matrix, [](Scalar a) { return a.real(); });
    return largest_singular_value(matrix) * radius * (1.0 + kCertSlack);
  }
  Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Zero(r, c);
  fill(matrix, [](Scalar a) { return a; });
  return largest_singular_value(matrix) * radius * (1.0 + kCertSlack);
}

SupNormEstimate supnorm_complex(const HomogeneousPolynomial& p, const SupNormBudget& budget) {
  if (p.field() != ScalarField::Complex) throw DomainError("supnorm_complex expects a complex polynomial");
  return estimate(p, budget, true);
}

SupNormEstimate supnorm_real(const HomogeneousPolynomial& p, const SupNormBudget& budget) {
  if (p.field() != ScalarField::Real) throw DomainError("supnorm_real expects a real polynomial");
  return estimate(p, budget, false);
}

SupNormEstimate supnorm(const HomogeneousPolynomial& p, const SupNormBudget& budget) {
  return estimate(p, budget, p.field() == ScalarField::Complex);
}

VisserResult visser_check(const HomogeneousPolynomial& p, const SupNormBudget& budget) {
  if (p.field() != ScalarField::Real) throw DomainError("visser_check expects a real polynomial");
  if (p.is_zero()) throw DomainError("visser_check requires a nonzero polynomial");
  VisserResult out;
  out.real_estimate = supnorm_real(p, budget);
  out.complex_estimate = supnorm_complex(complexify(p), budget);
  out.lhs = out.complex_estimate.lower;
  out.rhs = std::ldexp(out.real_estimate.upper, p.degree() - 1);
  out.ok = out.lhs <= out.rhs;
  return out;
}

}  // namespace hpoly
