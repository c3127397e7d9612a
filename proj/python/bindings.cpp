#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hpoly/errors.hpp"
#include "hpoly/ksz.hpp"
#include "hpoly/multiindex.hpp"
#include "hpoly/polynomial.hpp"
#include "hpoly/polynomial_io.hpp"
#include "hpoly/records.hpp"
#include "hpoly/scaling.hpp"
#include "hpoly/supnorm.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace hpoly;

namespace {

using IndexTuple = std::vector<int>;

HomogeneousPolynomial make_polynomial(ScalarField field, int m, int n, const std::map<IndexTuple, Scalar>& coeffs) {
  CoefficientMap map;
  for (const auto& [alpha, a] : coeffs) map.emplace(MultiIndex(alpha), a);
  return HomogeneousPolynomial(field, m, n, std::move(map));
}

std::vector<std::pair<IndexTuple, Scalar>> coefficient_list(const HomogeneousPolynomial& p) {
  std::vector<std::pair<IndexTuple, Scalar>> out;
  for (const auto& [alpha, a] : p.coefficients()) {
    out.emplace_back(IndexTuple(alpha.exponents().begin(), alpha.exponents().end()), a);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Homogeneous polynomial norms, certified sup norms and scaling experiments";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  // multi-indices
  m.def("enumerate_indices", [](int deg, int n) {
    std::vector<IndexTuple> out;
    for (const auto& a : enumerate(deg, n)) out.emplace_back(a.exponents().begin(), a.exponents().end());
    return out;
  }, py::arg("m"), py::arg("n"), "All exponent vectors with |alpha| = m, in canonical order.");
  m.def("count", &count, py::arg("m"), py::arg("n"));
  m.def("count_decomposition", [](int deg, int n) {
    const auto d = count_decomposition(deg, n);
    return py::make_tuple(d.lower_term, d.remainder);
  }, py::arg("m"), py::arg("n"));

  // polynomials
  py::enum_<ScalarField>(m, "ScalarField")
      .value("Real", ScalarField::Real)
      .value("Complex", ScalarField::Complex);

  py::class_<HomogeneousPolynomial>(m, "Polynomial")
      .def(py::init(&make_polynomial), py::arg("field"), py::arg("m"), py::arg("n"), py::arg("coefficients"))
      .def_static("from_dense", [](ScalarField field, int deg, int n, const std::vector<Scalar>& c) {
        return HomogeneousPolynomial::from_dense(field, deg, n, c);
      }, py::arg("field"), py::arg("m"), py::arg("n"), py::arg("coefficients"))
      .def_static("from_text", [](const std::string& text) { return parse_polynomial(text); })
      .def("to_text", &format_polynomial)
      .def_property_readonly("field", &HomogeneousPolynomial::field)
      .def_property_readonly("m", &HomogeneousPolynomial::degree)
      .def_property_readonly("n", &HomogeneousPolynomial::variables)
      .def("coefficients", &coefficient_list)
      .def("__call__", [](const HomogeneousPolynomial& p, const std::vector<Scalar>& z) { return evaluate(p, z); })
      .def("__eq__", [](const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) { return a == b; })
      .def("__len__", &HomogeneousPolynomial::size);

  m.def("evaluate", [](const HomogeneousPolynomial& p, const std::vector<Scalar>& z) { return evaluate(p, z); });
  m.def("coeff_norm", &coeff_norm, py::arg("p"), py::arg("r"));
  m.def("complexify", &complexify);

  // sup norms
  py::class_<SupNormBudget>(m, "SupNormBudget")
      .def(py::init<>())
      .def_readwrite("grid", &SupNormBudget::grid)
      .def_readwrite("restarts", &SupNormBudget::restarts)
      .def_readwrite("max_iterations", &SupNormBudget::max_iterations)
      .def_readwrite("initial_step", &SupNormBudget::initial_step)
      .def_readwrite("armijo", &SupNormBudget::armijo)
      .def_readwrite("backtrack", &SupNormBudget::backtrack)
      .def_readwrite("max_backtracks", &SupNormBudget::max_backtracks)
      .def_readwrite("grid_cap", &SupNormBudget::grid_cap)
      .def_readwrite("refine_cap", &SupNormBudget::refine_cap)
      .def_readwrite("vertex_cap", &SupNormBudget::vertex_cap)
      .def_readwrite("spectral_cap", &SupNormBudget::spectral_cap)
      .def_readwrite("target_gap", &SupNormBudget::target_gap)
      .def_readwrite("allow_gridless", &SupNormBudget::allow_gridless)
      .def_readwrite("seed", &SupNormBudget::seed)
      .def_readwrite("workers", &SupNormBudget::workers);

  py::class_<SupNormEstimate>(m, "SupNormEstimate")
      .def_readonly("lower", &SupNormEstimate::lower)
      .def_readonly("upper", &SupNormEstimate::upper)
      .def_readonly("witness", &SupNormEstimate::witness)
      .def_property_readonly("gap", &SupNormEstimate::gap)
      .def_property_readonly("upper_source", [](const SupNormEstimate& e) { return e.method.upper_source; })
      .def_property_readonly("grid_skipped", [](const SupNormEstimate& e) { return e.method.grid_skipped; })
      .def("__repr__", [](const SupNormEstimate& e) {
        return "SupNormEstimate(lower=" + format_exact(e.lower) + ", upper=" + format_exact(e.upper) + ")";
      });

  const SupNormBudget default_budget;
  m.def("supnorm", &supnorm, py::arg("p"), py::arg("budget") = default_budget);
  m.def("supnorm_real", &supnorm_real, py::arg("p"), py::arg("budget") = default_budget);
  m.def("supnorm_complex", &supnorm_complex, py::arg("p"), py::arg("budget") = default_budget);
  m.def("spectral_bound", &spectral_bound, py::arg("p"), py::arg("max_entries") = default_budget.spectral_cap);
  m.def("quadratic_shift_bound", [](const HomogeneousPolynomial& p, int iterations) {
    return quadratic_shift_bound(p, iterations);
  }, py::arg("p"), py::arg("iterations") = 200);
  m.def("visser_check", [](const HomogeneousPolynomial& p, const SupNormBudget& b) {
    const auto v = visser_check(p, b);
    return py::make_tuple(v.lhs, v.rhs, v.ok);
  }, py::arg("p"), py::arg("budget") = default_budget);

  // KSZ polynomials
  m.def("ksz_sample", [](int deg, int n, std::uint64_t seed, ScalarField field) {
    return ksz::sample(deg, n, seed, field).polynomial;
  }, py::arg("m"), py::arg("n"), py::arg("seed"), py::arg("field") = ScalarField::Complex);
  m.def("ksz_coeff_norm_closed_form", [](int deg, int n, std::uint64_t seed, double r) {
    return ksz::coeff_norm_closed_form(ksz::sample(deg, n, seed, ScalarField::Real), r);
  }, py::arg("m"), py::arg("n"), py::arg("seed"), py::arg("r"));
  m.def("ksz_supnorm_statistic", [](int deg, int n, int samples, std::uint64_t seed, ScalarField field,
                                    const SupNormBudget& b) {
    const auto s = ksz::supnorm_statistic(deg, n, samples, seed, field, b);
    py::dict d;
    d["median"] = s.median;
    d["q1"] = s.q1;
    d["q3"] = s.q3;
    d["min"] = s.min;
    d["max"] = s.max;
    std::vector<double> lower;
    for (const auto& row : s.samples) lower.push_back(row.estimate.lower);
    d["lower"] = lower;
    return d;
  }, py::arg("m"), py::arg("n"), py::arg("sample_count"), py::arg("seed"), py::arg("field") = ScalarField::Complex,
     py::arg("budget") = default_budget);

  // scaling laboratory
  m.def("bh_exponent", &bh_exponent, py::arg("m"));
  m.def("sharp_exponent", &sharp_exponent, py::arg("m"), py::arg("r"));
  m.def("hoelder_interpolate", [](const std::vector<double>& x, double r, double s) {
    const auto h = hoelder_interpolate(x, r, s);
    return py::make_tuple(h.lhs, h.rhs);
  }, py::arg("x"), py::arg("r"), py::arg("s"));
  m.def("upper_bound_chain", [](const HomogeneousPolynomial& p, double r) {
    const auto c = upper_bound_chain(p, r);
    return py::make_tuple(c.ratio_bound_shape, c.bh_norm);
  }, py::arg("p"), py::arg("r"));
  m.def("ratio_lower_bound_theoretical", &ratio_lower_bound_theoretical, py::arg("m"), py::arg("n"), py::arg("r"));

  py::class_<ExperimentRecord>(m, "ExperimentRecord")
      .def_readonly("m", &ExperimentRecord::m)
      .def_readonly("n", &ExperimentRecord::n)
      .def_readonly("r", &ExperimentRecord::r)
      .def_readonly("seed", &ExperimentRecord::seed)
      .def_property_readonly("source", [](const ExperimentRecord& rec) { return std::string(to_string(rec.source)); })
      .def_readonly("coeff_norm_r", &ExperimentRecord::coeff_norm_r)
      .def_readonly("sup_lower", &ExperimentRecord::sup_lower)
      .def_readonly("sup_upper", &ExperimentRecord::sup_upper)
      .def_readonly("ratio", &ExperimentRecord::ratio)
      .def_readonly("ratio_conservative", &ExperimentRecord::ratio_conservative);

  py::class_<ScalingFit>(m, "ScalingFit")
      .def_readonly("slope", &ScalingFit::slope)
      .def_readonly("intercept", &ScalingFit::intercept)
      .def_readonly("residual_rms", &ScalingFit::residual_rms)
      .def_readonly("predicted_exponent", &ScalingFit::predicted_exponent)
      .def_readonly("n_values", &ScalingFit::n_values)
      .def_readonly("statistic", &ScalingFit::statistic);

  m.def("user_record", [](const HomogeneousPolynomial& p, double r, const SupNormBudget& b) {
    return make_record(p, r, b.seed, RecordSource::User, b);
  }, py::arg("p"), py::arg("r"), py::arg("budget") = default_budget);

  m.def("run_scaling_experiment", [](int deg, double r, const std::vector<int>& n_list, int samples_per_n,
                                     std::uint64_t seed, ScalarField field, const SupNormBudget& b) {
    ScalingOptions o;
    o.m = deg;
    o.r = r;
    o.n_list = n_list;
    o.samples_per_n = samples_per_n;
    o.seed = seed;
    o.field = field;
    o.budget = b;
    ScalingResult result;
    {
      py::gil_scoped_release release;
      result = run_scaling_experiment(o);
    }
    return py::make_tuple(result.records, result.fit);
  }, py::arg("m"), py::arg("r"), py::arg("n_list"), py::arg("samples_per_n"), py::arg("seed"),
     py::arg("field") = ScalarField::Complex, py::arg("budget") = default_budget);

  m.def("format_records", &format_records);
  m.def("parse_records", [](const std::string& csv) { return parse_records(csv); });

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
