#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nbbd/counterfactual_model.hpp"
#include "nbbd/criterion_metric.hpp"
#include "nbbd/mollifier.hpp"
#include "nbbd/residue_calculus.hpp"
#include "nbbd/special_functions.hpp"
#include "nbbd/theorem_fit.hpp"
#include "nbbd/zero_data.hpp"

namespace py = pybind11;
using nbbd::Complex;
namespace md = nbbd::model;
namespace me = nbbd::metric;
namespace zd = nbbd::zeros;

namespace {

me::QuadratureSpec quad_or_default(std::int64_t n, std::optional<double> t_max, std::optional<double> tol) {
  auto q = me::criterion_spec(n);
  if (t_max) q.t_max = *t_max;
  if (tol) q.panel_tolerance = *tol;
  return q;
}

md::ModelSpec make_model(double sigma0, double gamma0, double removed_a, double removed_b) {
  md::ModelSpec s;
  s.sigma0 = sigma0;
  s.gamma0 = gamma0;
  s.removed_a = removed_a;
  s.removed_b = removed_b;
  s.validate();
  return s;
}

md::OffLineMode parse_mode(const std::string& mode) {
  if (mode == "pair") return md::OffLineMode::kPair;
  if (mode == "quadruplet") return md::OffLineMode::kQuadruplet;
  throw nbbd::DomainError("mode must be 'pair' or 'quadruplet'");
}

py::dict integral_dict(const me::IntegralResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["panel_integral"] = r.panel_integral;
  d["error_estimate"] = r.error_estimate;
  d["tail_estimate"] = r.tail_estimate;
  d["tail_bound"] = r.tail_bound;
  d["panels"] = r.panels;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Zeta evaluation, mollifiers, the Nyman-Beurling distance and the counterfactual model.";
  m.attr("__version__") = "0.1.0";

  auto error = py::register_exception<nbbd::Error>(m, "Error", PyExc_RuntimeError);
  auto domain = py::register_exception<nbbd::DomainError>(m, "DomainError", error.ptr());
  py::register_exception<nbbd::PoleError>(m, "PoleError", domain.ptr());
  py::register_exception<nbbd::CollisionError>(m, "CollisionError", domain.ptr());
  py::register_exception<nbbd::PrecisionError>(m, "PrecisionError", error.ptr());
  py::register_exception<nbbd::ConvergenceError>(m, "ConvergenceError", error.ptr());
  py::register_exception<nbbd::ParseError>(m, "ParseError", error.ptr());
  py::register_exception<nbbd::SolverError>(m, "SolverError", error.ptr());

  // special functions
  m.def("zeta", [](Complex s) { return nbbd::special::zeta(s); }, py::arg("s"));
  m.def("zeta_derivative", [](Complex s, int order) { return nbbd::special::zeta_derivative(s, order); },
        py::arg("s"), py::arg("order") = 1);
  m.def("chi", &nbbd::special::chi, py::arg("s"));
  m.def("chi_log_derivative", &nbbd::special::chi_log_derivative, py::arg("s"));
  m.def("digamma", &nbbd::special::digamma, py::arg("z"));
  m.def("hardy_z", [](double t) { return nbbd::special::hardy_z(t); }, py::arg("t"));
  m.def("odd_zeta_table", &nbbd::special::odd_zeta_table, py::arg("n_max"));
  m.def("constants", [] {
    const auto c = nbbd::special::constants();
    py::dict d;
    d["euler_gamma"] = c.euler_gamma;
    d["log_4pi"] = c.log_4pi;
    d["nbbd_constant"] = c.nbbd_constant;
    return d;
  });

  // mollifier
  m.def("moebius", [](std::int64_t n) {
    const auto mu = nbbd::mollifier::moebius_sieve(n);
    std::vector<int> out;
    for (std::int64_t k = 1; k <= n; ++k) out.push_back(mu(k));
    return out;
  }, py::arg("n"), "mu(1..n)");
  m.def("vn_coefficients", [](std::int64_t n) {
    const auto p = nbbd::mollifier::build_vn(n);
    std::vector<double> out;
    for (const Complex a : p.coefficients()) out.push_back(a.real());
    return out;
  }, py::arg("n"));
  m.def("eval_dirichlet", [](const std::vector<Complex>& coeffs, Complex s) {
    return nbbd::mollifier::eval_dirichlet(nbbd::mollifier::DirichletPolynomial(coeffs), s);
  }, py::arg("coefficients"), py::arg("s"));
  m.def("eval_vn", [](std::int64_t n, Complex s) {
    return nbbd::mollifier::eval_dirichlet(nbbd::mollifier::build_vn(n), s);
  }, py::arg("n"), py::arg("s"));

  // criterion metric
  m.def("weighted_integral", [](const std::function<double(double)>& f, double t_max) {
    me::QuadratureSpec q;
    q.t_max = t_max;
    me::IntegralResult r;
    {
      // quadrature workers take the GIL per call of f
      py::gil_scoped_release release;
      r = me::weighted_integral(f, q);
    }
    return integral_dict(r);
  }, py::arg("f"), py::arg("t_max") = 200.0, "(1/2pi) int f(t) dt/(1/4+t^2) over the real line, f even");
  m.def("criterion_integral", [](std::int64_t n, std::optional<double> t_max, std::optional<double> tol) {
    me::IntegralResult r;
    {
      py::gil_scoped_release release;
      r = me::criterion_integral(nbbd::mollifier::build_vn(n), me::true_zeta_on_line(), quad_or_default(n, t_max, tol));
    }
    return integral_dict(r);
  }, py::arg("n"), py::arg("t_max") = py::none(), py::arg("tol") = py::none(), "I(V_N) for the true zeta");
  m.def("dn2", [](int n) {
    const auto g = me::build_gram(n);
    const auto d = me::solve_dn2(g);
    py::dict out;
    out["d2"] = d.d2;
    out["d2_raw"] = d.d2_raw;
    out["residual"] = d.residual;
    out["min_eigenvalue"] = g.min_eigenvalue();
    out["trace"] = g.trace();
    std::vector<Complex> a(d.coefficients.data(), d.coefficients.data() + d.coefficients.size());
    out["coefficients"] = a;
    return out;
  }, py::arg("n"));

  // zero data
  py::class_<zd::ZeroTable>(m, "ZeroTable")
      .def("__len__", &zd::ZeroTable::size)
      .def_property_readonly("height", &zd::ZeroTable::height)
      .def("ordinates", [](const zd::ZeroTable& t) {
        std::vector<double> out;
        for (const auto& e : t.entries()) out.push_back(e.ordinate);
        return out;
      })
      .def("zeta_primes", [](const zd::ZeroTable& t) {
        std::vector<Complex> out;
        for (const auto& e : t.entries()) out.push_back(e.zeta_prime);
        return out;
      })
      .def("truncated", &zd::ZeroTable::truncated, py::arg("t"));
  m.def("bundled_table_path", &zd::bundled_table_path);
  m.def("load_zero_table", [](const std::string& path, bool refine) { return zd::load_zero_table(path, refine); },
        py::arg("path"), py::arg("refine") = false);
  m.def("load_bundled_table", [] { return zd::load_zero_table(zd::bundled_table_path()); });
  m.def("zero_sum_constant", [](const zd::ZeroTable& t) {
    const auto z = zd::zero_sum_constant(t);
    py::dict d;
    d["value"] = z.value;
    d["bare_sum"] = z.bare_sum;
    d["tail"] = z.tail;
    d["height"] = z.height;
    return d;
  });
  m.def("refine_ordinate", &zd::refine_ordinate, py::arg("guess"));

  // residues
  m.def("residue_simple", &nbbd::residue::residue_simple, py::arg("rho"), py::arg("derivative"), py::arg("s"),
        py::arg("n"));
  m.def("f_series", [](Complex s, double z) { return nbbd::residue::f_series(s, z).value; }, py::arg("s"),
        py::arg("z"));
  m.def("lemma23_reconstruct", [](std::int64_t n, Complex s, const zd::ZeroTable& table, bool model) {
    std::optional<md::ModelSpec> spec;
    if (model) spec = md::ModelSpec{};
    const auto r = nbbd::residue::lemma23_reconstruct(n, s, table, spec);
    py::dict d;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["error"] = r.error;
    d["relative_error"] = r.relative_error;
    d["tail_estimate"] = r.tail_estimate;
    return d;
  }, py::arg("n"), py::arg("s"), py::arg("table"), py::arg("model") = false);

  // counterfactual model
  py::class_<md::ModelSpec>(m, "ModelSpec")
      .def(py::init(&make_model), py::arg("sigma0") = 0.75, py::arg("gamma0") = 10.0,
           py::arg("removed_a") = md::ModelSpec{}.removed_a, py::arg("removed_b") = md::ModelSpec{}.removed_b)
      .def_readonly("sigma0", &md::ModelSpec::sigma0)
      .def_readonly("gamma0", &md::ModelSpec::gamma0)
      .def_readonly("removed_a", &md::ModelSpec::removed_a)
      .def_readonly("removed_b", &md::ModelSpec::removed_b)
      .def("quadruplet", &md::ModelSpec::quadruplet);
  m.def("swap_factor", &md::swap_factor, py::arg("s"), py::arg("spec"));
  m.def("model_zeta", &md::model_zeta, py::arg("s"), py::arg("spec"));
  m.def("counterfactual_mollifier", [](std::int64_t n, Complex s, const md::ModelSpec& spec) {
    return md::CounterfactualMollifier(n, spec)(s);
  }, py::arg("n"), py::arg("s"), py::arg("spec"));
  m.def("main_term_integral", [](std::int64_t n, const md::ModelSpec& spec, const std::string& mode) {
    py::gil_scoped_release release;
    return md::main_term_integral(n, spec, md::main_term_spec(), parse_mode(mode)).value;
  }, py::arg("n"), py::arg("spec"), py::arg("mode") = "quadruplet");
  m.def("full_counterfactual_integral", [](std::int64_t n, const md::ModelSpec& spec) {
    py::gil_scoped_release release;
    return md::full_counterfactual_integral(n, spec, me::criterion_spec(n)).value;
  }, py::arg("n"), py::arg("spec"));
  m.def("fit_theorem_constants", [](const std::vector<std::pair<std::int64_t, double>>& values,
                                    const md::ModelSpec& spec, bool fit_frequency) {
    const auto f = md::fit_theorem_constants(values, spec, fit_frequency);
    py::dict d;
    d["A"] = f.a;
    d["B"] = f.b;
    d["frequency"] = f.frequency;
    d["rms_relative_residual"] = f.rms_relative_residual;
    d["sin_coefficient"] = f.sin_coefficient;
    d["rms_relative_residual_with_phase"] = f.rms_relative_residual_with_phase;
    return d;
  }, py::arg("values"), py::arg("spec"), py::arg("fit_frequency") = false);
  m.def("geometric_grid", &md::geometric_grid, py::arg("lo"), py::arg("hi"), py::arg("count"));
}
