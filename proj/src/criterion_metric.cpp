#include "nbbd/criterion_metric.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "nbbd/special_functions.hpp"

namespace nbbd::metric {

CriticalLineFunction true_zeta_on_line() {
  return [](double t) { return special::zeta(Complex(0.5, t)); };
}

QuadratureSpec criterion_spec(std::int64_t n) {
  QuadratureSpec spec;
  spec.t_max = std::min(kMaxCriterionHeight, std::max(200.0, 2.0 * static_cast<double>(n)));
  spec.tail = TailModel::kMeanSample;
  spec.panel_tolerance = 1e-9;
  // |F A|^2 oscillates with angular frequency up to about
  // 2 log N + log(t / 2pi) near the top of the range.
  const double omega = 2.0 * std::log(std::max<double>(2.0, static_cast<double>(n))) +
                       std::log(spec.t_max / (2.0 * kPi)) + 1.0;
  spec.initial_panel_width = std::clamp(8.0 / omega, 0.1, 2.0);
  return spec;
}

IntegralResult criterion_integral_product(const std::function<Complex(double t)>& product, const QuadratureSpec& spec,
                                          bool even) {
  QuadratureSpec s = spec;
  s.even = even;
  return weighted_integral([&](double t) { return std::norm(1.0 - product(t)); }, s);
}

IntegralResult criterion_integral(const mollifier::DirichletPolynomial& poly, const CriticalLineFunction& zeta_like,
                                  const QuadratureSpec& spec, bool conjugate_symmetric) {
  const mollifier::DirichletEvaluator eval(poly);
  const bool even = conjugate_symmetric && poly.has_real_coefficients();
  if (eval.support_size() == 0) {
    // |1 - 0|^2 integrates to the weight mass exactly.
    return criterion_integral_product([](double) { return Complex(0.0, 0.0); }, spec, even);
  }
  return criterion_integral_product([&](double t) { return zeta_like(t) * eval(Complex(0.5, t)); }, spec, even);
}

double GramSystem::hermitian_defect() const { return (gram - gram.adjoint()).cwiseAbs().maxCoeff(); }

double GramSystem::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double GramSystem::trace() const { return gram.trace().real(); }

GramSystem build_gram(int n) {
  QuadratureSpec spec = criterion_spec(n);
  spec.panel_tolerance = 1e-10;
  return build_gram(n, spec);
}

GramSystem build_gram(int n, const QuadratureSpec& spec) {
  if (n < 1 || n > kMaxGramSize) throw DomainError("build_gram: N outside [1, 64]");
  const auto size = static_cast<Eigen::Index>(n);
  const Eigen::Index upper = size * (size + 1) / 2;
  const Eigen::Index dim = upper + size + 1;
  std::vector<double> log_n(static_cast<std::size_t>(n));
  std::vector<double> inv_sqrt(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    log_n[static_cast<std::size_t>(k)] = std::log(k + 1.0);
    inv_sqrt[static_cast<std::size_t>(k)] = 1.0 / std::sqrt(k + 1.0);
  }

  // Components: upper triangle of Re(e_m conj e_n), then Re(conj e_n), then 1.
  // The imaginary parts are odd in t and integrate to zero over the line.
  const VectorIntegrand integrand = [&](double t, Eigen::Ref<Eigen::ArrayXd> out) {
    const Complex z = special::zeta(Complex(0.5, t));
    std::vector<Complex> e(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const double lg = log_n[static_cast<std::size_t>(k)];
      e[static_cast<std::size_t>(k)] = z * inv_sqrt[static_cast<std::size_t>(k)] * Complex(std::cos(t * lg), -std::sin(t * lg));
    }
    Eigen::Index idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) out[idx++] = (e[static_cast<std::size_t>(i)] * std::conj(e[static_cast<std::size_t>(j)])).real();
    for (int j = 0; j < n; ++j) out[idx++] = e[static_cast<std::size_t>(j)].real();
    out[idx] = 1.0;
  };

  QuadratureSpec s = spec;
  s.even = true;
  const VectorIntegralResult r = weighted_integral_vector(integrand, dim, s);

  GramSystem g;
  g.n = n;
  g.spec = s;
  g.gram.resize(size, size);
  g.rhs.resize(size);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = i; j < size; ++j) {
      g.gram(i, j) = r.value[idx];
      g.gram(j, i) = std::conj(g.gram(i, j));
      ++idx;
    }
  }
  for (Eigen::Index j = 0; j < size; ++j) g.rhs[j] = r.value[idx++];
  g.norm_one = r.value[idx];
  return g;
}

double quadratic_form(const GramSystem& gram, const Eigen::VectorXcd& a) {
  if (a.size() != gram.gram.rows()) throw DomainError("quadratic_form: coefficient length mismatch");
  const Complex ab = a.dot(gram.rhs);  // a^H b
  const Complex aga = a.dot(gram.gram * a);
  return gram.norm_one - 2.0 * ab.real() + aga.real();
}

DistanceResult solve_dn2(const GramSystem& gram, double ridge) {
  if (gram.n < 1 || gram.gram.rows() != gram.n || gram.rhs.size() != gram.n) {
    throw DomainError("solve_dn2: malformed Gram system");
  }
  if (!(ridge >= 0.0)) throw DomainError("solve_dn2: ridge must be non-negative");
  const double shift = ridge * gram.trace() / gram.n;
  Eigen::MatrixXcd reg = gram.gram;
  reg.diagonal().array() += shift;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(reg);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw SolverError("solve_dn2: regularized Gram matrix is not positive definite");
  }
  Eigen::VectorXcd a = ldlt.solve(gram.rhs);
  if (!a.allFinite()) throw SolverError("solve_dn2: solution is not finite");

  DistanceResult out;
  out.n = gram.n;
  out.coefficients = a;
  out.d2_raw = quadratic_form(gram, a);
  out.d2 = std::max(0.0, out.d2_raw);
  out.residual = (gram.gram * a - gram.rhs).norm();
  return out;
}

}  // namespace nbbd::metric
