// The Nyman-Beurling distance: for a Dirichlet polynomial A and a zeta-like
// function F (the true zeta or a counterfactual model),
//
//     I(A) = (1/2pi) * integral |1 - F A(1/2 + it)|^2 dt / (1/4 + t^2),
//
// and the exact infimum d_N^2 of I over all polynomials of length N, obtained
// from the Gram system of the dilation family e_n(s) = zeta(s) n^{-s}.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "nbbd/mollifier.hpp"
#include "nbbd/quadrature.hpp"

namespace nbbd::metric {

// F(1/2 + it) for a zeta-like function F.
using CriticalLineFunction = std::function<Complex(double t)>;

// zeta(1/2 + it) with the library's default precision.
CriticalLineFunction true_zeta_on_line();

// Quadrature defaults for a criterion integral of a length-N polynomial:
// t_max = max(200, 2N) capped at kMaxCriterionHeight, sampled tail,
// initial panel width matched to the integrand's oscillation.
QuadratureSpec criterion_spec(std::int64_t n);

inline constexpr double kMaxCriterionHeight = 5e4;

// `conjugate_symmetric` states that F(conj s) = conj F(s); together with real
// coefficients this makes the integrand even in t.
IntegralResult criterion_integral(const mollifier::DirichletPolynomial& poly, const CriticalLineFunction& zeta_like,
                                  const QuadratureSpec& spec, bool conjugate_symmetric = true);

// Integrates |1 - F(1/2+it) * A(1/2+it)|^2 for an arbitrary evaluator of the
// product F * A; used by the counterfactual model.
IntegralResult criterion_integral_product(const std::function<Complex(double t)>& product, const QuadratureSpec& spec,
                                          bool even = true);

struct GramSystem {
  int n = 0;
  Eigen::MatrixXcd gram;  // <e_m, e_n>
  Eigen::VectorXcd rhs;   // <1, e_n>
  double norm_one = 1.0;  // <1, 1> under the same discretization
  QuadratureSpec spec;

  double hermitian_defect() const;
  double min_eigenvalue() const;
  double trace() const;
};

inline constexpr int kMaxGramSize = 64;

// 1 <= N <= 64.
GramSystem build_gram(int n, const QuadratureSpec& spec);
GramSystem build_gram(int n);

struct DistanceResult {
  int n = 0;
  double d2 = 0.0;      // clipped at 0 for reporting
  double d2_raw = 0.0;  // value before clipping
  Eigen::VectorXcd coefficients;
  double residual = 0.0;  // || G a - b || with the unregularized G
};

inline constexpr double kDefaultRidge = 1e-10;

// Solves (G + lambda tr(G)/N I) a = b and evaluates the quadratic form.
DistanceResult solve_dn2(const GramSystem& gram, double ridge = kDefaultRidge);

// <1,1> - 2 Re(a^H b) + a^H G a for given coefficients.
double quadratic_form(const GramSystem& gram, const Eigen::VectorXcd& coefficients);

}  // namespace nbbd::metric
