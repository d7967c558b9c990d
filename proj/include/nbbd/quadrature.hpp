// Integration against the weighted Hardy-space measure
//
//     <f> = (1/2pi) * integral_{-inf}^{inf} f(t) dt / (1/4 + t^2).
//
// [0, t_max] (or [-t_max, t_max] for integrands that are not even) is split
// into fixed-width panels, each refined by bisection with a 21-point
// Gauss-Kronrod rule. The tail beyond t_max is estimated separately, either
// by mapping it onto (0, 1] (smooth, decaying integrands) or by sampling the
// integrand on [t_max, 2 t_max] and multiplying by the exact weight mass of
// the tail (oscillatory integrands that cannot be evaluated far out).
#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "nbbd/common.hpp"

namespace nbbd::metric {

enum class TailModel {
  kSubstitution,  // t = t_max / u, u in (0, 1], Gauss-Kronrod in u
  kMeanSample,    // mean (estimate) and sup (bound) on a grid in [t_max, 2 t_max]
};

struct QuadratureSpec {
  double t_max = 200.0;
  double panel_tolerance = 1e-10;
  long max_panels = 4'000'000;
  double initial_panel_width = 1.0;
  TailModel tail = TailModel::kSubstitution;
  int tail_samples = 96;
  // Integrand satisfies f(-t) = f(t); only [0, t_max] is integrated.
  bool even = true;

  void validate() const;
};

struct IntegralResult {
  double value = 0.0;          // panel integral + tail estimate
  double panel_integral = 0.0;
  double error_estimate = 0.0; // summed panel error estimates
  double tail_estimate = 0.0;
  double tail_bound = 0.0;     // sup |f| on the sampled tail times tail mass
  long panels = 0;
};

// (1/2pi) * integral over |t| > t_max of dt / (1/4 + t^2).
double weight_tail_mass(double t_max);

// Deterministic sample abscissae used by TailModel::kMeanSample.
std::vector<double> tail_sample_points(double t_max, int count);

IntegralResult weighted_integral(const std::function<double(double)>& f, const QuadratureSpec& spec);

// Vector-valued variant: f(t, out) fills `dim` components. Panels are
// refined until every component meets the tolerance, so all components
// share one panel decomposition and one tail sample grid.
struct VectorIntegralResult {
  Eigen::ArrayXd value;
  Eigen::ArrayXd tail_estimate;
  double tail_bound = 0.0;
  double error_estimate = 0.0;
  long panels = 0;
};

using VectorIntegrand = std::function<void(double, Eigen::Ref<Eigen::ArrayXd>)>;

VectorIntegralResult weighted_integral_vector(const VectorIntegrand& f, Eigen::Index dim,
                                              const QuadratureSpec& spec);

}  // namespace nbbd::metric
