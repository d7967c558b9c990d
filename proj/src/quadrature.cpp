#include "nbbd/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "nbbd/parallel.hpp"

namespace nbbd::metric {

namespace {

using Eigen::ArrayXd;
using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

struct PanelSum {
  ArrayXd integral;
  double error = 0.0;
  long panels = 0;
};

// One G10/K21 panel. Error scaling follows QUADPACK's qk21.
struct PanelEstimate {
  ArrayXd kronrod;
  double error;
};

PanelEstimate kronrod_panel(const VectorIntegrand& g, Eigen::Index dim, double a, double b) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<ArrayXd, 21> values;
  for (auto& v : values) v.resize(dim);
  g(center, values[0]);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    g(center - half * xk[i], values[2 * i - 1]);
    g(center + half * xk[i], values[2 * i]);
  }

  ArrayXd kron = wk[0] * values[0];
  ArrayXd gauss = ArrayXd::Zero(dim);
  ArrayXd abs_sum = wk[0] * values[0].abs();
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const ArrayXd pair = values[2 * i - 1] + values[2 * i];
    kron += wk[i] * pair;
    abs_sum += wk[i] * (values[2 * i - 1].abs() + values[2 * i].abs());
    if (i % 2 == 1) gauss += wg[(i - 1) / 2] * pair;
  }
  const ArrayXd mean = 0.5 * kron;
  ArrayXd resasc = wk[0] * (values[0] - mean).abs();
  for (std::size_t i = 1; i < xk.size(); ++i) {
    resasc += wk[i] * ((values[2 * i - 1] - mean).abs() + (values[2 * i] - mean).abs());
  }
  kron *= half;
  gauss *= half;
  resasc *= std::abs(half);
  abs_sum *= std::abs(half);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double worst = 0.0;
  for (Eigen::Index c = 0; c < dim; ++c) {
    double err = std::abs(kron[c] - gauss[c]);
    if (resasc[c] != 0.0 && err != 0.0) err = resasc[c] * std::min(1.0, std::pow(200.0 * err / resasc[c], 1.5));
    err = std::max(err, 50.0 * eps * abs_sum[c]);
    if (!std::isfinite(err) || !std::isfinite(kron[c])) {
      throw ConvergenceError("weighted_integral: non-finite integrand value");
    }
    worst = std::max(worst, err);
  }
  return {std::move(kron), worst};
}

PanelSum adaptive_panel(const VectorIntegrand& g, Eigen::Index dim, double a, double b, double tol,
                        long budget) {
  struct Pending {
    double a, b, tol;
  };
  PanelSum out{ArrayXd::Zero(dim), 0.0, 0};
  std::vector<Pending> stack{{a, b, tol}};
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    PanelEstimate est = kronrod_panel(g, dim, p.a, p.b);
    const bool tiny = (p.b - p.a) < 1e-9 * std::max(1.0, std::abs(p.a));
    if (est.error <= p.tol || tiny) {
      out.integral += est.kronrod;
      out.error += est.error;
      ++out.panels;
      continue;
    }
    if (out.panels + static_cast<long>(stack.size()) + 2 > budget) {
      throw ConvergenceError("weighted_integral: panel budget exhausted");
    }
    const double mid = 0.5 * (p.a + p.b);
    // right half pushed first so the left half is summed first
    stack.push_back({mid, p.b, 0.5 * p.tol});
    stack.push_back({p.a, mid, 0.5 * p.tol});
  }
  return out;
}

struct TailResult {
  ArrayXd estimate;
  double bound;
};

TailResult tail_contribution(const VectorIntegrand& f, Eigen::Index dim, const QuadratureSpec& spec) {
  const double mass = weight_tail_mass(spec.t_max);
  ArrayXd buf(dim);
  double sup = 0.0;
  if (spec.tail == TailModel::kMeanSample) {
    const auto pts = tail_sample_points(spec.t_max, spec.tail_samples);
    ArrayXd sum = ArrayXd::Zero(dim);
    long count = 0;
    for (const double t : pts) {
      for (const double sign : {1.0, -1.0}) {
        if (sign < 0 && spec.even) continue;
        f(sign * t, buf);
        sum += buf;
        sup = std::max(sup, buf.abs().maxCoeff());
        ++count;
      }
    }
    return {sum / static_cast<double>(count) * mass, sup * mass};
  }

  // u = t_max / t maps [t_max, inf) onto (0, 1]; dt/(1/4+t^2) = T du/(u^2/4 + T^2).
  const double big_t = spec.t_max;
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  constexpr int kPanels = 4;
  ArrayXd sum = ArrayXd::Zero(dim);
  for (int p = 0; p < kPanels; ++p) {
    const double a = static_cast<double>(p) / kPanels;
    const double b = static_cast<double>(p + 1) / kPanels;
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    for (std::size_t i = 0; i < xk.size(); ++i) {
      for (const double side : {-1.0, 1.0}) {
        if (i == 0 && side > 0) continue;
        const double u = c + side * h * xk[i];
        const double jac = big_t / (0.25 * u * u + big_t * big_t);
        const double w = wk[i] * h * jac / (2.0 * kPi);
        for (const double sign : {1.0, -1.0}) {
          if (sign < 0 && spec.even) continue;
          f(sign * big_t / u, buf);
          sum += (spec.even ? 2.0 : 1.0) * w * buf;
          sup = std::max(sup, buf.abs().maxCoeff());
        }
      }
    }
  }
  return {sum, sup * mass};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(t_max >= 1.0)) throw DomainError("QuadratureSpec: t_max must be >= 1");
  if (!(panel_tolerance >= 1e-12)) throw DomainError("QuadratureSpec: panel_tolerance must be >= 1e-12");
  if (max_panels < 1) throw DomainError("QuadratureSpec: max_panels must be positive");
  if (!(initial_panel_width > 0.0)) throw DomainError("QuadratureSpec: initial_panel_width must be positive");
  if (tail_samples < 1) throw DomainError("QuadratureSpec: tail_samples must be positive");
}

double weight_tail_mass(double t_max) { return (2.0 / kPi) * std::atan(1.0 / (2.0 * t_max)); }

std::vector<double> tail_sample_points(double t_max, int count) {
  std::vector<double> pts(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) pts[static_cast<std::size_t>(j)] = t_max * (1.0 + (j + 0.5) / count);
  return pts;
}

VectorIntegralResult weighted_integral_vector(const VectorIntegrand& f, Eigen::Index dim,
                                              const QuadratureSpec& spec) {
  spec.validate();
  if (dim < 1) throw DomainError("weighted_integral_vector: dim must be >= 1");
  const double lo = spec.even ? 0.0 : -spec.t_max;
  const double hi = spec.t_max;
  const double factor = (spec.even ? 2.0 : 1.0) / (2.0 * kPi);
  const VectorIntegrand g = [&](double t, Eigen::Ref<ArrayXd> out) {
    f(t, out);
    out *= factor / (0.25 + t * t);
  };

  const long n0 = std::max<long>(1, static_cast<long>(std::ceil((hi - lo) / spec.initial_panel_width)));
  if (n0 > spec.max_panels) throw ConvergenceError("weighted_integral: t_max needs more panels than max_panels");
  const double width = (hi - lo) / static_cast<double>(n0);
  const long budget = std::max<long>(64, spec.max_panels / n0);
  const double panel_tol = spec.panel_tolerance / static_cast<double>(n0);

  auto sums = parallel_map(static_cast<std::size_t>(n0), [&](std::size_t i) {
    const double a = lo + width * static_cast<double>(i);
    const double b = (static_cast<long>(i) + 1 == n0) ? hi : a + width;
    return adaptive_panel(g, dim, a, b, panel_tol, budget);
  });

  VectorIntegralResult out;
  out.value = ArrayXd::Zero(dim);
  for (const auto& s : sums) {
    out.value += s.integral;
    out.error_estimate += s.error;
    out.panels += s.panels;
  }
  if (out.panels > spec.max_panels) throw ConvergenceError("weighted_integral: max_panels exceeded");
  TailResult tail = tail_contribution(f, dim, spec);
  out.value += tail.estimate;
  out.tail_estimate = std::move(tail.estimate);
  out.tail_bound = tail.bound;
  return out;
}

IntegralResult weighted_integral(const std::function<double(double)>& f, const QuadratureSpec& spec) {
  const VectorIntegrand g = [&](double t, Eigen::Ref<Eigen::ArrayXd> out) { out[0] = f(t); };
  const VectorIntegralResult r = weighted_integral_vector(g, 1, spec);
  IntegralResult out;
  out.value = r.value[0];
  out.tail_estimate = r.tail_estimate[0];
  out.panel_integral = r.value[0] - r.tail_estimate[0];
  out.tail_bound = r.tail_bound;
  out.error_estimate = r.error_estimate;
  out.panels = r.panels;
  return out;
}

}  // namespace nbbd::metric
