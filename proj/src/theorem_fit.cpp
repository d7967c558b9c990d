#include "nbbd/theorem_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>

namespace nbbd::model {

namespace {

struct Linear {
  Eigen::VectorXd coeffs;
  Eigen::VectorXd fitted;
  double rms = 0.0;
};

Linear solve(const std::vector<double>& x, const std::vector<double>& y, double omega, bool with_sin) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, with_sin ? 3 : 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = std::cos(omega * x[static_cast<std::size_t>(i)]);
    design(i, 1) = 1.0;
    if (with_sin) design(i, 2) = std::sin(omega * x[static_cast<std::size_t>(i)]);
    rhs[i] = y[static_cast<std::size_t>(i)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < design.cols()) throw SolverError("fit: design matrix is rank deficient");
  Linear out;
  out.coeffs = qr.solve(rhs);
  out.fitted = design * out.coeffs;
  double ss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = (rhs[i] - out.fitted[i]) / rhs[i];
    ss += r * r;
  }
  out.rms = std::sqrt(ss / static_cast<double>(n));
  return out;
}

}  // namespace

FitResult fit_theorem_constants(std::span<const std::pair<std::int64_t, double>> values, const ModelSpec& spec,
                                bool fit_frequency) {
  spec.validate();
  if (values.size() < 8) throw DomainError("fit: need at least 8 grid points");
  std::vector<double> x, y;
  FitResult out;
  for (const auto& [n, v] : values) {
    if (n < 2) throw DomainError("fit: N must be >= 2");
    if (!std::isfinite(v) || v == 0.0) throw DomainError("fit: values must be finite and nonzero");
    const double ln = std::log(static_cast<double>(n));
    x.push_back(ln);
    y.push_back(v * ln * ln / std::pow(static_cast<double>(n), 2.0 * spec.sigma0 - 1.0));
    out.n_grid.push_back(n);
  }
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (!(*hi - *lo > kPi / spec.gamma0)) throw DomainError("fit: grid spans less than one cosine period in log N");

  double omega = 2.0 * spec.gamma0;
  if (fit_frequency) {
    const auto rss = [&](double w) {
      const Linear l = solve(x, y, w, false);
      return l.rms;
    };
    // the residual is multimodal in omega; locate the basin first
    const int steps = 2000;
    double best = omega, best_value = rss(omega);
    const double step = 0.4 * omega / steps;
    for (int i = 0; i <= steps; ++i) {
      const double w = 0.8 * 2.0 * spec.gamma0 + step * i;
      const double r = rss(w);
      if (r < best_value) best = w, best_value = r;
    }
    const auto m = boost::math::tools::brent_find_minima(rss, best - step, best + step, 52);
    omega = m.first;
  }

  const Linear l = solve(x, y, omega, false);
  out.a = l.coeffs[0];
  out.b = l.coeffs[1];
  out.frequency = omega;
  out.rms_relative_residual = l.rms;
  out.normalized = y;
  out.fitted.assign(l.fitted.data(), l.fitted.data() + l.fitted.size());
  const Linear p = solve(x, y, omega, true);
  out.sin_coefficient = p.coeffs[2];
  out.rms_relative_residual_with_phase = p.rms;
  return out;
}

std::vector<std::int64_t> geometric_grid(std::int64_t lo, std::int64_t hi, int count) {
  if (lo < 1 || hi < lo || count < 1) throw DomainError("geometric_grid: need 1 <= lo <= hi and count >= 1");
  std::vector<std::int64_t> grid;
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    const auto v = static_cast<std::int64_t>(std::llround(static_cast<double>(lo) * std::pow(double(hi) / double(lo), f)));
    if (grid.empty() || v != grid.back()) grid.push_back(v);
  }
  return grid;
}

}  // namespace nbbd::model
