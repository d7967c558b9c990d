#include "nbbd/counterfactual_model.hpp"

#include <cmath>

#include "nbbd/mollifier.hpp"
#include "nbbd/residue_calculus.hpp"
#include "nbbd/special_functions.hpp"
#include "power_table.hpp"

namespace nbbd::model {

namespace {

constexpr double kPoleDistance = 1e-8;
constexpr double kOrdinateMatch = 1e-6;

// prod (s - r_i) and its derivative
struct Quartic {
  Complex value;
  Complex derivative;
};

Quartic quartic(Complex s, const std::array<Complex, 4>& roots) {
  Complex value(1.0, 0.0), derivative(0.0, 0.0);
  for (const Complex r : roots) {
    derivative = derivative * (s - r) + value;
    value *= s - r;
  }
  return {value, derivative};
}

double min_distance(Complex s, const std::array<Complex, 4>& roots) {
  double d = std::abs(s - roots[0]);
  for (const Complex r : roots) d = std::min(d, std::abs(s - r));
  return d;
}

}  // namespace

void ModelSpec::validate() const {
  if (!(sigma0 > 0.5 && sigma0 < 1.0)) throw DomainError("model: sigma0 must lie in (1/2, 1)");
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) throw DomainError("model: gamma0 must be positive");
  if (!(removed_a > 0.0) || !(removed_b > 0.0) || !std::isfinite(removed_a) || !std::isfinite(removed_b)) {
    throw DomainError("model: removed ordinates must be positive");
  }
  if (removed_a == removed_b) throw DomainError("model: removed ordinates must be distinct");
}

void ModelSpec::validate_against(const zeros::ZeroTable& table) const {
  validate();
  const auto present = [&](double gamma) {
    for (const auto& e : table.entries()) {
      if (std::abs(e.ordinate - gamma) < kOrdinateMatch) return true;
    }
    return false;
  };
  if (!present(removed_a) || !present(removed_b)) throw DomainError("model: removed ordinate not in the zero table");
  for (const auto& e : table.entries()) {
    if (std::abs(e.ordinate - gamma0) < residue::kCollisionDistance) {
      throw CollisionError("model: gamma0 collides with a zero ordinate");
    }
  }
}

std::array<Complex, 4> ModelSpec::quadruplet() const noexcept {
  const Complex r0(sigma0, gamma0);
  return {r0, std::conj(r0), 1.0 - std::conj(r0), 1.0 - r0};
}

std::array<Complex, 4> ModelSpec::removed_zeros() const noexcept {
  const Complex a(0.5, removed_a), b(0.5, removed_b);
  return {a, std::conj(a), b, std::conj(b)};
}

Complex swap_factor(Complex s, const ModelSpec& spec) {
  const auto on = spec.removed_zeros();
  if (min_distance(s, on) < kPoleDistance) throw PoleError("swap factor: too close to a removed zero");
  return quartic(s, spec.quadruplet()).value / quartic(s, on).value;
}

Complex swap_factor_derivative(Complex s, const ModelSpec& spec) {
  const auto on = spec.removed_zeros();
  if (min_distance(s, on) < kPoleDistance) throw PoleError("swap factor: too close to a removed zero");
  const Quartic p = quartic(s, spec.quadruplet());
  const Quartic q = quartic(s, on);
  return (p.derivative * q.value - p.value * q.derivative) / (q.value * q.value);
}

Complex inverse_swap_factor(Complex s, const ModelSpec& spec) {
  const auto off = spec.quadruplet();
  if (min_distance(s, off) < kPoleDistance) throw PoleError("inverse swap factor: too close to an engineered zero");
  return quartic(s, spec.removed_zeros()).value / quartic(s, off).value;
}

Complex inverse_swap_factor_derivative(Complex s, const ModelSpec& spec) {
  const auto off = spec.quadruplet();
  if (min_distance(s, off) < kPoleDistance) throw PoleError("inverse swap factor: too close to an engineered zero");
  const Quartic p = quartic(s, spec.removed_zeros());
  const Quartic q = quartic(s, off);
  return (p.derivative * q.value - p.value * q.derivative) / (q.value * q.value);
}

CounterfactualZeta::CounterfactualZeta(ModelSpec spec, special::PrecisionSpec prec) : spec_(spec), prec_(prec) {
  spec_.validate();
  prec_.validate();
  const auto roots = spec_.removed_zeros();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i % 2 == 1) {
      removed_[i] = {roots[i], std::conj(removed_[i - 1].d1), std::conj(removed_[i - 1].d2)};
      continue;
    }
    const special::ZetaJet j = special::zeta_jet(roots[i], prec_);
    removed_[i] = {roots[i], j.d1, j.d2};
  }
}

int CounterfactualZeta::near_removed(Complex s) const {
  for (std::size_t i = 0; i < removed_.size(); ++i) {
    if (std::abs(s - removed_[i].root) < kCancellationRadius) return static_cast<int>(i);
  }
  return -1;
}

// Near a removed zero r, zeta(s) / (s - r) is replaced by its Taylor
// expansion zeta'(r) + zeta''(r) (s - r) / 2, and the remaining factor
// h(s) = Q_off(s) / prod_{other removed} (s - r_j) is evaluated directly.
Complex CounterfactualZeta::value(Complex s) const {
  const int k = near_removed(s);
  if (k < 0) return special::zeta(s, prec_) * swap_factor(s, spec_);
  const RemovedZero& r = removed_[static_cast<std::size_t>(k)];
  const Complex d = s - r.root;
  Complex rest(1.0, 0.0);
  for (std::size_t i = 0; i < removed_.size(); ++i) {
    if (static_cast<int>(i) != k) rest *= s - removed_[i].root;
  }
  return (r.d1 + 0.5 * r.d2 * d) * quartic(s, spec_.quadruplet()).value / rest;
}

Complex CounterfactualZeta::derivative(Complex s) const {
  const int k = near_removed(s);
  if (k < 0) {
    const special::ZetaJet j = special::zeta_jet(s, prec_);
    return j.d1 * swap_factor(s, spec_) + j.value * swap_factor_derivative(s, spec_);
  }
  const RemovedZero& r = removed_[static_cast<std::size_t>(k)];
  const Complex d = s - r.root;
  Complex rest(1.0, 0.0), rest_log_d(0.0, 0.0);
  for (std::size_t i = 0; i < removed_.size(); ++i) {
    if (static_cast<int>(i) == k) continue;
    rest *= s - removed_[i].root;
    rest_log_d += 1.0 / (s - removed_[i].root);
  }
  const Quartic off = quartic(s, spec_.quadruplet());
  const Complex h = off.value / rest;
  const Complex h_prime = (off.derivative / rest) - h * rest_log_d;
  return 0.5 * r.d2 * h + (r.d1 + 0.5 * r.d2 * d) * h_prime;
}

Complex CounterfactualZeta::derivative_at_engineered_zero(Complex q) const {
  return special::zeta(q, prec_) * swap_factor_derivative(q, spec_);
}

Complex CounterfactualZeta::derivative_at_zeta_zero(Complex rho, Complex zeta_prime) const {
  return zeta_prime * swap_factor(rho, spec_);
}

Complex model_zeta(Complex s, const ModelSpec& spec) { return CounterfactualZeta(spec).value(s); }
Complex model_zeta_prime(Complex s, const ModelSpec& spec) { return CounterfactualZeta(spec).derivative(s); }

CounterfactualMollifier::CounterfactualMollifier(std::int64_t n, ModelSpec spec) : n_(n), spec_(spec) {
  if (n < 2) throw DomainError("counterfactual mollifier: N must be >= 2");
  spec_.validate();
  log_n_ = std::log(static_cast<double>(n));
  const auto mu = mollifier::moebius_sieve(n);
  for (std::int64_t k = 1; k < n; ++k) {
    const int m = mu(k);
    if (m == 0) continue;
    const double lk = std::log(static_cast<double>(k));
    index_.push_back(k);
    log_k_.push_back(lk);
    mu_.push_back(m);
    log_ratio_.push_back(log_n_ - lk);
  }
  zeros_ = spec_.quadruplet();
  const auto on = spec_.removed_zeros();
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    const Complex q = zeros_[i];
    Complex p(0.0, 0.0);
    for (std::size_t k = 0; k < mu_.size(); ++k) p += mu_[k] * std::exp(-q * log_k_[k]);
    // Res(Q_on / Q_off, q) = Q_on(q) / Q_off'(q)
    zero_residue_[i] = quartic(q, on).value / quartic(q, zeros_).derivative * p;
  }
}

Complex CounterfactualMollifier::operator()(Complex s) const {
  Complex d0(0.0, 0.0), d1(0.0, 0.0);
  if (n_ - 1 <= detail::kPowerTableLimit) {
    thread_local std::vector<Complex> powers;
    detail::fill_powers(s, static_cast<long>(n_ - 1), powers);
    for (std::size_t k = 0; k < mu_.size(); ++k) {
      const Complex term = mu_[k] * powers[static_cast<std::size_t>(index_[k])];
      d0 += term;
      d1 += term * log_ratio_[k];
    }
  } else {
    for (std::size_t k = 0; k < mu_.size(); ++k) {
      const Complex term = mu_[k] * std::exp(-s * log_k_[k]);
      d0 += term;
      d1 += term * log_ratio_[k];
    }
  }
  Complex sum = inverse_swap_factor(s, spec_) * d1 + inverse_swap_factor_derivative(s, spec_) * d0;
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    const Complex d = zeros_[i] - s;
    sum += zero_residue_[i] * std::exp(d * log_n_) / (d * d);
  }
  return sum / log_n_;
}

Complex counterfactual_mollifier(std::int64_t n, Complex s, const ModelSpec& spec, const zeros::ZeroTable& table) {
  if (!(s.real() > 0.0 && s.real() < 1.0)) throw DomainError("counterfactual_mollifier: requires 0 < Re s < 1");
  if (n < 2) throw DomainError("counterfactual_mollifier: N must be >= 2");
  const double log_n = std::log(static_cast<double>(n));
  const CounterfactualZeta m(spec);
  const Complex value = m.value(s);
  if (value == Complex(0.0, 0.0)) throw CollisionError("counterfactual_mollifier: s is a zero of M");
  const Complex main = (1.0 / value) * (1.0 - m.derivative(s) / (value * log_n));
  return main + residue::sigma1(n, s, table, spec).value + residue::sigma2(n, s, spec, OffLineMode::kQuadruplet) +
         residue::trivial_zero_sum(s, n, spec).value / log_n;
}

metric::QuadratureSpec main_term_spec() {
  metric::QuadratureSpec spec;
  spec.t_max = 200.0;
  spec.panel_tolerance = 1e-10;
  spec.tail = metric::TailModel::kMeanSample;
  spec.initial_panel_width = 1.0;
  return spec;
}

MainTermResult main_term_integral(std::int64_t n, const ModelSpec& spec, const metric::QuadratureSpec& quad,
                                  OffLineMode mode) {
  if (n < 10) throw DomainError("main_term_integral: N must be >= 10");
  const CounterfactualZeta m(spec);
  const auto zeros = residue::offline_zeros(spec, mode);
  const metric::VectorIntegrand integrand = [&](double t, Eigen::Ref<Eigen::ArrayXd> out) {
    const Complex s(0.5, t);
    const Complex r = 1.0 - s;
    const Complex v = m.value(s) * residue::residue_sum(n, s, zeros) * m.value(r) * residue::residue_sum(n, r, zeros);
    out[0] = v.real();
    out[1] = v.imag();
  };
  // both signs of t, so the imaginary part is a genuine check
  metric::QuadratureSpec q = quad;
  q.even = false;
  const auto res = metric::weighted_integral_vector(integrand, 2, q);
  MainTermResult out;
  out.value = res.value[0];
  out.imaginary = res.value[1];
  out.relative_imaginary = std::abs(out.imaginary) / std::abs(out.value);
  return out;
}

metric::IntegralResult full_counterfactual_integral(std::int64_t n, const ModelSpec& spec,
                                                    const metric::QuadratureSpec& quad) {
  if (n < 10) throw DomainError("full_counterfactual_integral: N must be >= 10");
  const CounterfactualZeta m(spec);
  const CounterfactualMollifier a(n, spec);
  return metric::criterion_integral_product(
      [&](double t) {
        const Complex s(0.5, t);
        return m.value(s) * a(s);
      },
      quad, true);
}

}  // namespace nbbd::model
