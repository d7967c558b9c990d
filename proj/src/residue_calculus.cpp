#include "nbbd/residue_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nbbd/mollifier.hpp"
#include "nbbd/special_functions.hpp"

namespace nbbd::residue {

namespace {

constexpr int kMaxSeriesTerms = 200;

const std::vector<double>& odd_zeta() {
  static const std::vector<double> table = special::odd_zeta_table(kMaxSeriesTerms);
  return table;
}

double log_length(std::int64_t n) {
  if (n < 2) throw DomainError("residue: N must be >= 2");
  return std::log(static_cast<double>(n));
}

// sum_{k>=1} (-1)^k c (2 pi z)^{2k} / ((2k)! zeta(2k+1) (2k+s)^2 scale(k))
template <class Scale>
SeriesResult alternating_trivial_series(Complex s, double z, Scale scale) {
  SeriesResult out{Complex(0.0, 0.0), 0, false};
  const double x2 = (2.0 * kPi * z) * (2.0 * kPi * z);
  double power = 1.0;  // (2 pi z)^{2k} / (2k)!
  for (int k = 1; k <= kMaxSeriesTerms; ++k) {
    const double kk = 2.0 * k;
    power *= x2 / ((kk - 1.0) * kk);
    const Complex denom = kk + s;
    if (denom == Complex(0.0, 0.0)) throw PoleError("trivial-zero series: s is a negative even integer");
    const Complex term = ((k % 2 == 0) ? 1.0 : -1.0) * power /
                         (odd_zeta()[static_cast<std::size_t>(k - 1)] * denom * denom * scale(k));
    out.value += term;
    out.terms = k;
    if (std::abs(term) < 1e-16 * std::abs(out.value)) {
      out.converged = true;
      break;
    }
  }
  return out;
}

double mean_inverse_derivative(std::span<const SimpleZero> zeros, double height) {
  // local average of 1/|F'(rho)| over the upper half of the table
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& z : zeros) {
    if (z.rho.imag() > 0.5 * height) {
      sum += 1.0 / std::abs(z.derivative);
      ++count;
    }
  }
  if (count == 0) {
    for (const auto& z : zeros) sum += 1.0 / std::abs(z.derivative), ++count;
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

SigmaResult sigma_from_zeros(std::int64_t n, Complex s, std::span<const SimpleZero> zeros, double height) {
  SigmaResult out;
  out.value = residue_sum(n, s, zeros);
  out.truncation_height = height;
  out.terms = zeros.size();
  if (height > 2.0 * kPi) {
    // 2 N^{1/2 - sigma} <1/|F'|> int_T^inf (1/2pi) log(t/2pi) / t^2 dt, over both signs
    const double density = (std::log(height / (2.0 * kPi)) + 1.0) / (2.0 * kPi * height);
    out.tail_estimate = 2.0 * std::pow(static_cast<double>(n), 0.5 - s.real()) * mean_inverse_derivative(zeros, height) *
                        density / log_length(n);
  }
  return out;
}

}  // namespace

Complex residue_simple(Complex rho, Complex derivative_at_rho, Complex s, std::int64_t n) {
  const Complex d = rho - s;
  if (d == Complex(0.0, 0.0)) throw CollisionError("residue: rho coincides with s");
  if (derivative_at_rho == Complex(0.0, 0.0)) throw DomainError("residue: zero derivative at a simple zero");
  return std::exp(d * std::log(static_cast<double>(n))) / (derivative_at_rho * d * d);
}

Complex residue_contour(Complex rho, Complex s, std::int64_t n, const ZetaLike& f, const ContourOptions& contour) {
  const double gap_s = std::abs(rho - s);
  if (gap_s == 0.0) throw CollisionError("residue: rho coincides with s");
  double gap_other = std::numeric_limits<double>::infinity();
  for (const Complex z : contour.other_zeros) {
    if (z != rho) gap_other = std::min(gap_other, std::abs(z - rho));
  }
  double radius = 0.0;
  if (contour.radius) {
    radius = *contour.radius;
    if (!(radius > 0.0)) throw DomainError("residue: contour radius must be positive");
    if (radius >= gap_s) throw CollisionError("residue: contour encloses s");
    if (radius >= gap_other) throw CollisionError("residue: contour encloses another zero");
  } else {
    radius = std::min({0.25 * gap_s, 0.25 * gap_other, 0.05});
  }
  if (contour.points < 8) throw DomainError("residue: contour needs at least 8 points");

  const double log_n = std::log(static_cast<double>(n));
  Complex sum(0.0, 0.0);
  for (int k = 0; k < contour.points; ++k) {
    const Complex offset = std::polar(radius, 2.0 * kPi * k / contour.points);
    const Complex z = rho + offset;
    const Complex d = z - s;
    sum += std::exp(d * log_n) / (f.value(z) * d * d) * offset;
  }
  return sum / static_cast<double>(contour.points);
}

Complex residue_rn(Complex rho, int mult, Complex s, std::int64_t n, const ZetaLike& f, const ContourOptions& contour) {
  if (mult < 1) throw DomainError("residue: multiplicity must be >= 1");
  if (mult == 1) return residue_simple(rho, f.derivative(rho), s, n);
  return residue_contour(rho, s, n, f, contour);
}

SeriesResult f_series(Complex s, double z) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("f_series: z must lie in (0, 1)");
  SeriesResult r = alternating_trivial_series(s, z, [](int) { return 1.0; });
  r.value *= kPi * 2.0 * kPi * std::exp(s * std::log(z));
  return r;
}

SeriesResult trivial_zero_sum(Complex s, std::int64_t n) {
  const double z = 1.0 / static_cast<double>(n);
  log_length(n);
  SeriesResult r = alternating_trivial_series(s, z, [](int) { return 1.0; });
  r.value *= 2.0 * std::exp(s * std::log(z));
  return r;
}

SeriesResult trivial_zero_sum(Complex s, std::int64_t n, const ModelSpec& model) {
  const double z = 1.0 / static_cast<double>(n);
  log_length(n);
  SeriesResult r = alternating_trivial_series(
      s, z, [&](int k) { return model::swap_factor(Complex(-2.0 * k, 0.0), model); });
  r.value *= 2.0 * std::exp(s * std::log(z));
  return r;
}

std::vector<SimpleZero> online_zeros(const zeros::ZeroTable& table) {
  std::vector<SimpleZero> out;
  out.reserve(2 * table.size());
  for (const auto& e : table.entries()) {
    if (e.multiplicity != 1) throw DomainError("online_zeros: only simple zeros are supported");
    if (e.zeta_prime == Complex(0.0, 0.0)) throw DomainError("online_zeros: zeta' not cached in table");
    out.push_back({e.rho(), e.zeta_prime});
    out.push_back({std::conj(e.rho()), std::conj(e.zeta_prime)});
  }
  return out;
}

std::vector<SimpleZero> online_zeros(const zeros::ZeroTable& table, const ModelSpec& model) {
  const model::CounterfactualZeta m(model);
  std::vector<SimpleZero> out;
  out.reserve(2 * table.size());
  for (const auto& e : table.entries()) {
    if (std::abs(e.ordinate - model.removed_a) < 1e-6 || std::abs(e.ordinate - model.removed_b) < 1e-6) continue;
    if (e.multiplicity != 1) throw DomainError("online_zeros: only simple zeros are supported");
    if (e.zeta_prime == Complex(0.0, 0.0)) throw DomainError("online_zeros: zeta' not cached in table");
    const Complex d = m.derivative_at_zeta_zero(e.rho(), e.zeta_prime);
    out.push_back({e.rho(), d});
    out.push_back({std::conj(e.rho()), std::conj(d)});
  }
  return out;
}

std::vector<SimpleZero> offline_zeros(const ModelSpec& model, OffLineMode mode) {
  const model::CounterfactualZeta m(model);
  const auto q = model.quadruplet();
  const std::size_t count = mode == OffLineMode::kPair ? 2 : 4;
  std::vector<SimpleZero> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({q[i], m.derivative_at_engineered_zero(q[i])});
  return out;
}

Complex residue_sum(std::int64_t n, Complex s, std::span<const SimpleZero> zeros) {
  const double log_n = log_length(n);
  Complex sum(0.0, 0.0);
  for (const auto& z : zeros) {
    if (std::abs(z.rho - s) < kCollisionDistance) throw CollisionError("residue sum: s within 1e-3 of a zero");
    sum += residue_simple(z.rho, z.derivative, s, n);
  }
  return sum / log_n;
}

SigmaResult sigma1(std::int64_t n, Complex s, const zeros::ZeroTable& table) {
  const auto zs = online_zeros(table);
  return sigma_from_zeros(n, s, zs, table.height());
}

SigmaResult sigma1(std::int64_t n, Complex s, const zeros::ZeroTable& table, const ModelSpec& model) {
  const auto zs = online_zeros(table, model);
  return sigma_from_zeros(n, s, zs, table.height());
}

Complex sigma2(std::int64_t n, Complex s, const ModelSpec& model, OffLineMode mode) {
  const auto zs = offline_zeros(model, mode);
  return residue_sum(n, s, zs);
}

DecompositionReport lemma23_reconstruct(std::int64_t n, Complex s, const zeros::ZeroTable& table,
                                        const std::optional<ModelSpec>& model) {
  if (!(s.real() > 0.0 && s.real() < 1.0)) throw DomainError("lemma23_reconstruct: requires 0 < Re s < 1");
  const double log_n = log_length(n);
  DecompositionReport out;
  out.truncation_height = table.height();
  if (model) {
    out.lhs = model::CounterfactualMollifier(n, *model)(s);
    out.rhs = model::counterfactual_mollifier(n, s, *model, table);
    out.tail_estimate = sigma1(n, s, table, *model).tail_estimate;
  } else {
    out.lhs = mollifier::eval_dirichlet(mollifier::build_vn(n), s);
    const special::ZetaJet z = special::zeta_jet(s);
    if (std::abs(z.value) == 0.0) throw CollisionError("lemma23_reconstruct: s is a zero of zeta");
    const SigmaResult sig = sigma1(n, s, table);
    out.rhs = (1.0 / z.value) * (1.0 - z.d1 / (z.value * log_n)) + sig.value + trivial_zero_sum(s, n).value / log_n;
    out.tail_estimate = sig.tail_estimate;
  }
  out.error = std::abs(out.lhs - out.rhs);
  out.relative_error = out.error / std::abs(out.lhs);
  return out;
}

}  // namespace nbbd::residue
