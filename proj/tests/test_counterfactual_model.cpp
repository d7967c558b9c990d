#include "doctest.h"

#include <random>

#include "nbbd/counterfactual_model.hpp"
#include "nbbd/mollifier.hpp"
#include "nbbd/residue_calculus.hpp"
#include "nbbd/special_functions.hpp"

using nbbd::Complex;
namespace md = nbbd::model;
namespace zd = nbbd::zeros;

namespace {

const zd::ZeroTable& bundled() {
  static const zd::ZeroTable table = zd::load_zero_table(zd::bundled_table_path());
  return table;
}

template <class F>
Complex central_difference(F f, Complex s, double h) {
  return (f(s - 2.0 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2.0 * h)) / (12.0 * h);
}

}  // namespace

TEST_CASE("model parameters") {
  md::ModelSpec spec;
  CHECK_NOTHROW(spec.validate_against(bundled()));
  md::ModelSpec bad = spec;
  bad.sigma0 = 0.5;
  CHECK_THROWS_AS(bad.validate(), nbbd::DomainError);
  bad = spec;
  bad.removed_b = bad.removed_a;
  CHECK_THROWS_AS(bad.validate(), nbbd::DomainError);
  bad = spec;
  bad.removed_b = 22.0;
  CHECK_THROWS_AS(bad.validate_against(bundled()), nbbd::DomainError);
  bad = spec;
  bad.gamma0 = bundled().entries()[5].ordinate;
  CHECK_THROWS_AS(bad.validate_against(bundled()), nbbd::CollisionError);

  const auto q = spec.quadruplet();
  CHECK(q[0] == Complex(0.75, 10.0));
  CHECK(q[1] == Complex(0.75, -10.0));
  CHECK(q[2] == Complex(0.25, 10.0));
  CHECK(q[3] == Complex(0.25, -10.0));
}

TEST_CASE("swap factor symmetries") {
  const md::ModelSpec spec;
  CHECK(std::abs(md::swap_factor(Complex(0.3, 7.0), spec) - md::swap_factor(Complex(0.7, -7.0), spec)) < 1e-12);
  CHECK(std::abs(md::swap_factor(2.0, spec).imag()) < 1e-15);
  CHECK(std::abs(md::swap_factor(1e6, spec) - 1.0) < 1e-4);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> re(-1.0, 2.0), im(-40.0, 40.0);
  for (int i = 0; i < 100; ++i) {
    const Complex s(re(rng), im(rng));
    const Complex v = md::swap_factor(s, spec);
    CHECK(std::abs(v - md::swap_factor(1.0 - s, spec)) < 1e-12 * std::max(1.0, std::abs(v)));
    CHECK(std::abs(std::conj(v) - md::swap_factor(std::conj(s), spec)) < 1e-12 * std::max(1.0, std::abs(v)));
    CHECK(std::abs(md::swap_factor(s, spec) * md::inverse_swap_factor(s, spec) - 1.0) < 1e-12);
  }
  const Complex s(0.4, 5.0);
  const auto sf = [&](Complex z) { return md::swap_factor(z, spec); };
  const auto inv = [&](Complex z) { return md::inverse_swap_factor(z, spec); };
  CHECK(std::abs(md::swap_factor_derivative(s, spec) - central_difference(sf, s, 1e-4)) < 1e-9);
  CHECK(std::abs(md::inverse_swap_factor_derivative(s, spec) - central_difference(inv, s, 1e-4)) < 1e-9);

  CHECK_THROWS_AS(md::swap_factor(Complex(0.5, spec.removed_a), spec), nbbd::PoleError);
  CHECK_THROWS_AS(md::inverse_swap_factor(Complex(0.75, 10.0), spec), nbbd::PoleError);
}

TEST_CASE("model zeta") {
  const md::ModelSpec spec;
  const md::CounterfactualZeta m(spec);
  for (const Complex q : spec.quadruplet()) {
    CHECK(std::abs(m.value(q)) < 1e-8 * (1.0 + std::abs(nbbd::special::zeta(q))));
  }
  for (const Complex r : spec.removed_zeros()) {
    CHECK(std::abs(m.value(r)) > 1e-4);
    // the expansion and the direct product agree at the edge of the cancellation disc
    const Complex s = r + Complex(2e-4, 1e-4);
    const Complex inside = r + Complex(0.8e-4, 0.0);
    CHECK(std::abs(m.value(s) - nbbd::special::zeta(s) * md::swap_factor(s, spec)) < 1e-8);
    const auto mv = [&](Complex z) { return m.value(z); };
    CHECK(std::abs(m.derivative(inside) - central_difference(mv, inside, 1e-5)) < 1e-6);
  }

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> re(0.05, 0.95), im(-40.0, 40.0);
  for (int i = 0; i < 20; ++i) {
    const Complex s(re(rng), im(rng));
    const Complex a = nbbd::special::chi(s) * m.value(s);
    const Complex b = nbbd::special::chi(1.0 - s) * m.value(1.0 - s);
    CHECK(std::abs(a - b) < 1e-6 * std::max(std::abs(a), 1e-300));
    const auto mv = [&](Complex z) { return m.value(z); };
    CHECK(std::abs(m.derivative(s) - central_difference(mv, s, 1e-4)) < 1e-7 * std::max(1.0, std::abs(m.derivative(s))));
  }

  const Complex q = spec.off_line_zero();
  CHECK(std::abs(m.derivative_at_engineered_zero(q) - m.derivative(q)) < 1e-10);
  const auto& e = bundled().entries()[4];
  CHECK(std::abs(m.derivative_at_zeta_zero(e.rho(), e.zeta_prime) - m.derivative(e.rho())) < 1e-9);
  CHECK(md::model_zeta(Complex(0.3, 2.0), spec) == m.value(Complex(0.3, 2.0)));
}

TEST_CASE("exact mollifier reduces to V_N structure and matches the decomposition") {
  const md::ModelSpec spec;
  const md::CounterfactualMollifier a(100, spec);
  const Complex s(0.45, 3.0);
  const Complex direct = a(s);
  const Complex decomposed = md::counterfactual_mollifier(100, s, spec, bundled().truncated(2000.0));
  CHECK(std::abs(direct - decomposed) < 1e-4 * std::abs(direct));
  CHECK(std::abs(a(std::conj(s)) - std::conj(direct)) < 1e-13 * std::abs(direct));

  const auto t500 = bundled().truncated(500.0);
  const Complex d500 = md::counterfactual_mollifier(100, s, spec, t500);
  const double tail = nbbd::residue::sigma1(100, s, t500, spec).tail_estimate;
  CHECK(std::abs(decomposed - d500) < tail);

  // 1 - M A is small where the mollifier works (Re s > 1/2, moderate height)
  const md::CounterfactualZeta m(spec);
  const Complex far(0.9, 30.0);
  CHECK(std::abs(1.0 - m.value(far) * md::CounterfactualMollifier(5000, spec)(far)) < 0.5);

  CHECK_THROWS_AS(md::counterfactual_mollifier(100, Complex(1.5, 0.0), spec, t500), nbbd::DomainError);
  CHECK_THROWS_AS(md::CounterfactualMollifier(1, spec), nbbd::DomainError);
}

TEST_CASE("main term and full integral") {
  const md::ModelSpec spec;
  const auto m100 = md::main_term_integral(100, spec, md::main_term_spec());
  CHECK(m100.value > 0.0);
  CHECK(m100.relative_imaginary < 1e-6);
  const auto m1000 = md::main_term_integral(1000, spec, md::main_term_spec());
  CHECK(m1000.value > 0.0);
  const auto pair = md::main_term_integral(1000, spec, md::main_term_spec(), md::OffLineMode::kPair);
  CHECK(pair.value > 0.0);
  CHECK(pair.value != m1000.value);
  CHECK_THROWS_AS(md::main_term_integral(5, spec, md::main_term_spec()), nbbd::DomainError);

  const auto full = md::full_counterfactual_integral(100, spec, nbbd::metric::criterion_spec(100));
  CHECK(full.value >= 0.0);
  const auto baseline = nbbd::metric::criterion_integral(nbbd::mollifier::build_vn(100), nbbd::metric::true_zeta_on_line(),
                                                         nbbd::metric::criterion_spec(100));
  CHECK(full.value > baseline.value);
}
