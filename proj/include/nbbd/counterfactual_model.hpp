// A zeta-like function with exactly one off-line zero quadruplet.
//
// M(s) = zeta(s) S(s) with the swap factor
//
//     S(s) = Q_off(s) / Q_on(s),
//     Q_off(s) = (s - r0)(s - conj r0)(s - (1 - r0))(s - (1 - conj r0)),  r0 = sigma0 + i gamma0
//     Q_on(s)  = (s - ra)(s - conj ra)(s - rb)(s - conj rb),              ra,b = 1/2 + i gamma_a,b
//
// removes the on-line zero pairs at gamma_a, gamma_b and inserts the
// quadruplet {sigma0 +- i gamma0, 1 - sigma0 +- i gamma0}. S(1-s) = S(s) and
// S(conj s) = conj S(s), so M keeps the functional-equation symmetry of zeta.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nbbd/criterion_metric.hpp"
#include "nbbd/zero_data.hpp"
#include "nbbd/zeta_like.hpp"

namespace nbbd::model {

// Which engineered zeros enter the off-line residue sum.
enum class OffLineMode {
  kPair,        // {sigma0 +- i gamma0}
  kQuadruplet,  // plus the reflected pair {1 - sigma0 +- i gamma0}
};

struct ModelSpec {
  double sigma0 = 0.75;
  double gamma0 = 10.0;
  // refined first and second zero ordinates
  double removed_a = 14.134725141734693;
  double removed_b = 21.022039638771555;

  // sigma0 in (1/2, 1), gamma0 > 0, distinct positive removed ordinates.
  void validate() const;
  // Additionally requires both removed ordinates to be in the table and
  // gamma0 to avoid every table ordinate.
  void validate_against(const zeros::ZeroTable& table) const;

  Complex off_line_zero() const noexcept { return {sigma0, gamma0}; }
  // r0, conj r0, 1 - conj r0, 1 - r0 (the first two form the pair).
  std::array<Complex, 4> quadruplet() const noexcept;
  std::array<Complex, 4> removed_zeros() const noexcept;
};

// S(s). Throws PoleError within 1e-8 of a removed zero.
Complex swap_factor(Complex s, const ModelSpec& spec);
Complex swap_factor_derivative(Complex s, const ModelSpec& spec);
// 1/S(s) = Q_on / Q_off and its derivative; both analytic off the quadruplet.
Complex inverse_swap_factor(Complex s, const ModelSpec& spec);
Complex inverse_swap_factor_derivative(Complex s, const ModelSpec& spec);

class CounterfactualZeta final : public ZetaLike {
 public:
  explicit CounterfactualZeta(ModelSpec spec, special::PrecisionSpec prec = {});

  Complex value(Complex s) const override;
  Complex derivative(Complex s) const override;
  // M'(q) at an engineered zero q: zeta(q) S'(q).
  Complex derivative_at_engineered_zero(Complex q) const;
  // M'(rho) at an on-line zero of zeta: zeta'(rho) S(rho).
  Complex derivative_at_zeta_zero(Complex rho, Complex zeta_prime) const;

  const ModelSpec& spec() const noexcept { return spec_; }

 private:
  struct RemovedZero {
    Complex root;
    Complex d1;  // zeta'(root)
    Complex d2;  // zeta''(root)
  };
  // index of the removed zero within kCancellationRadius of s, or -1
  int near_removed(Complex s) const;

  ModelSpec spec_;
  special::PrecisionSpec prec_;
  std::array<RemovedZero, 4> removed_;
};

inline constexpr double kCancellationRadius = 1e-4;

Complex model_zeta(Complex s, const ModelSpec& spec);
Complex model_zeta_prime(Complex s, const ModelSpec& spec);

// Exact evaluation of the counterfactual mollifier
// 
//     A_N^M(s) = (1/log N) (1/2 pi i) int_{(c)} N^{z-s} / (M(z) (z-s)^2) dz,  c > 1,
// 
// expanded through 1/M = (1/S) sum mu(n) n^{-z}. Each Perron kernel closes
// on the double pole at s and the simple poles of 1/S at the quadruplet:
// 
//     log N * A = (1/S)(s) D1(s) + (1/S)'(s) D0(s) + sum_q Res(1/S, q) N^{q-s} P_q / (q-s)^2,
// 
// with D1 = sum_{n<N} mu(n) log(N/n) n^{-s}, D0 = sum_{n<N} mu(n) n^{-s},
// P_q = sum_{n<N} mu(n) n^{-q}. For S = 1 this is V_N.
class CounterfactualMollifier {
 public:
  CounterfactualMollifier(std::int64_t n, ModelSpec spec);

  Complex operator()(Complex s) const;
  std::int64_t length() const noexcept { return n_; }
  const ModelSpec& spec() const noexcept { return spec_; }

 private:
  std::int64_t n_;
  double log_n_;
  ModelSpec spec_;
  std::vector<std::int64_t> index_;  // squarefree k < N
  std::vector<double> log_k_;
  std::vector<double> mu_;
  std::vector<double> log_ratio_;  // log(N / k)
  std::array<Complex, 4> zeros_;
  std::array<Complex, 4> zero_residue_;  // Res(1/S, q) * P_q
};

// Residue decomposition of A_N^M with every zero of M summed: on-line zeros
// from `table` (minus the removed pair) and the full quadruplet.
Complex counterfactual_mollifier(std::int64_t n, Complex s, const ModelSpec& spec, const zeros::ZeroTable& table);

struct MainTermResult {
  double value = 0.0;           // real part of the integral
  double imaginary = 0.0;       // imaginary part (zero up to quadrature error)
  double relative_imaginary = 0.0;
};

// Contribution of the two-off-line-factor product to the criterion integral:
// 
//     (1/2 pi i) int_{(1/2)} M(s) Sigma2(N,s) M(1-s) Sigma2(N,1-s) ds / (s(1-s)),
// 
// where Sigma2 already carries the 1/log N normalization, so the result
// scales as N^{2 sigma0 - 1} / log^2 N. Both factors are evaluated
// literally and the real and imaginary parts are integrated separately.
MainTermResult main_term_integral(std::int64_t n, const ModelSpec& spec, const metric::QuadratureSpec& quad,
                                  OffLineMode mode = OffLineMode::kQuadruplet);
metric::QuadratureSpec main_term_spec();

// (1/2pi) int |1 - M A_N^M(1/2 + it)|^2 dt / (1/4 + t^2) via the exact form.
metric::IntegralResult full_counterfactual_integral(std::int64_t n, const ModelSpec& spec,
                                                    const metric::QuadratureSpec& quad);

}  // namespace nbbd::model
