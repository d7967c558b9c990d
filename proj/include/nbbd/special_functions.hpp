// Riemann zeta, its first two derivatives, and the archimedean factor
// chi(s) = pi^(-s/2) Gamma(s/2), evaluated in hardware double precision.
//
// zeta is computed by Euler-Maclaurin summation everywhere in the strip
// -1 <= Re s <= 4, |Im s| <= kMaxImaginaryPart. The number of summed terms
// starts at max(ceil(|Im s|/2) + 10, 20) and grows until the remainder bound
// meets the requested absolute error. Derivatives come from the same sum
// carried out in truncated Taylor (jet) arithmetic.
//
// The remainder bound covers truncation only. Rounding in the phases
// t log n grows like eps |t| log |t|, so above |t| ~ 1e4 the attainable
// absolute error is about 1e-11 * (|t| / 1e4) regardless of the target.
#pragma once

#include <vector>

#include "nbbd/common.hpp"

namespace nbbd::special {

inline constexpr double kMaxImaginaryPart = 1e5;
inline constexpr double kMinRealPart = -1.0;
inline constexpr double kMaxRealPart = 4.0;

struct PrecisionSpec {
  double target_abs_error = 1e-13;
  long max_series_terms = 1'000'000;

  // Throws DomainError when these settings are outside the supported range.
  void validate() const;
};

struct ConstantsBundle {
  double euler_gamma;
  double log_4pi;
  double nbbd_constant;  // 2 + euler_gamma - log_4pi
};

ConstantsBundle constants() noexcept;

// Value of zeta and its first two derivatives at one point.
struct ZetaJet {
  Complex value;
  Complex d1;
  Complex d2;
};

Complex zeta(Complex s, const PrecisionSpec& prec = {});

// order must be 1 or 2.
Complex zeta_derivative(Complex s, int order, const PrecisionSpec& prec = {});

// zeta, zeta' and zeta'' from a single Euler-Maclaurin pass.
ZetaJet zeta_jet(Complex s, const PrecisionSpec& prec = {});

// Principal-branch-free log Gamma: exp(log_gamma(z)) == Gamma(z), the
// imaginary part is only defined modulo 2*pi.
Complex log_gamma(Complex z);
Complex digamma(Complex z);

// chi(s) = pi^(-s/2) Gamma(s/2).
Complex chi(Complex s);
// (chi'/chi)(s) = -log(pi)/2 + digamma(s/2)/2.
Complex chi_log_derivative(Complex s);

// zeta(3), zeta(5), ..., zeta(2 n_max + 1); 1 <= n_max <= 200.
std::vector<double> odd_zeta_table(int n_max);

// Riemann-Siegel theta(t) modulo 2*pi and the real Hardy function
// Z(t) = exp(i theta(t)) zeta(1/2 + i t).
double hardy_theta_mod_2pi(double t);
double hardy_z(double t, const PrecisionSpec& prec = {});

}  // namespace nbbd::special
