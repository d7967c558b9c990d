#include "nbbd/special_functions.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "power_table.hpp"

namespace nbbd::special {

namespace {

// B_{2k} / (2k)!, k = 1..11.
constexpr std::array<double, 11> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1124000727777607680000.0,
};

// B_{2k}, k = 1..10, for the Stirling series.
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,      -1.0 / 30.0,        1.0 / 42.0,       -1.0 / 30.0,  5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,         -3617.0 / 510.0,  43867.0 / 798.0,
    -174611.0 / 330.0,
};

constexpr int kEulerMaclaurinTerms = 10;

// Truncated Taylor series in the evaluation variable: c[k] = f^(k)(s0) / k!.
template <int Order>
struct Jet {
  std::array<Complex, Order + 1> c{};

  static Jet constant(Complex v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  static Jet variable(Complex v) {
    Jet j;
    j.c[0] = v;
    if constexpr (Order >= 1) j.c[1] = 1.0;
    return j;
  }
  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= Order; ++k) c[k] += o.c[k];
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i <= Order; ++i)
      for (int j = 0; i + j <= Order; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Jet operator*(Jet a, Complex k) {
    for (auto& x : a.c) x *= k;
    return a;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet q;
    for (int k = 0; k <= Order; ++k) {
      Complex acc = a.c[k];
      for (int j = 1; j <= k; ++j) acc -= q.c[k - j] * b.c[j];
      q.c[k] = acc / b.c[0];
    }
    return q;
  }
};

// Jet of x^(-s) = exp(-s log x) around s0.
template <int Order>
Jet<Order> power_jet(double log_x, Complex s0) {
  Jet<Order> j;
  const Complex base = std::exp(-s0 * log_x);
  double coef = 1.0;
  for (int k = 0; k <= Order; ++k) {
    j.c[k] = base * coef;
    coef *= -log_x / static_cast<double>(k + 1);
  }
  return j;
}

template <int Order>
Jet<Order> dirichlet_head(Complex s, long count) {
  // sum_{n=1}^{count} n^{-s}, blocked to limit rounding growth
  Jet<Order> total;
  Jet<Order> block;
  const auto add = [&](long n, Complex v, double lg) {
    block.c[0] += v;
    if constexpr (Order >= 1) block.c[1] -= v * lg;
    if constexpr (Order >= 2) block.c[2] += v * (0.5 * lg * lg);
    if (n % 512 == 0) {
      total += block;
      block = Jet<Order>{};
    }
  };
  if (count <= detail::kPowerTableLimit) {
    thread_local std::vector<Complex> powers;
    detail::fill_powers(s, count, powers);
    const auto& logs = detail::log_table();
    for (long n = 1; n <= count; ++n) add(n, powers[static_cast<std::size_t>(n)], logs[static_cast<std::size_t>(n)]);
  } else {
    for (long n = 1; n <= count; ++n) {
      const double lg = std::log(static_cast<double>(n));
      const double mag = std::exp(-s.real() * lg);
      add(n, Complex(mag * std::cos(s.imag() * lg), -mag * std::sin(s.imag() * lg)), lg);
    }
  }
  total += block;
  return total;
}

double remainder_bound(Complex s, long m, int order) {
  // |(s)_{2K+1} B_{2K+2} / (2K+2)!| m^{-sigma-2K-1} / (sigma + 2K + 1)
  const int k = kEulerMaclaurinTerms;
  double log_mag = 0.0;
  for (int j = 0; j <= 2 * k; ++j) log_mag += std::log(std::abs(s + static_cast<double>(j)));
  log_mag += std::log(std::abs(kBernoulliOverFactorial[k]));
  const double lm = std::log(static_cast<double>(m));
  log_mag -= (s.real() + 2 * k + 1) * lm;
  double bound = std::exp(log_mag) / (s.real() + 2 * k + 1);
  for (int o = 0; o < order; ++o) bound *= (1.0 + lm);
  return bound;
}

template <int Order>
Jet<Order> euler_maclaurin(Complex s, long m) {
  using J = Jet<Order>;
  const J sj = J::variable(s);
  const double lm = std::log(static_cast<double>(m));
  J result = dirichlet_head<Order>(s, m - 1);

  const J pm = power_jet<Order>(lm, s);  // m^{-s}
  // m^{1-s} / (s - 1)
  result += (pm * static_cast<double>(m)) / (sj + J::constant(-1.0));
  result += pm * 0.5;

  // sum_k B_2k/(2k)! (s)_{2k-1} m^{-s-2k+1}
  J term = sj * pm * (1.0 / static_cast<double>(m));
  const double inv_m2 = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
  for (int k = 1; k <= kEulerMaclaurinTerms; ++k) {
    if (k > 1) {
      term = term * (sj + J::constant(2.0 * k - 3.0)) * (sj + J::constant(2.0 * k - 2.0));
      term = term * inv_m2;
    }
    result += term * kBernoulliOverFactorial[k - 1];
  }
  return result;
}

long initial_terms(Complex s) {
  return std::max<long>(static_cast<long>(std::ceil(std::abs(s.imag()) / 2.0)) + 10, 20);
}

template <int Order>
Jet<Order> zeta_em_unchecked(Complex s, const PrecisionSpec& prec) {
  long m = initial_terms(s);
  if (m > prec.max_series_terms) throw PrecisionError("zeta: height needs more than max_series_terms terms");
  while (remainder_bound(s, m, Order) > prec.target_abs_error) {
    const long next = static_cast<long>(std::ceil(static_cast<double>(m) * 1.5));
    if (next > prec.max_series_terms) {
      throw PrecisionError("zeta: remainder bound cannot reach target within max_series_terms");
    }
    m = next;
  }
  return euler_maclaurin<Order>(s, m);
}

void check_domain(Complex s) {
  if (!is_finite(s)) throw DomainError("zeta: non-finite argument");
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  if (s.real() < kMinRealPart || s.real() > kMaxRealPart) {
    throw DomainError("zeta: Re s outside [-1, 4]");
  }
  if (std::abs(s.imag()) > kMaxImaginaryPart) throw DomainError("zeta: |Im s| too large");
}

Complex checked(Complex v, const char* what) {
  if (!is_finite(v)) throw PrecisionError(std::string(what) + ": non-finite result");
  return v;
}

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

void PrecisionSpec::validate() const {
  if (!(target_abs_error >= 1e-14)) throw DomainError("PrecisionSpec: target_abs_error below 1e-14");
  if (max_series_terms <= 0 || max_series_terms > 1'000'000) {
    throw DomainError("PrecisionSpec: max_series_terms outside (0, 1e6]");
  }
}

ConstantsBundle constants() noexcept {
  const double log_4pi = std::log(4.0 * kPi);
  return {kEulerGamma, log_4pi, 2.0 + kEulerGamma - log_4pi};
}

Complex zeta(Complex s, const PrecisionSpec& prec) {
  prec.validate();
  check_domain(s);
  return checked(zeta_em_unchecked<0>(s, prec).c[0], "zeta");
}

Complex zeta_derivative(Complex s, int order, const PrecisionSpec& prec) {
  if (order != 1 && order != 2) throw DomainError("zeta_derivative: order must be 1 or 2");
  prec.validate();
  check_domain(s);
  if (order == 1) return checked(zeta_em_unchecked<1>(s, prec).c[1], "zeta_derivative");
  return checked(2.0 * zeta_em_unchecked<2>(s, prec).c[2], "zeta_derivative");
}

ZetaJet zeta_jet(Complex s, const PrecisionSpec& prec) {
  prec.validate();
  check_domain(s);
  const auto j = zeta_em_unchecked<2>(s, prec);
  return {checked(j.c[0], "zeta_jet"), checked(j.c[1], "zeta_jet"),
          checked(2.0 * j.c[2], "zeta_jet")};
}

Complex log_gamma(Complex z) {
  if (!is_finite(z)) throw DomainError("log_gamma: non-finite argument");
  if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at non-positive integer");
  Complex shift(0.0, 0.0);
  while (z.real() < 10.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series(0.0, 0.0);
  Complex power = inv;
  for (int k = 1; k <= static_cast<int>(kBernoulli.size()); ++k) {
    series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

Complex digamma(Complex z) {
  if (!is_finite(z)) throw DomainError("digamma: non-finite argument");
  if (is_nonpositive_integer(z)) throw PoleError("digamma: pole at non-positive integer");
  Complex shift(0.0, 0.0);
  while (z.real() < 10.0) {
    shift += 1.0 / z;
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series(0.0, 0.0);
  Complex power = inv2;
  for (int k = 1; k <= static_cast<int>(kBernoulli.size()); ++k) {
    series += kBernoulli[k - 1] / (2.0 * k) * power;
    power *= inv2;
  }
  return std::log(z) - 0.5 * inv - series - shift;
}

Complex chi(Complex s) {
  if (is_nonpositive_integer(0.5 * s)) throw PoleError("chi: pole of Gamma(s/2)");
  return std::exp(-0.5 * s * std::log(kPi) + log_gamma(0.5 * s));
}

Complex chi_log_derivative(Complex s) {
  if (is_nonpositive_integer(0.5 * s)) throw PoleError("chi_log_derivative: pole of Gamma(s/2)");
  return -0.5 * std::log(kPi) + 0.5 * digamma(0.5 * s);
}

std::vector<double> odd_zeta_table(int n_max) {
  if (n_max < 1 || n_max > 200) throw DomainError("odd_zeta_table: n_max outside [1, 200]");
  PrecisionSpec prec;
  prec.target_abs_error = 1e-15;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    out.push_back(zeta_em_unchecked<0>(Complex(2.0 * n + 1.0, 0.0), prec).c[0].real());
  }
  return out;
}

double hardy_theta_mod_2pi(double t) {
  const double theta = log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
  return std::remainder(theta, 2.0 * kPi);
}

double hardy_z(double t, const PrecisionSpec& prec) {
  const double theta = hardy_theta_mod_2pi(t);
  const Complex z = std::polar(1.0, theta) * zeta(Complex(0.5, t), prec);
  return z.real();
}

}  // namespace nbbd::special
