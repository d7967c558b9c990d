#include "power_table.hpp"

#include <cmath>

namespace nbbd::detail {

namespace {

struct Tables {
  std::vector<int> spf;       // smallest prime factor
  std::vector<int> cofactor;  // n / spf(n), 0 for primes
  std::vector<double> log_n;

  Tables() : spf(static_cast<std::size_t>(kPowerTableLimit) + 1, 0), cofactor(spf.size(), 0), log_n(spf.size(), 0.0) {
    for (long i = 2; i <= kPowerTableLimit; ++i) {
      if (spf[static_cast<std::size_t>(i)] != 0) continue;
      for (long j = i; j <= kPowerTableLimit; j += i) {
        if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = static_cast<int>(i);
      }
    }
    for (long i = 1; i <= kPowerTableLimit; ++i) {
      const auto k = static_cast<std::size_t>(i);
      log_n[k] = std::log(static_cast<double>(i));
      if (i > 1 && spf[k] != i) cofactor[k] = static_cast<int>(i / spf[k]);
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

const std::vector<double>& log_table() { return tables().log_n; }

void fill_powers(Complex s, long count, std::vector<Complex>& out) {
  const auto& t = tables();
  out.resize(static_cast<std::size_t>(count) + 1);
  if (count >= 1) out[1] = Complex(1.0, 0.0);
  const double sigma = s.real(), tau = s.imag();
  for (long n = 2; n <= count; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const int q = t.cofactor[i];
    if (q == 0) {
      const double lg = t.log_n[i];
      const double mag = std::exp(-sigma * lg);
      double sn, cs;
      ::sincos(tau * lg, &sn, &cs);
      out[i] = Complex(mag * cs, -mag * sn);
    } else {
      // written out: operator* on std::complex takes a slow NaN-recovery path
      const Complex a = out[static_cast<std::size_t>(t.spf[i])], b = out[static_cast<std::size_t>(q)];
      out[i] = Complex(a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real());
    }
  }
}

}  // namespace nbbd::detail
