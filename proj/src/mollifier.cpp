#include "nbbd/mollifier.hpp"

#include <cmath>
#include <vector>

#include "power_table.hpp"

namespace nbbd::mollifier {

MoebiusTable moebius_sieve(std::int64_t n) {
  if (n < 1 || n > kMaxSieveLength) throw DomainError("moebius_sieve: N outside [1, 1e8]");
  const auto size = static_cast<std::size_t>(n);
  std::vector<std::int8_t> mu(size + 1, 0);
  std::vector<bool> composite(size + 1, false);
  std::vector<std::int64_t> primes;
  mu[1] = 1;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (!composite[static_cast<std::size_t>(i)]) {
      primes.push_back(i);
      mu[static_cast<std::size_t>(i)] = -1;
    }
    for (const std::int64_t p : primes) {
      const std::int64_t ip = i * p;
      if (ip > n) break;
      composite[static_cast<std::size_t>(ip)] = true;
      if (i % p == 0) {
        mu[static_cast<std::size_t>(ip)] = 0;
        break;
      }
      mu[static_cast<std::size_t>(ip)] = static_cast<std::int8_t>(-mu[static_cast<std::size_t>(i)]);
    }
  }
  mu.erase(mu.begin());
  return MoebiusTable(std::move(mu));
}

DirichletPolynomial::DirichletPolynomial(std::vector<Complex> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw DomainError("DirichletPolynomial: length must be >= 1");
  for (const Complex& a : coeffs_) {
    if (!is_finite(a)) throw DomainError("DirichletPolynomial: non-finite coefficient");
    if (a.imag() != 0.0) real_ = false;
  }
}

DirichletPolynomial DirichletPolynomial::from_real(std::span<const double> coefficients) {
  return DirichletPolynomial(std::vector<Complex>(coefficients.begin(), coefficients.end()));
}

DirichletPolynomial DirichletPolynomial::zero(std::int64_t length) {
  if (length < 1) throw DomainError("DirichletPolynomial: length must be >= 1");
  return DirichletPolynomial(std::vector<Complex>(static_cast<std::size_t>(length)));
}

DirichletPolynomial DirichletPolynomial::operator+(const DirichletPolynomial& other) const {
  std::vector<Complex> out(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] += other.coeffs_[i];
  return DirichletPolynomial(std::move(out));
}

DirichletPolynomial DirichletPolynomial::operator*(Complex scale) const {
  std::vector<Complex> out(coeffs_);
  for (auto& a : out) a *= scale;
  return DirichletPolynomial(std::move(out));
}

DirichletPolynomial build_vn(std::int64_t n) {
  if (n < 2) throw DomainError("build_vn: N must be >= 2 (log N vanishes at N = 1)");
  const MoebiusTable mu = moebius_sieve(n);
  const double log_n = std::log(static_cast<double>(n));
  std::vector<Complex> a(static_cast<std::size_t>(n));
  a[0] = 1.0;
  for (std::int64_t k = 2; k < n; ++k) {
    const int m = mu(k);
    if (m != 0) a[static_cast<std::size_t>(k - 1)] = (1.0 - std::log(static_cast<double>(k)) / log_n) * m;
  }
  return DirichletPolynomial(std::move(a));
}

DirichletEvaluator::DirichletEvaluator(const DirichletPolynomial& poly) {
  const auto c = poly.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == Complex(0.0, 0.0)) continue;
    index_.push_back(static_cast<std::int64_t>(i + 1));
    log_n_.push_back(std::log(static_cast<double>(i + 1)));
    coeff_.push_back(c[i]);
  }
}

Complex DirichletEvaluator::operator()(Complex s, SummationOrder order) const {
  const std::size_t count = index_.size();
  if (count == 0) return {0.0, 0.0};
  const double sigma = s.real();
  const double t = s.imag();
  // dense supports go through the multiplicative power table
  const std::int64_t top = index_.back();
  const bool dense = top <= detail::kPowerTableLimit && static_cast<std::int64_t>(count) * 4 >= top;
  thread_local std::vector<Complex> powers;
  if (dense) detail::fill_powers(s, static_cast<long>(top), powers);

  Complex total(0.0, 0.0);
  Complex block(0.0, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = order == SummationOrder::kForward ? k : count - 1 - k;
    Complex v;
    if (dense) {
      v = powers[static_cast<std::size_t>(index_[i])];
    } else {
      const double lg = log_n_[i];
      const double mag = std::exp(-sigma * lg);
      v = Complex(mag * std::cos(t * lg), -mag * std::sin(t * lg));
    }
    const Complex c = coeff_[i];
    block += Complex(c.real() * v.real() - c.imag() * v.imag(), c.real() * v.imag() + c.imag() * v.real());
    if ((k & 255) == 255) {
      total += block;
      block = 0.0;
    }
  }
  return total + block;
}

Complex eval_dirichlet(const DirichletPolynomial& poly, Complex s) {
  if (!is_finite(s)) throw DomainError("eval_dirichlet: non-finite argument");
  return DirichletEvaluator(poly)(s);
}

}  // namespace nbbd::mollifier
