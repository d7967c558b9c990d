// Moebius values and Dirichlet polynomials A(s) = sum_{n<=N} a_n n^{-s}.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nbbd/common.hpp"

namespace nbbd::mollifier {

inline constexpr std::int64_t kMaxSieveLength = 100'000'000;

// mu(1..N). Index with operator()(n), n >= 1.
class MoebiusTable {
 public:
  explicit MoebiusTable(std::vector<std::int8_t> values) : values_(std::move(values)) {}

  std::int64_t size() const noexcept { return static_cast<std::int64_t>(values_.size()); }
  int operator()(std::int64_t n) const { return values_.at(static_cast<std::size_t>(n - 1)); }
  std::span<const std::int8_t> values() const noexcept { return values_; }

 private:
  std::vector<std::int8_t> values_;
};

// Linear sieve; 1 <= N <= 1e8.
MoebiusTable moebius_sieve(std::int64_t n);

class DirichletPolynomial {
 public:
  // coefficients[k] is a_{k+1}. Throws DomainError when empty or non-finite.
  explicit DirichletPolynomial(std::vector<Complex> coefficients);
  static DirichletPolynomial from_real(std::span<const double> coefficients);
  static DirichletPolynomial zero(std::int64_t length);

  std::int64_t length() const noexcept { return static_cast<std::int64_t>(coeffs_.size()); }
  Complex coefficient(std::int64_t n) const { return coeffs_.at(static_cast<std::size_t>(n - 1)); }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  // True when every coefficient is real, so A(conj s) = conj A(s).
  bool has_real_coefficients() const noexcept { return real_; }

  DirichletPolynomial operator+(const DirichletPolynomial& other) const;
  DirichletPolynomial operator*(Complex scale) const;

 private:
  std::vector<Complex> coeffs_;
  bool real_ = true;
};

// Smoothed Moebius mollifier V_N with a_n = (1 - log n / log N) mu(n); N >= 2.
DirichletPolynomial build_vn(std::int64_t n);

enum class SummationOrder { kForward, kReverse };

// Evaluates one polynomial at many points; the nonzero support and its
// logarithms are computed once.
class DirichletEvaluator {
 public:
  explicit DirichletEvaluator(const DirichletPolynomial& poly);

  Complex operator()(Complex s, SummationOrder order = SummationOrder::kForward) const;
  std::size_t support_size() const noexcept { return index_.size(); }

 private:
  std::vector<double> log_n_;
  std::vector<Complex> coeff_;
  std::vector<std::int64_t> index_;
};

Complex eval_dirichlet(const DirichletPolynomial& poly, Complex s);

}  // namespace nbbd::mollifier
