#pragma once

#include "nbbd/common.hpp"
#include "nbbd/special_functions.hpp"

namespace nbbd {

// A meromorphic stand-in for zeta: the true zeta or a counterfactual model.
// Implementations are immutable and safe to share between threads.
class ZetaLike {
 public:
  virtual ~ZetaLike() = default;
  virtual Complex value(Complex s) const = 0;
  virtual Complex derivative(Complex s) const = 0;
};

class TrueZeta final : public ZetaLike {
 public:
  explicit TrueZeta(special::PrecisionSpec prec = {}) : prec_(prec) {}
  Complex value(Complex s) const override { return special::zeta(s, prec_); }
  Complex derivative(Complex s) const override { return special::zeta_derivative(s, 1, prec_); }

 private:
  special::PrecisionSpec prec_;
};

}  // namespace nbbd
