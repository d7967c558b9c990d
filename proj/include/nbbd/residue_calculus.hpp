// Explicit-formula decomposition of the mollifier:
//
//     V_N(s) = (1/zeta(s)) (1 - (zeta'/zeta)(s) / log N)
//              + (1/log N) sum_rho R_N(rho, s)
//              + (1/log N) (trivial-zero term),
//
// R_N(rho, s) = Res_{z=rho} N^{z-s} / (zeta(z) (z-s)^2).
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nbbd/counterfactual_model.hpp"
#include "nbbd/zero_data.hpp"
#include "nbbd/zeta_like.hpp"

namespace nbbd::residue {

using model::ModelSpec;
using model::OffLineMode;

// Minimum distance between an evaluation point and a zero.
inline constexpr double kCollisionDistance = 1e-3;

struct ContourOptions {
  int points = 64;
  // Circle radius; defaults to min(|rho - s| / 4, nearest other zero / 4, 0.05).
  std::optional<double> radius;
  // Other zeros of the zeta-like function the circle must not enclose.
  std::span<const Complex> other_zeros;
};

// Simple-zero closed form N^{rho-s} / (F'(rho) (rho-s)^2).
Complex residue_simple(Complex rho, Complex derivative_at_rho, Complex s, std::int64_t n);

// R_N(rho, s) for a zero of multiplicity `mult` of F. mult = 1 uses the
// closed form; higher multiplicities use the trapezoid rule on a circle.
Complex residue_rn(Complex rho, int mult, Complex s, std::int64_t n, const ZetaLike& f, const ContourOptions& contour = {});

// Contour evaluation regardless of multiplicity (the independent route).
Complex residue_contour(Complex rho, Complex s, std::int64_t n, const ZetaLike& f, const ContourOptions& contour = {});

struct SeriesResult {
  Complex value;
  int terms = 0;
  bool converged = true;
};

// F_s(z) = pi z^s sum_{n>=1} (-1)^n (2pi)^{2n+1} z^{2n} / ((2n)! zeta(2n+1) (2n+s)^2), 0 < z < 1.
SeriesResult f_series(Complex s, double z);

// Sum of the residues of N^{z-s}/(zeta(z)(z-s)^2) at the trivial zeros
// z = -2n, i.e. N^{-s} sum_n 2 (-1)^n (2pi)^{2n} N^{-2n} / ((2n)! zeta(2n+1) (2n+s)^2).
// `scale(n)` divides the n-th term (S(-2n) for the counterfactual model).
SeriesResult trivial_zero_sum(Complex s, std::int64_t n);
SeriesResult trivial_zero_sum(Complex s, std::int64_t n, const ModelSpec& model);

// A zero of a zeta-like function with its first derivative there.
struct SimpleZero {
  Complex rho;
  Complex derivative;
};

struct SigmaResult {
  Complex value;                  // (1/log N) sum of residues
  double truncation_height = 0.0;
  double tail_estimate = 0.0;     // heuristic bound on the omitted zeros
  std::size_t terms = 0;
};

// On-line zeros of zeta from the table: rho and conj(rho) for each entry,
// ascending in gamma.
std::vector<SimpleZero> online_zeros(const zeros::ZeroTable& table);
// On-line zeros of the counterfactual model (removed ordinates dropped,
// derivatives scaled by S).
std::vector<SimpleZero> online_zeros(const zeros::ZeroTable& table, const ModelSpec& model);
std::vector<SimpleZero> offline_zeros(const ModelSpec& model, OffLineMode mode);

// (1/log N) sum_zeros R_N(rho, s). Throws CollisionError when s is within
// kCollisionDistance of a zero.
Complex residue_sum(std::int64_t n, Complex s, std::span<const SimpleZero> zeros);

// Sigma^(1): zeros on the critical line from the table, truncated at its height.
SigmaResult sigma1(std::int64_t n, Complex s, const zeros::ZeroTable& table);
SigmaResult sigma1(std::int64_t n, Complex s, const zeros::ZeroTable& table, const ModelSpec& model);

// Sigma^(2): residues at the engineered zeros of the counterfactual model.
Complex sigma2(std::int64_t n, Complex s, const ModelSpec& model, OffLineMode mode = OffLineMode::kQuadruplet);

struct DecompositionReport {
  Complex lhs;   // direct evaluation
  Complex rhs;   // residue reconstruction
  double truncation_height = 0.0;
  double error = 0.0;           // |lhs - rhs|
  double relative_error = 0.0;  // error / |lhs|
  double tail_estimate = 0.0;
};

// Compares V_N(s) with its residue decomposition truncated at the table
// height; with a model, compares the exact A_N^M(s) with its decomposition.
// Requires 0 < Re s < 1.
DecompositionReport lemma23_reconstruct(std::int64_t n, Complex s, const zeros::ZeroTable& table,
                                        const std::optional<ModelSpec>& model = std::nullopt);

}  // namespace nbbd::residue
