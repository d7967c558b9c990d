// Least-squares fit of the oscillatory growth law
//
//     I(N) log^2 N / N^{2 sigma0 - 1} = A cos(omega log N) + B,   omega = 2 gamma0,
//
// to computed values of an integral over a grid of N.
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nbbd/counterfactual_model.hpp"

namespace nbbd::model {

struct FitResult {
  double a = 0.0;
  double b = 0.0;
  double frequency = 0.0;            // fixed 2 gamma0, or refined
  double rms_relative_residual = 0.0;
  std::vector<std::int64_t> n_grid;
  std::vector<double> normalized;    // I(N) log^2 N / N^{2 sigma0 - 1}
  std::vector<double> fitted;
  // A cos + C sin + B at the same frequency, reported for comparison
  double sin_coefficient = 0.0;
  double rms_relative_residual_with_phase = 0.0;
};

// Linear least squares for (A, B) at omega = 2 gamma0; with `fit_frequency`
// omega is refined by a scan over [0.8, 1.2] * 2 gamma0 followed by a
// golden-section search on the residual. Needs >= 8 points whose log N span
// exceeds pi / gamma0; throws DomainError otherwise and SolverError on rank
// deficiency.
FitResult fit_theorem_constants(std::span<const std::pair<std::int64_t, double>> values, const ModelSpec& spec,
                                bool fit_frequency = false);

// `count` integers spaced geometrically in [lo, hi], rounded and deduplicated.
std::vector<std::int64_t> geometric_grid(std::int64_t lo, std::int64_t hi, int count);

}  // namespace nbbd::model
