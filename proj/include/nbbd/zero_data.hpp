// Tables of non-trivial zeta zeros on the critical line and the sums over
// them that enter the Nyman-Beurling asymptotics.
//
// File format: UTF-8 text, one positive decimal ordinate per line in strictly
// ascending order. Blank lines and lines starting with '#' are ignored.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nbbd/common.hpp"

namespace nbbd::zeros {

struct ZeroEntry {
  double ordinate = 0.0;  // gamma > 0, rho = 1/2 + i gamma
  int multiplicity = 1;
  Complex zeta_prime{};   // zeta'(rho), cached at load time

  Complex rho() const noexcept { return {0.5, ordinate}; }
};

class ZeroTable {
 public:
  ZeroTable() = default;
  // Validates ascending ordinates and positive multiplicities. `height`
  // defaults to the largest ordinate (0 for an empty table).
  explicit ZeroTable(std::vector<ZeroEntry> entries, std::optional<double> height = std::nullopt);

  std::span<const ZeroEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double height() const noexcept { return height_; }

  // Entries with ordinate <= t; the returned table has height t.
  ZeroTable truncated(double t) const;
  // Number of entries with ordinate <= t.
  std::size_t count_below(double t) const;

 private:
  std::vector<ZeroEntry> entries_;
  double height_ = 0.0;
};

struct LoadOptions {
  bool refine = false;
  bool cache_derivatives = true;
};

ZeroTable parse_zero_table(std::istream& in, const LoadOptions& options = {});
ZeroTable load_zero_table(const std::filesystem::path& path, const LoadOptions& options = {});
ZeroTable load_zero_table(const std::filesystem::path& path, bool refine);

// Path of the bundled table of the first 10^4 ordinates: $NBBD_DATA_DIR when
// set, else the source tree's data directory.
std::filesystem::path bundled_table_path();

// Polishes an approximate ordinate by bracketing a sign change of the Hardy
// Z function in windows growing up to +-0.05 and solving on the bracket.
double refine_ordinate(double guess);

// (T / 2pi) log(T / 2 pi e) + 7/8.
double riemann_von_mangoldt(double t);

// Zero-density estimate of sum_{gamma > T} 2 / gamma^2 over both signs:
// (log(T / 2pi) + 1) / (pi T).
double density_tail(double height);

struct ZeroSum {
  double value = 0.0;     // bare_sum + tail
  double bare_sum = 0.0;  // truncated sum over the table
  double tail = 0.0;      // density_tail(height)
  double height = 0.0;
};

// sum 2 m / (1/4 + gamma^2) plus the density tail. Requires a nonempty table.
ZeroSum zero_sum_constant(const ZeroTable& table);
// sum 2 m^2 / (1/4 + gamma^2) plus the density tail.
ZeroSum burnol_lower_bound(const ZeroTable& table);

// Ordinary least-squares line y = intercept + slope x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};
std::optional<LineFit> fit_line(std::span<const double> x, std::span<const double> y);

struct HypothesisRow {
  double height;
  double partial_sum;  // sum_{|Im rho| <= T} 1 / |zeta'(rho)|^2
};

struct HypothesisDiagnostic {
  std::vector<HypothesisRow> rows;
  std::optional<double> exponent;  // log-log slope; empty for degenerate grids
  double exponent_stderr = 0.0;
  std::optional<double> delta;  // 3/2 - exponent
};

HypothesisDiagnostic bcf_hypothesis_diagnostic(const ZeroTable& table, std::span<const double> heights);

struct GrowthDiagnostic {
  std::vector<double> t;
  std::vector<double> running_max;  // max |zeta(1/2 + i u)| over sampled u <= t
  std::optional<double> exponent;
  double exponent_stderr = 0.0;
};

// Log-log slope of the running maximum of |zeta(1/2 + it)| over t_grid
// (ascending, inside [10, 1e4]).
GrowthDiagnostic empirical_lindelof_diagnostic(std::span<const double> t_grid);

// Geometric default grid for the growth diagnostic.
std::vector<double> default_lindelof_grid(std::size_t points = 2000);

}  // namespace nbbd::zeros
