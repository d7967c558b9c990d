#include "nbbd/zero_data.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <string_view>

#include "nbbd/parallel.hpp"
#include "nbbd/special_functions.hpp"

namespace nbbd::zeros {

ZeroTable::ZeroTable(std::vector<ZeroEntry> entries, std::optional<double> height) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const ZeroEntry& e = entries_[i];
    if (!(e.ordinate > 0.0) || !std::isfinite(e.ordinate)) throw DomainError("ZeroTable: ordinates must be positive");
    if (e.multiplicity < 1) throw DomainError("ZeroTable: multiplicity must be >= 1");
    if (i > 0 && !(e.ordinate > entries_[i - 1].ordinate)) {
      throw DomainError("ZeroTable: ordinates must be strictly increasing");
    }
  }
  height_ = height.value_or(entries_.empty() ? 0.0 : entries_.back().ordinate);
  if (!entries_.empty() && height_ < entries_.back().ordinate) throw DomainError("ZeroTable: height below last ordinate");
}

std::size_t ZeroTable::count_below(double t) const {
  const auto it = std::upper_bound(entries_.begin(), entries_.end(), t,
                                   [](double v, const ZeroEntry& e) { return v < e.ordinate; });
  return static_cast<std::size_t>(it - entries_.begin());
}

ZeroTable ZeroTable::truncated(double t) const {
  std::vector<ZeroEntry> kept(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(count_below(t)));
  return ZeroTable(std::move(kept), t);
}

double refine_ordinate(double guess) {
  if (!(guess > 0.0)) throw DomainError("refine_ordinate: ordinate must be positive");
  const auto z = [](double t) { return special::hardy_z(t); };
  const double z0 = z(guess);
  if (z0 == 0.0) return guess;
  for (double delta = 1e-7; delta <= 0.05 * (1.0 + 1e-12); delta = std::min(0.05, delta * 4.0)) {
    const double lo = guess - delta;
    const double hi = guess + delta;
    const double zlo = z(lo);
    const double zhi = z(hi);
    // prefer the half-bracket that contains the guess-side sign change
    double a = 0.0, b = 0.0, fa = 0.0, fb = 0.0;
    if (std::signbit(zlo) != std::signbit(z0)) {
      a = lo, b = guess, fa = zlo, fb = z0;
    } else if (std::signbit(zhi) != std::signbit(z0)) {
      a = guess, b = hi, fa = z0, fb = zhi;
    } else {
      if (delta >= 0.05) break;
      continue;
    }
    std::uintmax_t iters = 200;
    const auto bracket = boost::math::tools::toms748_solve(z, a, b, fa, fb,
                                                           boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (bracket.first + bracket.second);
  }
  throw PrecisionError("refine_ordinate: no sign change of Z within +-0.05 of " + std::to_string(guess));
}

ZeroTable parse_zero_table(std::istream& in, const LoadOptions& options) {
  std::vector<ZeroEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view v(line);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    if (v.empty() || v.front() == '#') continue;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw ParseError("zero table: not a decimal number", line_no);
    if (!(value > 0.0) || !std::isfinite(value)) throw ParseError("zero table: ordinate must be positive", line_no);
    if (!entries.empty() && !(value > entries.back().ordinate)) {
      throw ParseError("zero table: ordinates must be strictly ascending", line_no);
    }
    entries.push_back({value, 1, {}});
  }

  if (options.refine || options.cache_derivatives) {
    auto refined = parallel_map(entries.size(), [&](std::size_t i) {
      ZeroEntry e = entries[i];
      if (options.refine) e.ordinate = refine_ordinate(e.ordinate);
      if (options.cache_derivatives) e.zeta_prime = special::zeta_derivative(e.rho(), 1);
      return e;
    });
    entries = std::move(refined);
  }
  return ZeroTable(std::move(entries));
}

ZeroTable load_zero_table(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("zero table: cannot open " + path.string());
  return parse_zero_table(in, options);
}

ZeroTable load_zero_table(const std::filesystem::path& path, bool refine) {
  LoadOptions options;
  options.refine = refine;
  return load_zero_table(path, options);
}

std::filesystem::path bundled_table_path() {
  if (const char* dir = std::getenv("NBBD_DATA_DIR"); dir != nullptr && *dir != '\0') {
    return std::filesystem::path(dir) / "zeros_10k.txt";
  }
  return std::filesystem::path(NBBD_DEFAULT_DATA_DIR) / "zeros_10k.txt";
}

double riemann_von_mangoldt(double t) {
  return t / (2.0 * kPi) * std::log(t / (2.0 * kPi * std::exp(1.0))) + 0.875;
}

double density_tail(double height) {
  if (!(height > 0.0)) return 0.0;
  return (std::log(height / (2.0 * kPi)) + 1.0) / (kPi * height);
}

namespace {

ZeroSum weighted_zero_sum(const ZeroTable& table, int power) {
  if (table.empty()) throw DomainError("zero sum: table is empty");
  ZeroSum out;
  // smallest terms first
  const auto entries = table.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    const double m = power == 1 ? it->multiplicity : static_cast<double>(it->multiplicity) * it->multiplicity;
    out.bare_sum += 2.0 * m / (0.25 + it->ordinate * it->ordinate);
  }
  out.height = table.height();
  out.tail = density_tail(out.height);
  out.value = out.bare_sum + out.tail;
  return out;
}

}  // namespace

ZeroSum zero_sum_constant(const ZeroTable& table) { return weighted_zero_sum(table, 1); }
ZeroSum burnol_lower_bound(const ZeroTable& table) { return weighted_zero_sum(table, 2); }

std::optional<LineFit> fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("fit_line: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return std::nullopt;
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

HypothesisDiagnostic bcf_hypothesis_diagnostic(const ZeroTable& table, std::span<const double> heights) {
  HypothesisDiagnostic out;
  const auto entries = table.entries();
  std::vector<double> prefix(entries.size() + 1, 0.0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].zeta_prime == Complex(0.0, 0.0)) throw DomainError("bcf_hypothesis_diagnostic: zeta' not cached");
    prefix[i + 1] = prefix[i] + 2.0 * entries[i].multiplicity / std::norm(entries[i].zeta_prime);
  }
  std::vector<double> lx, ly;
  for (const double t : heights) {
    if (t > table.height()) throw DomainError("bcf_hypothesis_diagnostic: height above table height");
    const double s = prefix[table.count_below(t)];
    out.rows.push_back({t, s});
    if (s > 0.0 && t > 0.0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(s));
    }
  }
  if (const auto fit = fit_line(lx, ly)) {
    out.exponent = fit->slope;
    out.exponent_stderr = fit->slope_stderr;
    out.delta = 1.5 - fit->slope;
  }
  return out;
}

GrowthDiagnostic empirical_lindelof_diagnostic(std::span<const double> t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 10.0 && t_grid[i] <= 1e4)) throw DomainError("lindelof diagnostic: t outside [10, 1e4]");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("lindelof diagnostic: grid must ascend");
  }
  const auto values = parallel_map(t_grid.size(), [&](std::size_t i) {
    return std::abs(special::zeta(Complex(0.5, t_grid[i])));
  });
  GrowthDiagnostic out;
  double running = 0.0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    running = std::max(running, values[i]);
    out.t.push_back(t_grid[i]);
    out.running_max.push_back(running);
    if (running > 0.0) {
      lx.push_back(std::log(t_grid[i]));
      ly.push_back(std::log(running));
    }
  }
  if (const auto fit = fit_line(lx, ly)) {
    out.exponent = fit->slope;
    out.exponent_stderr = fit->slope_stderr;
  }
  return out;
}

std::vector<double> default_lindelof_grid(std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = 10.0 * std::pow(1e3, static_cast<double>(i) / static_cast<double>(points - 1));
  }
  grid.back() = 1e4;
  return grid;
}

}  // namespace nbbd::zeros
