#include "doctest.h"

#include <random>

#include "nbbd/theorem_fit.hpp"

namespace md = nbbd::model;

namespace {

std::vector<std::pair<std::int64_t, double>> synthetic(double a, double b, double phase, const md::ModelSpec& spec,
                                                       double noise = 0.0, unsigned seed = 0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, noise);
  std::vector<std::pair<std::int64_t, double>> out;
  for (const auto n : md::geometric_grid(100, 100000, 40)) {
    const double ln = std::log(static_cast<double>(n));
    double v = (a * std::cos(2.0 * spec.gamma0 * ln + phase) + b) * std::pow(static_cast<double>(n), 2.0 * spec.sigma0 - 1.0) / (ln * ln);
    if (noise > 0.0) v *= 1.0 + g(rng);
    out.push_back({n, v});
  }
  return out;
}

}  // namespace

TEST_CASE("geometric grid") {
  const auto g = md::geometric_grid(100, 100000, 20);
  REQUIRE(g.size() == 20);
  CHECK(g.front() == 100);
  CHECK(g.back() == 100000);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK(md::geometric_grid(10, 12, 10).size() == 3);
  CHECK_THROWS_AS(md::geometric_grid(0, 10, 3), nbbd::DomainError);
}

TEST_CASE("exact recovery") {
  const md::ModelSpec spec;
  const auto data = synthetic(1.0, 2.0, 0.0, spec);
  const auto f = md::fit_theorem_constants(data, spec);
  CHECK(std::abs(f.a - 1.0) < 1e-10);
  CHECK(std::abs(f.b - 2.0) < 1e-10);
  CHECK(f.rms_relative_residual < 1e-12);
  CHECK(f.frequency == 2.0 * spec.gamma0);
  CHECK(f.n_grid.size() == data.size());

  const auto free = md::fit_theorem_constants(data, spec, true);
  CHECK(std::abs(free.frequency / (2.0 * spec.gamma0) - 1.0) < 1e-6);
}

TEST_CASE("one percent noise") {
  const md::ModelSpec spec;
  for (unsigned seed = 1; seed <= 20; ++seed) {
    const auto f = md::fit_theorem_constants(synthetic(1.0, 2.0, 0.0, spec, 0.01, seed), spec);
    CHECK(std::abs(f.a - 1.0) < 0.05);
    CHECK(std::abs(f.b - 2.0) < 0.1);
  }
}

TEST_CASE("a phase shift is invisible to the cosine-only form") {
  const md::ModelSpec spec;
  const auto f = md::fit_theorem_constants(synthetic(1.0, 2.0, 0.5, spec), spec);
  CHECK(f.rms_relative_residual > 0.05);
  CHECK(f.rms_relative_residual_with_phase < 1e-12);
  CHECK(std::abs(f.sin_coefficient + std::sin(0.5)) < 1e-10);
}

TEST_CASE("degenerate input") {
  const md::ModelSpec spec;
  auto data = synthetic(1.0, 2.0, 0.0, spec);
  data.resize(5);
  CHECK_THROWS_AS(md::fit_theorem_constants(data, spec), nbbd::DomainError);

  std::vector<std::pair<std::int64_t, double>> narrow;
  for (std::int64_t n = 1000; n < 1010; ++n) narrow.push_back({n, 1.0});
  CHECK_THROWS_AS(md::fit_theorem_constants(narrow, spec), nbbd::DomainError);

  // cos(omega log N) = 1 at every grid point, so the two columns coincide
  md::ModelSpec aliased = spec;
  aliased.gamma0 = nbbd::kPi / std::log(2.0);
  std::vector<std::pair<std::int64_t, double>> powers;
  for (int k = 4; k < 14; ++k) powers.push_back({std::int64_t{1} << k, 1.0 + k});
  CHECK_THROWS_AS(md::fit_theorem_constants(powers, aliased), nbbd::SolverError);
}
