#include "doctest.h"

#include <sstream>

#include "nbbd/special_functions.hpp"
#include "nbbd/zero_data.hpp"

using nbbd::Complex;
namespace zd = nbbd::zeros;

namespace {

const zd::ZeroTable& bundled() {
  static const zd::ZeroTable table = zd::load_zero_table(zd::bundled_table_path());
  return table;
}

zd::ZeroTable parse(const std::string& text, bool refine = false) {
  std::istringstream in(text);
  zd::LoadOptions options;
  options.refine = refine;
  return zd::parse_zero_table(in, options);
}

}  // namespace

TEST_CASE("parsing and refinement") {
  const auto t = parse("# comment\n14.134725142\n\n21.022039639\n25.010857580\n", true);
  REQUIRE(t.size() == 3);
  CHECK(std::abs(t.entries()[0].ordinate - 14.134725141734693) < 1e-10);
  CHECK(std::abs(nbbd::special::zeta(t.entries()[0].rho())) < 1e-8);
  CHECK(std::abs(t.entries()[1].ordinate - 21.022040) < 1e-6);
  CHECK(std::abs(t.entries()[2].ordinate - 25.010858) < 1e-6);
  CHECK(t.height() == t.entries()[2].ordinate);
  CHECK(std::abs(t.entries()[0].zeta_prime - nbbd::special::zeta_derivative(t.entries()[0].rho(), 1)) < 1e-15);

  const auto empty = parse("");
  CHECK(empty.empty());
  CHECK(empty.height() == 0.0);

  try {
    parse("14.1\n21.0\nabc\n");
    FAIL("expected a parse error");
  } catch (const nbbd::ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("21.0\n14.1\n"), nbbd::ParseError);
  CHECK_THROWS_AS(parse("-3\n"), nbbd::ParseError);
  // no zero within +-0.05 of 16.0
  CHECK_THROWS_AS(parse("16.0\n", true), nbbd::PrecisionError);
  CHECK_THROWS_AS(zd::load_zero_table("/nonexistent/zeros.txt"), nbbd::Error);
}

TEST_CASE("bundled table: first 100 zeros refine to |zeta| < 1e-8") {
  const auto& t = bundled();
  REQUIRE(t.size() == 10000);
  for (std::size_t i = 0; i < 100; ++i) {
    const double g = zd::refine_ordinate(t.entries()[i].ordinate);
    CHECK(std::abs(g - t.entries()[i].ordinate) < 1e-9);
    CHECK(std::abs(nbbd::special::zeta(Complex(0.5, g))) < 1e-8);
  }
}

TEST_CASE("Riemann-von Mangoldt sanity") {
  const auto& t = bundled();
  for (double h : {100.0, 1000.0, 5000.0}) {
    const double expected = zd::riemann_von_mangoldt(h);
    CHECK(std::abs(static_cast<double>(t.count_below(h)) - expected) < 0.05 * expected);
  }
  CHECK(t.count_below(100.0) == 29);
}

TEST_CASE("zero-sum constant") {
  const double target = 2.0 + nbbd::kEulerGamma - std::log(4.0 * nbbd::kPi);
  const auto& t = bundled();
  const auto full = zd::zero_sum_constant(t);
  const auto half = zd::zero_sum_constant(t.truncated(5000.0));
  CHECK(std::abs(full.value - target) < 1e-3);
  CHECK(std::abs(half.value - target) < 1e-3);
  CHECK(std::abs(full.value - target) < std::abs(half.value - target));
  CHECK(full.tail > 0.0);
  CHECK(full.tail < full.bare_sum);

  const auto single = zd::zero_sum_constant(t.truncated(15.0));
  const double g1 = t.entries()[0].ordinate;
  CHECK(single.bare_sum == doctest::Approx(2.0 / (0.25 + g1 * g1)).epsilon(1e-14));
  CHECK(std::abs(single.bare_sum - 0.010009) < 2e-5);
  CHECK_THROWS_AS(zd::zero_sum_constant(zd::ZeroTable()), nbbd::DomainError);
}

TEST_CASE("Burnol bound") {
  const auto small = bundled().truncated(50.0);
  CHECK(zd::burnol_lower_bound(small).value == zd::zero_sum_constant(small).value);

  std::vector<zd::ZeroEntry> entries(small.entries().begin(), small.entries().end());
  entries[2].multiplicity = 2;
  const zd::ZeroTable doubled(entries, small.height());
  const double g = entries[2].ordinate;
  const double single_term = 2.0 / (0.25 + g * g);
  CHECK(zd::burnol_lower_bound(doubled).bare_sum - zd::burnol_lower_bound(small).bare_sum ==
        doctest::Approx(3.0 * single_term).epsilon(1e-12));
  CHECK(zd::zero_sum_constant(doubled).bare_sum - zd::zero_sum_constant(small).bare_sum ==
        doctest::Approx(single_term).epsilon(1e-12));
}

TEST_CASE("hypothesis diagnostic") {
  const auto& t = bundled();
  std::vector<double> grid;
  for (double h = 100.0; h <= 5000.0; h *= 1.25) grid.push_back(h);
  const auto d = zd::bcf_hypothesis_diagnostic(t, grid);
  REQUIRE(d.rows.size() == grid.size());
  for (std::size_t i = 1; i < d.rows.size(); ++i) CHECK(d.rows[i].partial_sum >= d.rows[i - 1].partial_sum);
  REQUIRE(d.exponent.has_value());
  CHECK(std::isfinite(*d.exponent));
  CHECK(d.exponent_stderr > 0.0);
  CHECK(*d.delta == doctest::Approx(1.5 - *d.exponent));

  const std::vector<double> one = {1000.0};
  CHECK_FALSE(zd::bcf_hypothesis_diagnostic(t, one).exponent.has_value());
  const std::vector<double> above = {2e4};
  CHECK_THROWS_AS(zd::bcf_hypothesis_diagnostic(t, above), nbbd::DomainError);
}

TEST_CASE("growth diagnostic") {
  const auto grid = zd::default_lindelof_grid(400);
  const auto g = zd::empirical_lindelof_diagnostic(grid);
  REQUIRE(g.exponent.has_value());
  CHECK(*g.exponent >= 0.0);
  std::vector<double> lo, hi;
  for (double t = 10.0; t <= 100.0; t += 0.5) lo.push_back(t);
  for (double t = 10.0; t <= 1000.0; t += 0.5) hi.push_back(t);
  CHECK(zd::empirical_lindelof_diagnostic(hi).running_max.back() >= zd::empirical_lindelof_diagnostic(lo).running_max.back());
  const std::vector<double> bad = {5.0, 20.0};
  CHECK_THROWS_AS(zd::empirical_lindelof_diagnostic(bad), nbbd::DomainError);
}
