// Writes the ordinates of the first `count` zeros on the critical line by
// scanning Hardy's Z(t) for sign changes and polishing each bracket.
//
//   gen_zero_table [count=10000] [step=0.02] > data/zeros_10k.txt

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "nbbd/parallel.hpp"
#include "nbbd/special_functions.hpp"

int main(int argc, char** argv) {
  const std::size_t count = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 10000;
  const double step = argc > 2 ? std::strtod(argv[2], nullptr) : 0.02;
  const double block = 20.0;

  std::vector<double> zeros;
  double start = 10.0;
  while (zeros.size() < count) {
    // a batch of blocks, each scanned independently
    const std::size_t blocks = 64;
    auto found = nbbd::parallel_map(blocks, [&](std::size_t b) {
      const double lo = start + block * static_cast<double>(b);
      const auto steps = static_cast<int>(std::lround(block / step));
      std::vector<double> out;
      double a = lo, fa = nbbd::special::hardy_z(lo);
      for (int i = 1; i <= steps; ++i) {
        const double t = lo + block * i / steps;
        const double ft = nbbd::special::hardy_z(t);
        if (std::signbit(fa) != std::signbit(ft)) {
          std::uintmax_t iters = 200;
          const auto r = boost::math::tools::toms748_solve([](double x) { return nbbd::special::hardy_z(x); }, a, t, fa,
                                                           ft, boost::math::tools::eps_tolerance<double>(50), iters);
          out.push_back(0.5 * (r.first + r.second));
        }
        a = t;
        fa = ft;
      }
      return out;
    });
    for (const auto& f : found) zeros.insert(zeros.end(), f.begin(), f.end());
    start += block * static_cast<double>(blocks);
  }
  zeros.resize(count);
  std::printf("# ordinates of the first %zu nontrivial zeta zeros, 9 decimals\n", count);
  for (const double z : zeros) std::printf("%.9f\n", z);
  return 0;
}
