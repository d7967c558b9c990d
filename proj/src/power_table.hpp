// n^{-s} for every n <= count at the cost of one exp/sincos per prime.
// n^{-s} is completely multiplicative, so composite entries are products
// of two earlier entries. Internal to the library.
#pragma once

#include <vector>

#include "nbbd/common.hpp"

namespace nbbd::detail {

// Largest count fill_powers accepts.
inline constexpr long kPowerTableLimit = 1L << 17;

// log n for 1 <= n <= kPowerTableLimit (index 0 unused).
const std::vector<double>& log_table();

// out[n] = n^{-s} for 1 <= n <= count; out is resized to count + 1.
// Requires count <= kPowerTableLimit.
void fill_powers(Complex s, long count, std::vector<Complex>& out);

}  // namespace nbbd::detail
