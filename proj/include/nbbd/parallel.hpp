// Deterministic parallel map.
//
// Workers claim blocks of indices dynamically and every result lands in its
// own slot. Callers reduce the returned vector in index
// order, so the floating-point result never depends on the thread count.
#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace nbbd {

// Number of workers used by parallel_map. 0 means hardware concurrency.
void set_worker_count(unsigned count) noexcept;
unsigned worker_count() noexcept;

namespace detail {
void run_chunked(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);
}

template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(n);
  detail::run_chunked(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
  });
  return out;
}

}  // namespace nbbd
