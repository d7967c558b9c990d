#include "nbbd/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>

namespace nbbd {

namespace {
std::atomic<unsigned> g_workers{0};
}

void set_worker_count(unsigned count) noexcept { g_workers.store(count); }

unsigned worker_count() noexcept {
  unsigned w = g_workers.load();
  if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
  return w;
}

namespace detail {

void run_chunked(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    body(0, n);
    return;
  }
  // Items are claimed in small blocks; each item writes only its own slot.
  const std::size_t grain = std::max<std::size_t>(1, n / (workers * 16));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (;;) {
          const std::size_t lo = next.fetch_add(grain);
          if (lo >= n) break;
          body(lo, std::min(n, lo + grain));
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail
}  // namespace nbbd
