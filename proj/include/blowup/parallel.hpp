#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace blowup {

// BLOWUP_THREADS overrides the hardware count; 1 forces serial execution
inline unsigned thread_count()
{
  if (const char* env = std::getenv("BLOWUP_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// fn(i) for i in [0, n); each index writes its own slot so results are order independent
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn)
{
  unsigned workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(err_mutex);
            if (!err) err = std::current_exception();
            next = n;
          }
        }
      });
  }
  if (err) std::rethrow_exception(err);
}

} // namespace blowup
