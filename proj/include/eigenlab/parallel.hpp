#ifndef EIGENLAB_PARALLEL_HPP
#define EIGENLAB_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace eigenlab {

/// Worker count: explicit value, else EIGENLAB_THREADS, else 1.
inline int resolve_threads(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("EIGENLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

/// Evaluates fn(0..n-1) on up to `threads` workers. Results are stored by
/// index, so the output order never depends on scheduling. The first
/// exception (lowest index) is rethrown after all workers finish.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn, int threads = 0) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(resolve_threads(threads)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace eigenlab

#endif  // EIGENLAB_PARALLEL_HPP
