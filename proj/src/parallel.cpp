#include "randig/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace randig {

unsigned thread_count() {
  if (const char* env = std::getenv("RANDIG_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_chunks(std::uint64_t total, unsigned chunks,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body) {
  if (chunks == 0) chunks = 1;
  // floor(total * c / chunks) without overflow.
  const std::uint64_t q = total / chunks, r = total % chunks;
  auto bounds = [&](unsigned c) { return q * c + r * c / chunks; };

  const unsigned workers = std::min(thread_count(), chunks);
  if (workers <= 1) {
    for (unsigned c = 0; c < chunks; ++c) body(c, bounds(c), bounds(c + 1));
    return;
  }

  std::atomic<unsigned> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (unsigned c = next++; c < chunks; c = next++) {
        try {
          body(c, bounds(c), bounds(c + 1));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace randig
