#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "woms/rng.hpp"

namespace woms {

/// Runs fn(k, rng_k) for k in [0, n) with rng_k = RngStream(seed, k) and
/// returns the results in index order. Work is split into contiguous blocks,
/// one per worker, so the output does not depend on the worker count. The
/// first exception thrown by any replica is rethrown after all workers join.
template <class T, class Fn>
std::vector<T> parallel_replicas(std::int64_t n, std::uint64_t seed, int workers, Fn&& fn) {
  std::vector<T> out(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
  const int w = static_cast<int>(std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(n, 1)));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto block = [&](std::int64_t begin, std::int64_t end) {
    try {
      for (std::int64_t k = begin; k < end; ++k) {
        RngStream rng(seed, static_cast<std::uint64_t>(k));
        out[static_cast<std::size_t>(k)] = fn(k, rng);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (w == 1) {
    block(0, n);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) {
      threads.emplace_back(block, n * i / w, n * (i + 1) / w);
    }
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace woms
