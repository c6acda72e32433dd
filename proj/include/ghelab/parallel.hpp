#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "ghelab/rng.hpp"

namespace ghelab::detail {

/// Runs `trials` independent seeded trials and counts successes. Each
/// trial gets its own derived stream, so the count is identical for any
/// thread count and chunks merge associatively.
inline std::uint64_t count_successes(
    std::uint64_t trials, std::uint64_t master_seed, unsigned threads,
    const std::function<bool(std::uint64_t, Rng&)>& trial) {
  if (threads <= 1) {
    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      Rng rng = Rng::derive(master_seed, i);
      if (trial(i, rng)) ++successes;
    }
    return successes;
  }
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        const std::uint64_t lo = trials * t / threads;
        const std::uint64_t hi = trials * (t + 1) / threads;
        std::uint64_t successes = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
          Rng rng = Rng::derive(master_seed, i);
          if (trial(i, rng)) ++successes;
        }
        partial[t] = successes;
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& error : errors)
    if (error) std::rethrow_exception(error);
  std::uint64_t total = 0;
  for (std::uint64_t p : partial) total += p;
  return total;
}

}  // namespace ghelab::detail
