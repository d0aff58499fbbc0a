#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <vector>

namespace splitlab {

/// Trial loops run either as a plain serial loop (the reference) or as an
/// OpenMP worksharing loop. Results land at their trial index, so every
/// downstream reduction sees the same order whatever the execution mode.
enum class Execution { serial, parallel };

template <class Result, class Fn>
std::vector<Result> map_indices(std::size_t count, Execution ex, Fn&& fn) {
  std::vector<Result> out(count);
  if (ex == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  // Exceptions may not leave the parallel region; keep the lowest-index one.
  std::exception_ptr error;
  std::size_t error_at = count;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(splitlab_map_indices)
      if (static_cast<std::size_t>(i) < error_at) {
        error_at = static_cast<std::size_t>(i);
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

/// Pairwise summation in a fixed tree order.
double pairwise_sum(std::span<const double> xs);

}  // namespace splitlab
