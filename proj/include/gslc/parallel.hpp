#pragma once

#include <cstddef>

namespace gslc {

/// Runs `fn` once per worker thread. `fn` receives a work-sharing loop
/// `for_each_index(count, body)` that splits [0, count) across the team, so
/// per-thread scratch buffers can live in `fn`'s scope.
template <class Fn>
void parallel_region(Fn&& fn) {
  auto for_each_index = [](std::size_t count, auto&& body) {
    const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp for schedule(dynamic, 64)
    for (std::ptrdiff_t k = 0; k < total; ++k) body(static_cast<std::size_t>(k));
  };
#pragma omp parallel
  { fn(for_each_index); }
}

template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < total; ++k) body(static_cast<std::size_t>(k));
}

}  // namespace gslc
