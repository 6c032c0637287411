#pragma once

#include <cstddef>
#include <span>

namespace dadmm {

// Execution mode for the per-node kernels. The parallel path gives
// bit-identical results to the serial one: every loop body writes only its
// own slot and reads only data committed before the loop started.
enum class Exec { serial, openmp };

template <typename F>
void parallel_for(Exec mode, std::ptrdiff_t count, F&& body) {
  if (mode == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      body(i);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      body(i);
    }
  }
}

// Variant over an index list (e.g. the nodes of one color class).
template <typename F>
void parallel_for_each(Exec mode, std::span<const int> indices, F&& body) {
  parallel_for(mode, static_cast<std::ptrdiff_t>(indices.size()),
               [&](std::ptrdiff_t i) { body(indices[i]); });
}

}  // namespace dadmm
