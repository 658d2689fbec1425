#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tvacov {

/// Sets the OpenMP thread count for subsequent parallel kernels (k >= 1).
inline void set_threads(int k) {
#ifdef _OPENMP
    if (k >= 1) omp_set_num_threads(k);
#else
    (void)k;
#endif
}

[[nodiscard]] inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs body(i) for i in [0, count) on the OpenMP team. Every index writes only
/// its own output slot, so results are independent of scheduling. If any
/// iteration throws, the exception from the smallest index is rethrown.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    std::exception_ptr error;
    std::size_t error_index = std::numeric_limits<std::size_t>::max();
    std::mutex guard;
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (static_cast<std::size_t>(i) < error_index) {
                error_index = static_cast<std::size_t>(i);
                error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace tvacov
