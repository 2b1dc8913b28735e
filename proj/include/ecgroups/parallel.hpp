#pragma once

// Small OpenMP helpers. Results are always assembled by index, so output never
// depends on thread count or scheduling.

#include <cstdint>
#include <exception>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ecg {

/// Sets the OpenMP team size; 0 leaves the runtime default.
inline void set_thread_count(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// out[i] = fn(i) for i in [0, n), evaluated in parallel. The first exception
/// thrown by any task is rethrown after the loop.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::int64_t n, Fn&& fn) {
    std::vector<T> out(static_cast<std::size_t>(n));
    std::exception_ptr error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(i);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace ecg
