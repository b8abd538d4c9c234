#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tidalsim {

/// Execution policy for the batch kernels. Every parallel kernel has a serial
/// twin reached through the same entry point; tests assert both produce
/// bit-identical results.
enum class ExecMode { Serial, Parallel };

/// Environment variable consulted for a thread-count override.
inline constexpr const char* kThreadsEnvVar = "TIDALSIM_THREADS";

/// Number of worker threads the Parallel mode would use. Honors
/// TIDALSIM_THREADS when set to a positive integer, otherwise the OpenMP
/// default. Returns 1 when built without OpenMP.
inline int thread_count() {
#ifdef _OPENMP
    if (const char* env = std::getenv(kThreadsEnvVar)) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Applies the TIDALSIM_THREADS override process-wide (no-op without OpenMP).
inline void apply_thread_env() {
#ifdef _OPENMP
    if (const char* env = std::getenv(kThreadsEnvVar)) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

/// Runs body(i) for i in [0, n). In Parallel mode iterations are distributed
/// statically over OpenMP threads; each iteration must write only to its own
/// slot so results cannot depend on the schedule.
template <class F>
void parallel_for(std::size_t n, ExecMode mode, F&& body) {
#ifdef _OPENMP
    if (mode == ExecMode::Parallel) {
        const auto limit = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < limit; ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) {
        body(i);
    }
}

}  // namespace tidalsim
