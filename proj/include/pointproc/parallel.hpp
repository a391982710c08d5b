#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pointproc {

/// Execution mode for ensemble kernels. `serial` is the reference
/// implementation; `parallel` uses OpenMP. Both produce identical results
/// because every path owns its stream and reductions run in path order.
enum class Exec { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Builds {fn(0), ..., fn(n-1)}. Exceptions thrown by fn are captured and
/// rethrown after the loop, since exceptions must not escape an OpenMP region.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Exec exec, Fn&& fn) {
    std::vector<std::optional<T>> slots(n);
    if (exec == Exec::parallel) {
        std::exception_ptr error;
        std::mutex error_mutex;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                slots[static_cast<std::size_t>(i)].emplace(fn(static_cast<std::size_t>(i)));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
        if (error) {
            std::rethrow_exception(error);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            slots[i].emplace(fn(i));
        }
    }
    std::vector<T> out;
    out.reserve(n);
    for (auto& slot : slots) {
        out.push_back(std::move(*slot));
    }
    return out;
}

}  // namespace pointproc
