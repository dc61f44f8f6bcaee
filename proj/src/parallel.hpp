#pragma once

#include <cstdint>
#include <exception>

namespace bdn::detail {

/// OpenMP loop over [0, n) that carries the first exception out of the region.
template <class F>
void parallel_for(std::int64_t n, F&& body) {
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(bdn_parallel_for_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

} // namespace bdn::detail
