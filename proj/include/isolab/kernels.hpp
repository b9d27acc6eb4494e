#pragma once

// Data-parallel loops used by the numerical modules. Each kernel has a serial
// reference path and an OpenMP path; both produce bitwise identical results
// because every iteration writes its own slot and reductions happen serially
// afterwards in index order.

#include <cstddef>
#include <exception>
#include <functional>
#include <span>
#include <vector>

#ifdef ISOLAB_HAVE_OPENMP
#include <omp.h>
#endif

#include "isolab/families.hpp"
#include "isolab/quadrature.hpp"

namespace isolab {

enum class Exec
{
    serial,
    parallel
};

/// Upper bound on OpenMP threads used by the kernels (0 = runtime default).
void set_thread_cap(int threads);
int thread_cap() noexcept;

/// Reads ISOLAB_THREADS, if set, into the thread cap. Returns the cap.
int configure_threads_from_env();

/// Calls fn(i) for i in [0, n). Exceptions thrown by iterations are
/// collected and the one with the lowest index is rethrown.
template <class Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn)
{
    if (exec == Exec::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
#ifdef ISOLAB_HAVE_OPENMP
    const int cap = thread_cap();
    const int threads = cap > 0 ? cap : omp_get_max_threads();
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
#else
    for (std::size_t i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
#endif
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

/// (V, A) at every grid point.
std::vector<Measures> evaluate_grid(const FamilySpec& family, std::span<const double> grid,
                                    Exec exec = Exec::parallel);

/// A^d / V^(d-1) at every grid point.
std::vector<double> ratio_on_grid(const FamilySpec& family, std::span<const double> grid,
                                  Exec exec = Exec::parallel);

/// Integral of f over each consecutive segment [nodes[i], nodes[i+1]].
std::vector<QuadratureResult> integrate_segments(const std::function<double(double)>& f,
                                                 std::span<const double> nodes,
                                                 const QuadratureOptions& options,
                                                 Exec exec = Exec::parallel);

}  // namespace isolab
