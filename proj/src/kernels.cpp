#include "isolab/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "isolab/error.hpp"

namespace isolab {
namespace {

std::atomic<int> g_thread_cap{0};

}  // namespace

void set_thread_cap(int threads)
{
    if (threads < 0)
        throw DomainError("thread cap must be >= 0");
    g_thread_cap.store(threads);
}

int thread_cap() noexcept { return g_thread_cap.load(); }

int configure_threads_from_env()
{
    const char* env = std::getenv("ISOLAB_THREADS");
    if (env == nullptr || *env == '\0')
        return thread_cap();
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0 || v > 4096)
        throw DomainError(std::string("ISOLAB_THREADS must be a non-negative integer, got '") + env + "'");
    set_thread_cap(static_cast<int>(v));
    return thread_cap();
}

std::vector<Measures> evaluate_grid(const FamilySpec& family, std::span<const double> grid, Exec exec)
{
    std::vector<Measures> out(grid.size());
    for_each_index(grid.size(), exec, [&](std::size_t i) { out[i] = family.eval(grid[i]); });
    return out;
}

std::vector<double> ratio_on_grid(const FamilySpec& family, std::span<const double> grid, Exec exec)
{
    std::vector<double> out(grid.size());
    const int d = family.dimension;
    for_each_index(grid.size(), exec, [&](std::size_t i) {
        Measures m = family.eval(grid[i]);
        out[i] = std::pow(m.area, d) / std::pow(m.volume, d - 1);
    });
    return out;
}

std::vector<QuadratureResult> integrate_segments(const std::function<double(double)>& f,
                                                 std::span<const double> nodes,
                                                 const QuadratureOptions& options, Exec exec)
{
    if (nodes.size() < 2)
        return {};
    std::vector<QuadratureResult> out(nodes.size() - 1);
    for_each_index(out.size(), exec, [&](std::size_t i) { out[i] = integrate(f, nodes[i], nodes[i + 1], options); });
    return out;
}

}  // namespace isolab
