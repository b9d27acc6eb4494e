#include "isolab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "isolab/error.hpp"

namespace isolab {
namespace {

constexpr double kHuge = std::numeric_limits<double>::infinity();

struct Vertex
{
    std::vector<double> x;
    double f;
};

class Counted
{
  public:
    explicit Counted(const Objective& f) : f_(f) {}

    double operator()(std::span<const double> x)
    {
        ++evals;
        double v = f_(x);
        return std::isfinite(v) ? v : kHuge;
    }

    std::size_t evals = 0;

  private:
    const Objective& f_;
};

// One Nelder-Mead descent from an axis-aligned simplex around x0.
Vertex descend(Counted& f, const std::vector<double>& x0, double step, const NelderMeadOptions& opt, bool& converged)
{
    const std::size_t n = x0.size();
    const double nd = static_cast<double>(n);
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / nd;
    const double gamma = 0.75 - 0.5 / nd;
    const double delta = 1.0 - 1.0 / nd;

    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({x0, f(x0)});
    for (std::size_t i = 0; i < n; ++i) {
        auto x = x0;
        x[i] += step * std::max(1.0, std::abs(x0[i]));
        simplex.push_back({x, f(x)});
    }

    std::vector<double> centroid(n), trial(n);
    auto point = [&](double coef, const std::vector<double>& from) {
        for (std::size_t i = 0; i < n; ++i)
            trial[i] = centroid[i] + coef * (from[i] - centroid[i]);
        return trial;
    };
    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

    converged = false;
    while (f.evals < opt.max_evals) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        const Vertex& best = simplex.front();
        const Vertex& worst = simplex.back();

        double diameter = 0.0;
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            norm = std::max(norm, std::abs(best.x[i]));
        for (std::size_t v = 1; v <= n; ++v)
            for (std::size_t i = 0; i < n; ++i)
                diameter = std::max(diameter, std::abs(simplex[v].x[i] - best.x[i]));
        const bool flat = std::isfinite(worst.f) &&
                          worst.f - best.f <= opt.ftol * std::max(std::abs(best.f), 1e-300);
        if (flat && diameter <= opt.xtol * (1.0 + norm)) {
            converged = true;
            break;
        }
        if (diameter <= 1e-15 * (1.0 + norm)) {
            converged = flat;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < n; ++i)
                centroid[i] += simplex[v].x[i];
        for (double& c : centroid)
            c /= nd;

        const double f_second = simplex[n - 1].f;
        auto reflected = point(-alpha, worst.x);
        const double fr = f(reflected);

        if (fr < best.f) {
            auto expanded = point(-alpha * beta, worst.x);
            const double fe = f(expanded);
            if (fe < fr)
                simplex.back() = {expanded, fe};
            else
                simplex.back() = {reflected, fr};
            continue;
        }
        if (fr < f_second) {
            simplex.back() = {reflected, fr};
            continue;
        }
        if (fr < worst.f) {
            auto outside = point(gamma, reflected);
            const double fo = f(outside);
            if (fo <= fr) {
                simplex.back() = {outside, fo};
                continue;
            }
        } else {
            auto inside = point(gamma, worst.x);
            const double fi = f(inside);
            if (fi < worst.f) {
                simplex.back() = {inside, fi};
                continue;
            }
        }
        // Shrink toward the best vertex.
        for (std::size_t v = 1; v <= n; ++v) {
            for (std::size_t i = 0; i < n; ++i)
                simplex[v].x[i] = simplex[0].x[i] + delta * (simplex[v].x[i] - simplex[0].x[i]);
            simplex[v].f = f(simplex[v].x);
        }
    }
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    return simplex.front();
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& objective, std::vector<double> x0, const NelderMeadOptions& options)
{
    if (x0.empty())
        throw DomainError("nelder_mead: empty starting point");
    Counted f(objective);

    bool converged = false;
    Vertex best = descend(f, x0, options.initial_step, options, converged);
    for (int restart = 0; restart < options.max_restarts && f.evals < options.max_evals; ++restart) {
        bool again = false;
        Vertex next = descend(f, best.x, options.initial_step * 0.1, options, again);
        const bool improved = next.f < best.f - options.ftol * std::abs(best.f);
        if (next.f < best.f)
            best = next;
        converged = again;
        if (!improved)
            break;
    }

    NelderMeadResult r;
    r.x = std::move(best.x);
    r.f = best.f;
    r.evaluations = f.evals;
    r.converged = converged && std::isfinite(r.f);
    return r;
}

std::vector<std::vector<double>> latin_hypercube(std::size_t count, std::size_t dims, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> pts(count, std::vector<double>(dims));
    std::vector<std::size_t> perm(count);
    for (std::size_t j = 0; j < dims; ++j) {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < count; ++i) {
            double u = (static_cast<double>(perm[i]) + unit(rng)) / static_cast<double>(count);
            pts[i][j] = std::clamp(u, 1e-9, 1.0 - 1e-9);
        }
    }
    return pts;
}

}  // namespace isolab
