#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace isolab {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions
{
    double ftol = 1e-13;           ///< relative spread of f over the simplex
    double xtol = 1e-9;            ///< simplex diameter relative to 1 + |x_best|
    double initial_step = 0.25;
    std::size_t max_evals = 400'000;
    int max_restarts = 30;
};

struct NelderMeadResult
{
    std::vector<double> x;
    double f = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Nelder-Mead with dimension-adaptive coefficients, restarted from the best
/// vertex until a restart no longer improves f. Non-finite objective values
/// are treated as +inf.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& options = {});

/// `count` Latin-hypercube points in the open unit cube (0, 1)^dims,
/// deterministic for a given seed.
std::vector<std::vector<double>> latin_hypercube(std::size_t count, std::size_t dims, std::uint64_t seed);

}  // namespace isolab
