#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "isolab/error.hpp"
#include "isolab/kernels.hpp"

using namespace isolab;

TEST_CASE("grid evaluation matches bit for bit")
{
    auto fam = builtin_family("ring_torus");
    auto grid = interior_samples(fam.domain, 500);
    auto a = evaluate_grid(fam, grid, Exec::serial);
    auto b = evaluate_grid(fam, grid, Exec::parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].volume == b[i].volume);
        CHECK(a[i].area == b[i].area);
    }
    CHECK(ratio_on_grid(fam, grid, Exec::serial) == ratio_on_grid(fam, grid, Exec::parallel));
}

TEST_CASE("segment quadrature matches bit for bit")
{
    auto nodes = linspace(0.0, 10.0, 41);
    auto f = [](double x) { return std::sin(x) * std::exp(-0.1 * x); };
    QuadratureOptions opt;
    auto a = integrate_segments(f, nodes, opt, Exec::serial);
    auto b = integrate_segments(f, nodes, opt, Exec::parallel);
    REQUIRE(a.size() == 40);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].panels == b[i].panels);
    }
}

TEST_CASE("lowest-index exception wins")
{
    for (Exec e : {Exec::serial, Exec::parallel}) {
        try {
            for_each_index(100, e, [](std::size_t i) {
                if (i == 17)
                    throw DomainError("seventeen");
                if (i == 60)
                    throw std::runtime_error("sixty");
            });
            FAIL("expected an exception");
        } catch (const DomainError& err) {
            CHECK(std::string(err.what()) == "seventeen");
        }
    }
}

TEST_CASE("thread cap")
{
    set_thread_cap(1);
    CHECK(thread_cap() == 1);
    auto grid = linspace(0.5, 2.0, 64);
    auto one = ratio_on_grid(builtin_family("cube"), grid);
    set_thread_cap(0);
    CHECK(one == ratio_on_grid(builtin_family("cube"), grid));
    CHECK_THROWS_AS(set_thread_cap(-1), DomainError);

    setenv("ISOLAB_THREADS", "3", 1);
    CHECK(configure_threads_from_env() == 3);
    setenv("ISOLAB_THREADS", "many", 1);
    CHECK_THROWS_AS(configure_threads_from_env(), DomainError);
    unsetenv("ISOLAB_THREADS");
    set_thread_cap(0);
}
