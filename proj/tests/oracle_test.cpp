#include "cstatsize/oracle.hpp"

#include <cmath>
#include <random>

#include "cstatsize/solvers.hpp"
#include "doctest.h"
#include "oracle_ref.hpp"

using namespace cstatsize;

TEST_CASE("iterative search reproduces the published cases") {
    CHECK(n_iterative(DiscriminationInputs(0.7, 0.1, 0.02551)).n == 1154);
    CHECK(n_iterative(DiscriminationInputs(0.8, 0.5, 0.02551)).n == 302);
    CHECK(n_iterative(DiscriminationInputs(0.8, 0.018, 0.02551)).n == 4252);
    CHECK(n_iterative(DiscriminationInputs(0.75, 0.018, 0.02551)).n == 5125);
    CHECK(n_iterative(DiscriminationInputs(0.85, 0.018, 0.02551)).n == 3271);
}

TEST_CASE("iterative result is an integer result") {
    const SampleSizeResult result = n_iterative(DiscriminationInputs(0.7, 0.1, 0.02551));
    CHECK(result.method == SolverMethod::Iterative);
    CHECK(result.n_raw == static_cast<double>(result.n));
    CHECK(result.inputs.phi() == 0.1);
}

TEST_CASE("searching for an SE attained exactly at an integer returns it") {
    const double target = se_c(0.7, 0.1, 500.0);
    CHECK(n_iterative(DiscriminationInputs(0.7, 0.1, target)).n == 500);
}

TEST_CASE("iterative search matches an independently transcribed scan") {
    // Frozen from an exact-rational linear scan: first N with
    // se(0.55, 0.01, N) <= 0.02551 is 12779.
    CHECK(n_iterative(DiscriminationInputs(0.55, 0.01, 0.02551)).n == 12779);
    CHECK(oracle_ref::scan_n(0.55, 0.01, 0.02551) == 12779);

    std::mt19937_64 rng(20240901);
    std::uniform_real_distribution<double> c_dist(0.51, 0.99);
    std::uniform_real_distribution<double> phi_dist(0.01, 0.5);
    std::uniform_real_distribution<double> se_dist(0.01, 0.1);
    for (int i = 0; i < 50; ++i) {
        const double c = c_dist(rng);
        const double phi = phi_dist(rng);
        const double se = se_dist(rng);
        CHECK(n_iterative(DiscriminationInputs(c, phi, se)).n == oracle_ref::scan_n(c, phi, se));
    }
}

TEST_CASE("returned N is the first qualifying integer") {
    std::mt19937_64 rng(20240902);
    std::uniform_real_distribution<double> c_dist(0.51, 0.99);
    std::uniform_real_distribution<double> phi_dist(0.01, 0.5);
    std::uniform_real_distribution<double> se_dist(0.01, 0.1);
    for (int i = 0; i < 200; ++i) {
        const DiscriminationInputs in(c_dist(rng), phi_dist(rng), se_dist(rng));
        const SampleSizeResult result = n_iterative(in);
        CHECK(se_c(in.c(), in.phi(), static_cast<double>(result.n)) <= in.se_target());
        if (result.n > 2) {
            CHECK(se_c(in.c(), in.phi(), static_cast<double>(result.n - 1)) > in.se_target());
        }
    }
}

TEST_CASE("search ceiling raises with the SE achieved at max_n") {
    const DiscriminationInputs in(0.7, 0.1, 1e-5);
    const IterativeConfig config(1000);
    CHECK_THROWS_AS(n_iterative(in, config), SearchCeilingError);
    try {
        n_iterative(in, config);
    } catch (const SearchCeilingError& e) {
        CHECK(e.max_n() == 1000);
        CHECK(e.se_at_max() == se_c(0.7, 0.1, 1000.0));
    }
    CHECK_THROWS_AS(n_iterative_fast(in, config), SearchCeilingError);
}

TEST_CASE("IterativeConfig validates its bounds") {
    CHECK_THROWS_AS(IterativeConfig(1'000'000, 1), DomainError);
    CHECK_THROWS_AS(IterativeConfig(2, 2), DomainError);
    const IterativeConfig config;
    CHECK(config.max_n() == 1'000'000);
    CHECK(config.start_n() == 2);
}

TEST_CASE("fast search returns exactly what the linear scan returns") {
    // the published grid
    for (double c = 0.55; c < 0.96; c += 0.05) {
        for (int k = 1; k <= 50; ++k) {
            const double phi = 0.01 * k;
            const DiscriminationInputs in(c, phi, 0.02551);
            CHECK(n_iterative_fast(in).n == n_iterative(in).n);
        }
    }
    // and random points
    std::mt19937_64 rng(20240903);
    std::uniform_real_distribution<double> c_dist(0.51, 0.99);
    std::uniform_real_distribution<double> phi_dist(0.005, 0.5);
    std::uniform_real_distribution<double> se_dist(0.005, 0.1);
    for (int i = 0; i < 500; ++i) {
        const DiscriminationInputs in(c_dist(rng), phi_dist(rng), se_dist(rng));
        const SampleSizeResult fast = n_iterative_fast(in);
        const SampleSizeResult scan = n_iterative(in);
        CHECK(fast.n == scan.n);
        CHECK(fast.n_raw == scan.n_raw);
    }
}

TEST_CASE("fast search handles a qualifying start point") {
    const double target = se_c(0.7, 0.1, 2.0);
    const SampleSizeResult result = n_iterative_fast(DiscriminationInputs(0.7, 0.1, target));
    CHECK(result.n == 2);
}

TEST_CASE("iterative agrees with closed-form ceilings on the published cases") {
    for (const auto& in : {DiscriminationInputs(0.7, 0.1, 0.02551),
                           DiscriminationInputs(0.8, 0.5, 0.02551),
                           DiscriminationInputs(0.8, 0.018, 0.02551)}) {
        const long long scan = n_iterative(in).n;
        for (SolverMethod m : kClosedMethods) {
            CHECK(solve(in, m).n == scan);
        }
    }
}
