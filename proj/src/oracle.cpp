#include "cstatsize/oracle.hpp"

#include <cstdio>

namespace cstatsize {

IterativeConfig::IterativeConfig(long long max_n, long long start_n)
    : max_n_(max_n), start_n_(start_n) {
    if (start_n < 2) {
        throw DomainError("start_n", "start_n must be at least 2");
    }
    if (start_n >= max_n) {
        throw DomainError("max_n", "max_n must be greater than start_n");
    }
}

namespace {

std::string ceiling_message(long long max_n, double se_at_max) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "no N <= %lld reaches the target SE; SE at the ceiling is %.17g", max_n,
                  se_at_max);
    return buf;
}

}  // namespace

SearchCeilingError::SearchCeilingError(long long max_n, double se_at_max)
    : std::runtime_error(ceiling_message(max_n, se_at_max)),
      max_n_(max_n),
      se_at_max_(se_at_max) {}

SampleSizeResult n_iterative(const DiscriminationInputs& in, const IterativeConfig& config) {
    const double c = in.c();
    const double phi = in.phi();
    const double target = in.se_target();
    for (long long n = config.start_n(); n <= config.max_n(); ++n) {
        if (se_c(c, phi, static_cast<double>(n)) <= target) {
            return SampleSizeResult{static_cast<double>(n), n, SolverMethod::Iterative, in};
        }
    }
    throw SearchCeilingError(config.max_n(),
                             se_c(c, phi, static_cast<double>(config.max_n())));
}

SampleSizeResult n_iterative_fast(const DiscriminationInputs& in, const IterativeConfig& config) {
    const double c = in.c();
    const double phi = in.phi();
    const double target = in.se_target();
    const auto reaches_target = [&](long long n) {
        return se_c(c, phi, static_cast<double>(n)) <= target;
    };

    if (reaches_target(config.start_n())) {
        return SampleSizeResult{static_cast<double>(config.start_n()), config.start_n(),
                                SolverMethod::Iterative, in};
    }

    // Grow until the target is reached, keeping lo the largest failing N.
    long long lo = config.start_n();
    long long hi = lo;
    for (;;) {
        hi = hi <= config.max_n() / 2 ? hi * 2 : config.max_n();
        if (reaches_target(hi)) break;
        if (hi == config.max_n()) {
            throw SearchCeilingError(config.max_n(),
                                     se_c(c, phi, static_cast<double>(config.max_n())));
        }
        lo = hi;
    }

    // First qualifying integer: SE is strictly decreasing in N at double
    // precision over this bracket, so bisection lands on the same N the
    // linear scan returns.
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (reaches_target(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return SampleSizeResult{static_cast<double>(hi), hi, SolverMethod::Iterative, in};
}

}  // namespace cstatsize
