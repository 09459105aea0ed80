#pragma once

#include "cstatsize/core.hpp"

namespace cstatsize {

// Search bounds for the iterative method.
class IterativeConfig {
public:
    explicit IterativeConfig(long long max_n = 1'000'000, long long start_n = 2);

    long long max_n() const noexcept { return max_n_; }
    long long start_n() const noexcept { return start_n_; }

private:
    long long max_n_;
    long long start_n_;
};

// Raised when no N <= max_n reaches the target SE. Carries the SE achieved
// at the search ceiling.
class SearchCeilingError : public std::runtime_error {
public:
    SearchCeilingError(long long max_n, double se_at_max);

    long long max_n() const noexcept { return max_n_; }
    double se_at_max() const noexcept { return se_at_max_; }

private:
    long long max_n_;
    double se_at_max_;
};

// The published iterative method: scan integers upward from start_n and
// return the first N whose SE meets or falls below the target. Comparing SE
// directly is equivalent to comparing CI widths, since width = 2 z SE with
// the same z on both sides.
SampleSizeResult n_iterative(const DiscriminationInputs& in,
                             const IterativeConfig& config = IterativeConfig());

// Exponential bracket followed by first-qualifying bisection. Returns the
// same N as n_iterative for every input (asserted in tests); provided for
// dense sweeps where the linear scan is the bottleneck.
SampleSizeResult n_iterative_fast(const DiscriminationInputs& in,
                                  const IterativeConfig& config = IterativeConfig());

}  // namespace cstatsize
