#pragma once

#include <map>
#include <string>
#include <vector>

#include "cstatsize/core.hpp"
#include "cstatsize/oracle.hpp"

namespace cstatsize {

class BenchConfig {
public:
    BenchConfig(std::vector<SolverMethod> methods, int repetitions, int warmup,
                DiscriminationInputs inputs,
                IterativeConfig iterative = IterativeConfig());

    const std::vector<SolverMethod>& methods() const noexcept { return methods_; }
    int repetitions() const noexcept { return repetitions_; }
    int warmup() const noexcept { return warmup_; }
    const DiscriminationInputs& inputs() const noexcept { return inputs_; }
    const IterativeConfig& iterative() const noexcept { return iterative_; }

private:
    std::vector<SolverMethod> methods_;
    int repetitions_;
    int warmup_;
    DiscriminationInputs inputs_;
    IterativeConfig iterative_;
};

struct MethodTiming {
    SolverMethod method;
    // One per repetition: per-call latency in nanoseconds. Calls faster than
    // the clock can resolve are timed in batches of `batch` calls and each
    // sample is that batch's per-call average.
    std::vector<double> samples_ns;
    long long batch = 1;
    double min_ns = 0.0;
    double q1_ns = 0.0;
    double median_ns = 0.0;
    double q3_ns = 0.0;
    double max_ns = 0.0;
    double mean_ns = 0.0;
    // Raw result produced inside the timed loop and whether it equals an
    // untimed call's result (timing must not change the computation).
    double result_n_raw = 0.0;
    bool matches_untimed = false;
};

struct BenchReport {
    std::vector<MethodTiming> methods;
    DiscriminationInputs inputs;
    int repetitions = 0;
    int warmup = 0;
    std::string environment;
    std::string warning;  // non-empty when the clock is coarser than 1 us
};

// Times single-call latency of each configured method with a monotonic
// clock; warmup iterations are discarded; quantiles use the nearest-rank
// rule. Methods are sampled in interleaved rounds so host interference
// lands on all of them evenly. Strictly single-threaded.
BenchReport run_bench(const BenchConfig& config);

// Ratio of the baseline's median latency to each method's median latency.
std::map<SolverMethod, double> speedup_summary(const BenchReport& report, SolverMethod baseline);

// Nearest-rank quantile of an ascending-sorted sample: element at 1-based
// rank ceil(p * n). p in [0, 1]; p = 0 gives the minimum.
double nearest_rank_quantile(const std::vector<double>& sorted_samples, double p);

// Raw samples, header "method,sample_ns".
std::string to_csv(const BenchReport& report);

// Per-method summary (min/q1/median/q3/max/mean ns, batch), repetitions,
// warmup, host descriptor.
std::string to_json(const BenchReport& report);

// Free-text description of the host (kernel, CPU, threads, compiler).
std::string environment_descriptor();

}  // namespace cstatsize
