#include "cstatsize/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <set>
#include <thread>

#if !defined(_WIN32)
#include <sys/utsname.h>
#endif

#include "cstatsize/solvers.hpp"
#include "cstatsize/timing.hpp"

namespace cstatsize {

namespace timing {

std::uint64_t clock_resolution_ns() {
    std::uint64_t best = UINT64_MAX;
    for (int i = 0; i < 2048; ++i) {
        const std::uint64_t t0 = mono_ns();
        std::uint64_t t1 = mono_ns();
        while (t1 == t0) t1 = mono_ns();
        best = std::min(best, t1 - t0);
    }
    return best;
}

}  // namespace timing

BenchConfig::BenchConfig(std::vector<SolverMethod> methods, int repetitions, int warmup,
                         DiscriminationInputs inputs, IterativeConfig iterative)
    : methods_(std::move(methods)),
      repetitions_(repetitions),
      warmup_(warmup),
      inputs_(inputs),
      iterative_(iterative) {
    if (methods_.empty()) {
        throw DomainError("methods", "methods must be non-empty");
    }
    if (std::set<SolverMethod>(methods_.begin(), methods_.end()).size() != methods_.size()) {
        throw DomainError("methods", "methods contains duplicates");
    }
    if (repetitions_ < 100) {
        throw DomainError("repetitions", "repetitions must be at least 100");
    }
    if (warmup_ < 10) {
        throw DomainError("warmup", "warmup must be at least 10");
    }
}

namespace {

using BenchFn = double (*)(const DiscriminationInputs&, const IterativeConfig&);

double call_mathematica(const DiscriminationInputs& in, const IterativeConfig&) {
    return n_mathematica(in);
}
double call_maxima(const DiscriminationInputs& in, const IterativeConfig&) {
    return n_maxima(in);
}
double call_sonar(const DiscriminationInputs& in, const IterativeConfig&) {
    return n_sonar(in);
}
double call_gpt41(const DiscriminationInputs& in, const IterativeConfig&) {
    return n_gpt41(in);
}
double call_grok3(const DiscriminationInputs& in, const IterativeConfig&) {
    return n_grok3(in);
}
double call_gemini(const DiscriminationInputs& in, const IterativeConfig&) {
    return n_gemini(in);
}
double call_mathgpt(const DiscriminationInputs& in, const IterativeConfig&) {
    return n_mathgpt(in);
}
double call_iterative(const DiscriminationInputs& in, const IterativeConfig& config) {
    return n_iterative(in, config).n_raw;
}

BenchFn bench_fn(SolverMethod m) {
    switch (m) {
        case SolverMethod::Mathematica: return call_mathematica;
        case SolverMethod::Maxima: return call_maxima;
        case SolverMethod::Sonar: return call_sonar;
        case SolverMethod::Gpt41: return call_gpt41;
        case SolverMethod::Grok3Beta: return call_grok3;
        case SolverMethod::Gemini25Pro: return call_gemini;
        case SolverMethod::MathGpt: return call_mathgpt;
        case SolverMethod::Iterative: return call_iterative;
    }
    throw InternalError("bench_fn: unknown SolverMethod");
}

// A timed region shorter than this is dominated by clock overhead, so calls
// are batched until one region reaches it.
constexpr std::uint64_t kTargetBatchNs = 16384;
constexpr long long kMaxBatch = 1 << 20;

long long calibrate_batch(BenchFn fn, const DiscriminationInputs& in,
                          const IterativeConfig& config) {
    constexpr int kProbeCalls = 16;
    std::uint64_t best = UINT64_MAX;
    for (int trial = 0; trial < 4; ++trial) {
        const std::uint64_t t0 = timing::mono_ns();
        for (int i = 0; i < kProbeCalls; ++i) {
            timing::clobber_memory();
            timing::keep(fn(in, config));
        }
        const std::uint64_t t1 = timing::mono_ns();
        best = std::min(best, (t1 - t0) / kProbeCalls);
    }
    if (best == 0) return kMaxBatch;
    if (best >= kTargetBatchNs) return 1;
    return std::min<long long>(kMaxBatch,
                               static_cast<long long>((kTargetBatchNs + best - 1) / best));
}

struct MethodRun {
    SolverMethod method;
    BenchFn fn;
    long long batch = 1;
    double untimed = 0.0;
    double last = 0.0;
    std::vector<double> samples_ns;
};

void take_sample(MethodRun& run, const DiscriminationInputs& in,
                 const IterativeConfig& iter_config) {
    const std::uint64_t t0 = timing::mono_ns();
    for (long long i = 0; i < run.batch; ++i) {
        timing::clobber_memory();
        run.last = run.fn(in, iter_config);
        timing::keep(run.last);
    }
    const std::uint64_t t1 = timing::mono_ns();
    run.samples_ns.push_back(static_cast<double>(t1 - t0) / static_cast<double>(run.batch));
}

MethodTiming summarize(MethodRun&& run) {
    MethodTiming mt;
    mt.method = run.method;
    mt.batch = run.batch;
    mt.result_n_raw = run.last;
    mt.matches_untimed = (run.last == run.untimed);
    mt.samples_ns = std::move(run.samples_ns);

    std::vector<double> sorted = mt.samples_ns;
    std::sort(sorted.begin(), sorted.end());
    mt.min_ns = sorted.front();
    mt.q1_ns = nearest_rank_quantile(sorted, 0.25);
    mt.median_ns = nearest_rank_quantile(sorted, 0.5);
    mt.q3_ns = nearest_rank_quantile(sorted, 0.75);
    mt.max_ns = sorted.back();
    mt.mean_ns = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
                 static_cast<double>(sorted.size());
    return mt;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            out += '\\';
            out += ch;
        } else if (static_cast<unsigned char>(ch) >= 0x20) {
            out += ch;
        } else {
            out += ' ';
        }
    }
    return out;
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
    if (!timing::mono_clock_available()) {
        throw std::runtime_error("run_bench: monotonic clock unavailable");
    }
    BenchReport report{{},
                       config.inputs(),
                       config.repetitions(),
                       config.warmup(),
                       environment_descriptor(),
                       ""};
    const std::uint64_t resolution = timing::clock_resolution_ns();
    if (resolution > 1000) {
        report.warning = "clock resolution is " + std::to_string(resolution) +
                         " ns (coarser than 1 us); samples may quantize";
    }

    const DiscriminationInputs in = config.inputs();
    const IterativeConfig& iter_config = config.iterative();

    std::vector<MethodRun> runs;
    runs.reserve(config.methods().size());
    for (SolverMethod m : config.methods()) {
        MethodRun run;
        run.method = m;
        run.fn = bench_fn(m);
        run.untimed = run.fn(in, iter_config);
        for (int i = 0; i < config.warmup(); ++i) {
            timing::clobber_memory();
            timing::keep(run.fn(in, iter_config));
        }
        run.batch = calibrate_batch(run.fn, in, iter_config);
        run.samples_ns.reserve(static_cast<std::size_t>(config.repetitions()));
        runs.push_back(std::move(run));
    }

    // Methods are sampled in interleaved rounds rather than one method at a
    // time, so scheduler noise and host interference land on every method
    // roughly evenly and cross-method ratios stay meaningful.
    const int reps = config.repetitions();
    const int rounds = std::max(1, reps / 20);
    for (int round = 0; round < rounds; ++round) {
        const int quota = reps / rounds + (round < reps % rounds ? 1 : 0);
        for (MethodRun& run : runs) {
            for (int i = 0; i < quota; ++i) {
                take_sample(run, in, iter_config);
            }
        }
    }

    report.methods.reserve(runs.size());
    for (MethodRun& run : runs) {
        report.methods.push_back(summarize(std::move(run)));
    }
    return report;
}

std::map<SolverMethod, double> speedup_summary(const BenchReport& report, SolverMethod baseline) {
    const MethodTiming* base = nullptr;
    for (const MethodTiming& mt : report.methods) {
        if (mt.method == baseline) {
            base = &mt;
            break;
        }
    }
    if (base == nullptr) {
        throw DomainError("baseline", "baseline method is not present in the report");
    }
    std::map<SolverMethod, double> ratios;
    for (const MethodTiming& mt : report.methods) {
        ratios[mt.method] = base->median_ns / mt.median_ns;
    }
    return ratios;
}

double nearest_rank_quantile(const std::vector<double>& sorted_samples, double p) {
    if (sorted_samples.empty()) {
        throw DomainError("samples", "quantile of an empty sample");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("p", "quantile level must be in [0, 1]");
    }
    if (p == 0.0) return sorted_samples.front();
    const auto rank = static_cast<std::size_t>(
        std::ceil(p * static_cast<double>(sorted_samples.size())));
    return sorted_samples[std::min(rank, sorted_samples.size()) - 1];
}

std::string to_csv(const BenchReport& report) {
    std::string out = "method,sample_ns\n";
    for (const MethodTiming& mt : report.methods) {
        for (double sample : mt.samples_ns) {
            out += method_id(mt.method);
            out += ',';
            out += format_g17(sample);
            out += '\n';
        }
    }
    return out;
}

std::string to_json(const BenchReport& report) {
    std::string out = "{\n";
    out += "  \"environment\": \"" + json_escape(report.environment) + "\",\n";
    out += "  \"inputs\": {\"c\": " + format_g17(report.inputs.c()) +
           ", \"phi\": " + format_g17(report.inputs.phi()) +
           ", \"se\": " + format_g17(report.inputs.se_target()) + "},\n";
    out += "  \"repetitions\": " + std::to_string(report.repetitions) + ",\n";
    out += "  \"warmup\": " + std::to_string(report.warmup) + ",\n";
    out += "  \"warning\": \"" + json_escape(report.warning) + "\",\n";
    out += "  \"methods\": [\n";
    for (std::size_t i = 0; i < report.methods.size(); ++i) {
        const MethodTiming& mt = report.methods[i];
        out += "    {\"method\": \"" + std::string(method_id(mt.method)) + "\"";
        out += ", \"batch\": " + std::to_string(mt.batch);
        out += ", \"min_ns\": " + format_g17(mt.min_ns);
        out += ", \"q1_ns\": " + format_g17(mt.q1_ns);
        out += ", \"median_ns\": " + format_g17(mt.median_ns);
        out += ", \"q3_ns\": " + format_g17(mt.q3_ns);
        out += ", \"max_ns\": " + format_g17(mt.max_ns);
        out += ", \"mean_ns\": " + format_g17(mt.mean_ns);
        out += i + 1 == report.methods.size() ? "}\n" : "},\n";
    }
    out += "  ]\n}\n";
    return out;
}

std::string environment_descriptor() {
    std::string desc;
#if !defined(_WIN32)
    utsname names{};
    if (uname(&names) == 0) {
        desc += names.sysname;
        desc += ' ';
        desc += names.release;
        desc += ' ';
        desc += names.machine;
    }
#endif
    std::ifstream cpuinfo("/proc/cpuinfo");
    std::string line;
    while (std::getline(cpuinfo, line)) {
        if (line.rfind("model name", 0) == 0) {
            const auto pos = line.find(": ");
            if (pos != std::string::npos) {
                desc += ", ";
                desc += line.substr(pos + 2);
            }
            break;
        }
    }
    desc += ", " + std::to_string(std::thread::hardware_concurrency()) + " hardware threads";
#if defined(__VERSION__)
    desc += ", compiler " __VERSION__;
#endif
    return desc;
}

}  // namespace cstatsize
