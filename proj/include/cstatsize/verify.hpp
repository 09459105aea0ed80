#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cstatsize/core.hpp"
#include "cstatsize/oracle.hpp"
#include "cstatsize/solvers.hpp"

namespace cstatsize {

// Unified dispatch across all eight methods.
SampleSizeResult solve_method(const DiscriminationInputs& in, SolverMethod method,
                              const IterativeConfig& config = IterativeConfig(),
                              bool fast_oracle = false);

// Inclusive arithmetic progression lo, lo + step, ... generated by integer
// index (never by repeated addition, which drifts).
std::vector<double> range_by_step(double lo, double hi, double step);

// count points evenly spaced over [lo, hi]; endpoints exact. count >= 2.
std::vector<double> range_by_count(double lo, double hi, int count);

// A cross product of parameter values to evaluate with a set of methods.
class GridSpec {
public:
    GridSpec(std::vector<double> c_values, std::vector<double> phi_values,
             std::vector<double> se_values, std::vector<SolverMethod> methods);

    const std::vector<double>& c_values() const noexcept { return c_values_; }
    const std::vector<double>& phi_values() const noexcept { return phi_values_; }
    const std::vector<double>& se_values() const noexcept { return se_values_; }
    const std::vector<SolverMethod>& methods() const noexcept { return methods_; }

    std::size_t point_count() const noexcept {
        return c_values_.size() * phi_values_.size() * se_values_.size();
    }
    bool has_iterative() const noexcept;

private:
    std::vector<double> c_values_;
    std::vector<double> phi_values_;
    std::vector<double> se_values_;
    std::vector<SolverMethod> methods_;
};

struct MethodOutcome {
    double n_raw = 0.0;
    long long n = 0;
};

struct SweepRow {
    double c = 0.0;
    double phi = 0.0;
    double se = 0.0;
    std::map<SolverMethod, MethodOutcome> n_by_method;
    // Largest pairwise relative difference of n_raw across the closed-form
    // methods at this point (0 when fewer than two are requested).
    double n_raw_max_rel_diff = 0.0;
    // Largest |closed-form n - iterative n|; present only when the iterative
    // method is among the requested methods.
    std::optional<long long> oracle_abs_diff_max;
};

struct SweepReport {
    GridSpec spec;
    std::vector<SweepRow> rows;  // c-major, then phi, then se
    bool all_within_one = true;
    double max_pairwise_rel_diff = 0.0;
};

struct SweepOptions {
    bool parallel = true;      // evaluate grid points across threads when OpenMP is available
    bool fast_oracle = false;  // bracket+bisection search instead of the linear scan
    IterativeConfig iterative{};
};

// Evaluates every grid point with every requested method. Row order is
// deterministic (c-major) regardless of execution order.
SweepReport run_sweep(const GridSpec& spec, const SweepOptions& options = SweepOptions());

// Reference implementation of run_sweep with no parallelism; kept as the
// comparison baseline for the OpenMP path.
SweepReport run_sweep_serial(const GridSpec& spec, const SweepOptions& options = SweepOptions());

// The built-in agreement grid: C 0.55..0.95 step 0.05, phi 0.01..0.50 step
// 0.01, SE 0.02551, all eight methods (450 points).
GridSpec verification_grid();

// One reference case: every method must reproduce expected_n exactly.
struct Table1Row {
    DiscriminationInputs inputs;
    long long expected_n;
    std::map<SolverMethod, long long> n_by_method;
    bool pass = false;
};

// Runs the five published reference examples through all eight methods.
std::vector<Table1Row> reproduce_table1(const IterativeConfig& config = IterativeConfig());

// Sample-size-versus-SE curve data for external plotting.
struct CurvePoint {
    SolverMethod method;
    double phi;
    double se;
    double n_raw;
    long long n;
};

struct CurveSet {
    double c;
    std::vector<CurvePoint> points;  // method-major, then phi, then se ascending
};

struct SeRange {
    double lo;
    double hi;
    int count;
};

CurveSet figure_curves(double c, const std::vector<double>& phi_values, const SeRange& se_range,
                       const std::vector<SolverMethod>& methods);

// CSV/JSON exports. Header row is exactly "method,c,phi,se,n_raw,n"; numbers
// carry 17 significant digits so they round-trip.
std::string to_csv(const SweepReport& report);
std::string to_json(const SweepReport& report);
std::string to_csv(const CurveSet& curves);
std::string to_json(const CurveSet& curves);

}  // namespace cstatsize
