#include "cstatsize/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <set>
#include <utility>

namespace cstatsize {

SampleSizeResult solve_method(const DiscriminationInputs& in, SolverMethod method,
                              const IterativeConfig& config, bool fast_oracle) {
    if (method == SolverMethod::Iterative) {
        return fast_oracle ? n_iterative_fast(in, config) : n_iterative(in, config);
    }
    return solve(in, method);
}

std::vector<double> range_by_step(double lo, double hi, double step) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
        throw DomainError("range", "range bounds must be finite with lo <= hi");
    }
    if (!std::isfinite(step) || step <= 0.0) {
        throw DomainError("range", "range step must be positive");
    }
    const auto steps = static_cast<long long>(std::floor((hi - lo) / step + 1e-6));
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(steps) + 1);
    for (long long i = 0; i <= steps; ++i) {
        values.push_back(lo + static_cast<double>(i) * step);
    }
    return values;
}

std::vector<double> range_by_count(double lo, double hi, int count) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo >= hi) {
        throw DomainError("range", "range bounds must be finite with lo < hi");
    }
    if (count < 2) {
        throw DomainError("range", "range count must be at least 2");
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count - 1; ++i) {
        values.push_back(lo + static_cast<double>(i) * step);
    }
    values.push_back(hi);
    return values;
}

namespace {

void check_no_duplicates(const char* field, const std::vector<double>& values) {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError(field, std::string(field) + " contains duplicate values");
    }
}

}  // namespace

GridSpec::GridSpec(std::vector<double> c_values, std::vector<double> phi_values,
                   std::vector<double> se_values, std::vector<SolverMethod> methods)
    : c_values_(std::move(c_values)),
      phi_values_(std::move(phi_values)),
      se_values_(std::move(se_values)),
      methods_(std::move(methods)) {
    if (c_values_.empty()) throw DomainError("c_values", "c_values must be non-empty");
    if (phi_values_.empty()) throw DomainError("phi_values", "phi_values must be non-empty");
    if (se_values_.empty()) throw DomainError("se_values", "se_values must be non-empty");
    if (methods_.empty()) throw DomainError("methods", "methods must be non-empty");
    check_no_duplicates("c_values", c_values_);
    check_no_duplicates("phi_values", phi_values_);
    check_no_duplicates("se_values", se_values_);
    if (std::set<SolverMethod>(methods_.begin(), methods_.end()).size() != methods_.size()) {
        throw DomainError("methods", "methods contains duplicates");
    }
    // Domain check for every combination up front, so workers cannot fail.
    for (double c : c_values_) {
        for (double phi : phi_values_) {
            for (double se : se_values_) {
                validate_inputs(c, phi, se);
            }
        }
    }
}

bool GridSpec::has_iterative() const noexcept {
    return std::find(methods_.begin(), methods_.end(), SolverMethod::Iterative) != methods_.end();
}

namespace {

SweepRow compute_row(const GridSpec& spec, std::size_t index, const SweepOptions& options) {
    const std::size_t n_se = spec.se_values().size();
    const std::size_t n_phi = spec.phi_values().size();
    const std::size_t k = index % n_se;
    const std::size_t j = (index / n_se) % n_phi;
    const std::size_t i = index / (n_se * n_phi);

    SweepRow row;
    row.c = spec.c_values()[i];
    row.phi = spec.phi_values()[j];
    row.se = spec.se_values()[k];

    const DiscriminationInputs in(row.c, row.phi, row.se);
    for (SolverMethod m : spec.methods()) {
        const SampleSizeResult result = solve_method(in, m, options.iterative, options.fast_oracle);
        row.n_by_method[m] = MethodOutcome{result.n_raw, result.n};
    }

    double raw_min = 0.0;
    double raw_max = 0.0;
    bool have_closed = false;
    for (SolverMethod m : spec.methods()) {
        if (!is_closed_form(m)) continue;
        const double raw = row.n_by_method.at(m).n_raw;
        if (!have_closed) {
            raw_min = raw_max = raw;
            have_closed = true;
        } else {
            raw_min = std::min(raw_min, raw);
            raw_max = std::max(raw_max, raw);
        }
    }
    row.n_raw_max_rel_diff = have_closed && raw_min > 0.0 ? (raw_max - raw_min) / raw_min : 0.0;

    if (spec.has_iterative()) {
        const long long n_iter = row.n_by_method.at(SolverMethod::Iterative).n;
        long long worst = 0;
        for (SolverMethod m : spec.methods()) {
            if (!is_closed_form(m)) continue;
            worst = std::max(worst, std::llabs(row.n_by_method.at(m).n - n_iter));
        }
        row.oracle_abs_diff_max = worst;
    }
    return row;
}

SweepReport assemble_report(const GridSpec& spec, std::vector<SweepRow> rows) {
    SweepReport report{spec, std::move(rows), true, 0.0};
    for (const SweepRow& row : report.rows) {
        report.max_pairwise_rel_diff = std::max(report.max_pairwise_rel_diff,
                                                row.n_raw_max_rel_diff);
        if (row.oracle_abs_diff_max && *row.oracle_abs_diff_max > 1) {
            report.all_within_one = false;
        }
    }
    return report;
}

SweepReport sweep_impl(const GridSpec& spec, const SweepOptions& options, bool parallel) {
    const std::size_t count = spec.point_count();
    std::vector<SweepRow> rows(count);

#if defined(_OPENMP)
    if (parallel) {
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t index = 0; index < static_cast<std::ptrdiff_t>(count); ++index) {
            try {
                rows[static_cast<std::size_t>(index)] =
                    compute_row(spec, static_cast<std::size_t>(index), options);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        return assemble_report(spec, std::move(rows));
    }
#else
    (void)parallel;
#endif

    for (std::size_t index = 0; index < count; ++index) {
        rows[index] = compute_row(spec, index, options);
    }
    return assemble_report(spec, std::move(rows));
}

}  // namespace

SweepReport run_sweep(const GridSpec& spec, const SweepOptions& options) {
    return sweep_impl(spec, options, options.parallel);
}

SweepReport run_sweep_serial(const GridSpec& spec, const SweepOptions& options) {
    return sweep_impl(spec, options, false);
}

GridSpec verification_grid() {
    return GridSpec(range_by_step(0.55, 0.95, 0.05), range_by_step(0.01, 0.50, 0.01), {0.02551},
                    std::vector<SolverMethod>(kAllMethods.begin(), kAllMethods.end()));
}

std::vector<Table1Row> reproduce_table1(const IterativeConfig& config) {
    // Published reference cases: (c, phi, se) -> N.
    static constexpr struct {
        double c, phi, se;
        long long expected_n;
    } kCases[] = {
        {0.70, 0.100, 0.02551, 1154},
        {0.80, 0.500, 0.02551, 302},
        {0.80, 0.018, 0.02551, 4252},
        {0.75, 0.018, 0.02551, 5125},
        {0.85, 0.018, 0.02551, 3271},
    };

    std::vector<Table1Row> rows;
    rows.reserve(std::size(kCases));
    for (const auto& cs : kCases) {
        const DiscriminationInputs in(cs.c, cs.phi, cs.se);
        Table1Row row{in, cs.expected_n, {}, true};
        for (SolverMethod m : kAllMethods) {
            const long long n = solve_method(in, m, config).n;
            row.n_by_method[m] = n;
            if (n != cs.expected_n) row.pass = false;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CurveSet figure_curves(double c, const std::vector<double>& phi_values, const SeRange& se_range,
                       const std::vector<SolverMethod>& methods) {
    if (phi_values.empty()) throw DomainError("phi_values", "phi_values must be non-empty");
    if (methods.empty()) throw DomainError("methods", "methods must be non-empty");
    const std::vector<double> se_values = range_by_count(se_range.lo, se_range.hi, se_range.count);

    CurveSet curves{c, {}};
    curves.points.reserve(methods.size() * phi_values.size() * se_values.size());
    for (SolverMethod m : methods) {
        for (double phi : phi_values) {
            for (double se : se_values) {
                const DiscriminationInputs in(c, phi, se);
                const SampleSizeResult result = solve_method(in, m);
                curves.points.push_back(CurvePoint{m, phi, se, result.n_raw, result.n});
            }
        }
    }
    return curves;
}

namespace {

void append_csv_line(std::string& out, SolverMethod m, double c, double phi, double se,
                     double n_raw, long long n) {
    out += method_id(m);
    out += ',';
    out += format_g17(c);
    out += ',';
    out += format_g17(phi);
    out += ',';
    out += format_g17(se);
    out += ',';
    out += format_g17(n_raw);
    out += ',';
    out += std::to_string(n);
    out += '\n';
}

void append_json_line(std::string& out, SolverMethod m, double c, double phi, double se,
                      double n_raw, long long n, bool last) {
    out += "  {\"method\":\"";
    out += method_id(m);
    out += "\",\"c\":";
    out += format_g17(c);
    out += ",\"phi\":";
    out += format_g17(phi);
    out += ",\"se\":";
    out += format_g17(se);
    out += ",\"n_raw\":";
    out += format_g17(n_raw);
    out += ",\"n\":";
    out += std::to_string(n);
    out += last ? "}\n" : "},\n";
}

constexpr const char* kCsvHeader = "method,c,phi,se,n_raw,n\n";

}  // namespace

std::string to_csv(const SweepReport& report) {
    std::string out = kCsvHeader;
    for (const SweepRow& row : report.rows) {
        for (SolverMethod m : report.spec.methods()) {
            const MethodOutcome& outcome = row.n_by_method.at(m);
            append_csv_line(out, m, row.c, row.phi, row.se, outcome.n_raw, outcome.n);
        }
    }
    return out;
}

std::string to_json(const SweepReport& report) {
    std::string out = "[\n";
    const std::size_t total = report.rows.size() * report.spec.methods().size();
    std::size_t emitted = 0;
    for (const SweepRow& row : report.rows) {
        for (SolverMethod m : report.spec.methods()) {
            const MethodOutcome& outcome = row.n_by_method.at(m);
            append_json_line(out, m, row.c, row.phi, row.se, outcome.n_raw, outcome.n,
                             ++emitted == total);
        }
    }
    out += "]\n";
    return out;
}

std::string to_csv(const CurveSet& curves) {
    std::string out = kCsvHeader;
    for (const CurvePoint& p : curves.points) {
        append_csv_line(out, p.method, curves.c, p.phi, p.se, p.n_raw, p.n);
    }
    return out;
}

std::string to_json(const CurveSet& curves) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < curves.points.size(); ++i) {
        const CurvePoint& p = curves.points[i];
        append_json_line(out, p.method, curves.c, p.phi, p.se, p.n_raw, p.n,
                         i + 1 == curves.points.size());
    }
    out += "]\n";
    return out;
}

}  // namespace cstatsize
