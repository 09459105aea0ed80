// Command-line front end: solve, verify, sweep, curves, bench.
//
// Exit codes: 0 success, 1 internal or verification failure, 2 usage or
// domain error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cstatsize/bench.hpp"
#include "cstatsize/verify.hpp"

namespace {

using namespace cstatsize;

// ---------------------------------------------------------------------------
// parsing helpers (locale-independent)
// ---------------------------------------------------------------------------

double parse_double_token(const std::string& text, const char* field) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw DomainError(field, std::string(field) + ": malformed number '" + text + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

struct StepRange {
    double lo;
    double hi;
    double step;
};

StepRange parse_step_range(const std::string& text, const char* field) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw DomainError(field, std::string(field) + ": expected lo:hi:step, got '" + text + "'");
    }
    return StepRange{parse_double_token(parts[0], field), parse_double_token(parts[1], field),
                     parse_double_token(parts[2], field)};
}

SeRange parse_count_range(const std::string& text, const char* field) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw DomainError(field,
                          std::string(field) + ": expected lo:hi:count, got '" + text + "'");
    }
    int count = 0;
    const char* begin = parts[2].data();
    const char* end = begin + parts[2].size();
    const auto [ptr, ec] = std::from_chars(begin, end, count);
    if (ec != std::errc() || ptr != end) {
        throw DomainError(field,
                          std::string(field) + ": malformed count '" + parts[2] + "'");
    }
    return SeRange{parse_double_token(parts[0], field), parse_double_token(parts[1], field),
                   count};
}

std::vector<double> parse_double_list(const std::string& text, const char* field) {
    std::vector<double> values;
    for (const std::string& part : split(text, ',')) {
        values.push_back(parse_double_token(part, field));
    }
    return values;
}

std::vector<SolverMethod> parse_method_list(const std::string& text) {
    if (text == "all") {
        return {kAllMethods.begin(), kAllMethods.end()};
    }
    if (text == "closed") {
        return {kClosedMethods.begin(), kClosedMethods.end()};
    }
    std::vector<SolverMethod> methods;
    for (const std::string& part : split(text, ',')) {
        const auto method = parse_method(part);
        if (!method) {
            throw DomainError("method", "unknown method '" + part +
                                            "' (expected all, closed, or a method id)");
        }
        methods.push_back(*method);
    }
    return methods;
}

// ---------------------------------------------------------------------------
// output helpers
// ---------------------------------------------------------------------------

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("failed writing output file '" + path + "'");
    }
}

std::string resolve_format(const std::string& requested, const char* fallback) {
    return requested.empty() ? fallback : requested;
}

void warn_no_discrimination(double c) {
    if (c <= 0.5) {
        std::cerr << "warning: c = " << c
                  << " is at or below 0.5; the model has no discriminative ability\n";
    }
}

void warn_implausible_n(double n_raw) {
    if (n_raw > 1e7) {
        std::cerr << "warning: required sample size " << format_g17(n_raw)
                  << " exceeds 1e7; check the SE target\n";
    }
}

void append_result_csv(std::string& out, const SampleSizeResult& result) {
    out += method_id(result.method);
    out += ',';
    out += format_g17(result.inputs.c());
    out += ',';
    out += format_g17(result.inputs.phi());
    out += ',';
    out += format_g17(result.inputs.se_target());
    out += ',';
    out += format_g17(result.n_raw);
    out += ',';
    out += std::to_string(result.n);
    out += '\n';
}

std::string result_json_object(const SampleSizeResult& result) {
    std::string out = "{\"method\":\"";
    out += method_id(result.method);
    out += "\",\"c\":";
    out += format_g17(result.inputs.c());
    out += ",\"phi\":";
    out += format_g17(result.inputs.phi());
    out += ",\"se\":";
    out += format_g17(result.inputs.se_target());
    out += ",\"n_raw\":";
    out += format_g17(result.n_raw);
    out += ",\"n\":";
    out += std::to_string(result.n);
    out += "}";
    return out;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveArgs {
    double c = 0.0;
    double phi = 0.0;
    double se = 0.0;
    double ci_width = 0.0;
    double level = 0.95;
    bool has_se = false;
    bool has_width = false;
    std::string method = "mathgpt";
    bool raw = false;
    long long max_n = 1'000'000;
    std::string format;
};

int run_solve(const SolveArgs& args) {
    if (args.has_se == args.has_width) {
        throw DomainError("se", "exactly one of --se or --ci-width is required");
    }
    const double se =
        args.has_se ? args.se : ci_width_to_se(ConfidenceSpec(args.ci_width, args.level));
    const DiscriminationInputs inputs = validate_inputs(args.c, args.phi, se);
    warn_no_discrimination(args.c);

    const std::vector<SolverMethod> methods = parse_method_list(args.method);
    const IterativeConfig config(args.max_n);
    std::vector<SampleSizeResult> results;
    results.reserve(methods.size());
    for (SolverMethod m : methods) {
        results.push_back(solve_method(inputs, m, config));
    }
    for (const SampleSizeResult& result : results) {
        warn_implausible_n(result.n_raw);
    }

    const std::string format = resolve_format(args.format, "human");
    if (format == "csv") {
        std::string out = "method,c,phi,se,n_raw,n\n";
        for (const SampleSizeResult& result : results) {
            append_result_csv(out, result);
        }
        std::cout << out;
    } else if (format == "json") {
        if (results.size() == 1) {
            std::cout << result_json_object(results.front()) << "\n";
        } else {
            std::cout << "[\n";
            for (std::size_t i = 0; i < results.size(); ++i) {
                std::cout << "  " << result_json_object(results[i])
                          << (i + 1 == results.size() ? "\n" : ",\n");
            }
            std::cout << "]\n";
        }
    } else {
        if (results.size() == 1) {
            if (args.raw) {
                std::printf("n_raw=%s n=%lld\n", format_g17(results.front().n_raw).c_str(),
                            results.front().n);
            } else {
                std::printf("%lld\n", results.front().n);
            }
        } else {
            std::printf("%-13s %-22s %s\n", "method", "n_raw", "n");
            for (const SampleSizeResult& result : results) {
                std::printf("%-13s %-22s %lld\n", std::string(method_id(result.method)).c_str(),
                            format_g17(result.n_raw).c_str(), result.n);
            }
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
    bool grid = false;
    bool fast_oracle = false;
    long long max_n = 1'000'000;
    std::string format;
};

int run_verify(const VerifyArgs& args) {
    const IterativeConfig config(args.max_n);
    const std::vector<Table1Row> rows = reproduce_table1(config);
    bool table_pass = true;
    for (const Table1Row& row : rows) {
        table_pass = table_pass && row.pass;
    }

    std::optional<SweepReport> grid_report;
    if (args.grid) {
        SweepOptions options;
        options.fast_oracle = args.fast_oracle;
        options.iterative = config;
        grid_report = run_sweep(verification_grid(), options);
    }
    const bool pass = table_pass && (!grid_report || grid_report->all_within_one);

    const std::string format = resolve_format(args.format, "human");
    if (format == "json") {
        std::string out = "{\n  \"table1\": [\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Table1Row& row = rows[i];
            out += "    {\"c\":" + format_g17(row.inputs.c()) +
                   ",\"phi\":" + format_g17(row.inputs.phi()) +
                   ",\"se\":" + format_g17(row.inputs.se_target()) +
                   ",\"expected_n\":" + std::to_string(row.expected_n) + ",\"n_by_method\":{";
            std::size_t emitted = 0;
            for (const auto& [method, n] : row.n_by_method) {
                out += "\"" + std::string(method_id(method)) + "\":" + std::to_string(n);
                out += ++emitted == row.n_by_method.size() ? "" : ",";
            }
            out += std::string("},\"pass\":") + (row.pass ? "true" : "false") + "}";
            out += i + 1 == rows.size() ? "\n" : ",\n";
        }
        out += "  ],\n";
        if (grid_report) {
            long long worst = 0;
            for (const SweepRow& row : grid_report->rows) {
                if (row.oracle_abs_diff_max) worst = std::max(worst, *row.oracle_abs_diff_max);
            }
            out += "  \"grid\": {\"points\": " + std::to_string(grid_report->rows.size()) +
                   ", \"all_within_one\": " +
                   (grid_report->all_within_one ? "true" : "false") +
                   ", \"max_oracle_abs_diff\": " + std::to_string(worst) +
                   ", \"max_pairwise_rel_diff\": " +
                   format_g17(grid_report->max_pairwise_rel_diff) + "},\n";
        }
        out += std::string("  \"pass\": ") + (pass ? "true" : "false") + "\n}\n";
        std::cout << out;
    } else {
        int passed = 0;
        for (const Table1Row& row : rows) {
            std::printf("c=%-5g phi=%-6g se=%-8g expected=%-5lld %s\n", row.inputs.c(),
                        row.inputs.phi(), row.inputs.se_target(), row.expected_n,
                        row.pass ? "ok" : "MISMATCH");
            if (!row.pass) {
                for (const auto& [method, n] : row.n_by_method) {
                    if (n != row.expected_n) {
                        std::printf("    %s returned %lld\n",
                                    std::string(method_id(method)).c_str(), n);
                    }
                }
            }
            passed += row.pass ? 1 : 0;
        }
        std::printf("reference rows: %d/%zu pass\n", passed, rows.size());
        if (grid_report) {
            std::printf("grid: %zu points, all methods within 1 of the iterative search: %s, "
                        "max pairwise rel diff %.3g\n",
                        grid_report->rows.size(),
                        grid_report->all_within_one ? "yes" : "NO",
                        grid_report->max_pairwise_rel_diff);
        }
        std::printf("%s\n", pass ? "PASS" : "FAIL");
    }
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepArgs {
    std::string c_range;
    std::string phi_range;
    std::string se_list;
    std::string methods = "mathgpt";
    bool serial = false;
    bool fast_oracle = false;
    long long max_n = 1'000'000;
    std::string out;
    std::string format;
};

int run_sweep_cmd(const SweepArgs& args) {
    const StepRange c_range = parse_step_range(args.c_range, "c-range");
    const StepRange phi_range = parse_step_range(args.phi_range, "phi-range");
    const GridSpec spec(range_by_step(c_range.lo, c_range.hi, c_range.step),
                        range_by_step(phi_range.lo, phi_range.hi, phi_range.step),
                        parse_double_list(args.se_list, "se"), parse_method_list(args.methods));
    for (double c : spec.c_values()) {
        if (c <= 0.5) {
            warn_no_discrimination(c);
            break;
        }
    }

    SweepOptions options;
    options.parallel = !args.serial;
    options.fast_oracle = args.fast_oracle;
    options.iterative = IterativeConfig(args.max_n);
    const SweepReport report =
        args.serial ? run_sweep_serial(spec, options) : run_sweep(spec, options);

    const std::string format = resolve_format(args.format, "csv");
    if (format == "json") {
        write_output(args.out, to_json(report));
    } else if (format == "human") {
        std::string summary;
        summary += "points " + std::to_string(report.rows.size()) + "\n";
        summary += "max pairwise rel diff " + format_g17(report.max_pairwise_rel_diff) + "\n";
        if (spec.has_iterative()) {
            summary += std::string("all closed-form results within 1 of the iterative search: ") +
                       (report.all_within_one ? "yes" : "NO") + "\n";
        }
        write_output(args.out, summary);
    } else {
        write_output(args.out, to_csv(report));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// curves
// ---------------------------------------------------------------------------

struct CurvesArgs {
    double c = 0.0;
    std::string phi_list;
    std::string se_range;
    std::string methods = "closed";
    std::string out;
    std::string format;
};

int run_curves(const CurvesArgs& args) {
    const SeRange se_range = parse_count_range(args.se_range, "se-range");
    const CurveSet curves = figure_curves(args.c, parse_double_list(args.phi_list, "phi-list"),
                                          se_range, parse_method_list(args.methods));
    warn_no_discrimination(args.c);

    const std::string format = resolve_format(args.format, "csv");
    if (format == "json") {
        write_output(args.out, to_json(curves));
    } else if (format == "human") {
        std::string summary;
        summary += "c " + format_g17(curves.c) + "\n";
        summary += "points " + std::to_string(curves.points.size()) + "\n";
        write_output(args.out, summary);
    } else {
        write_output(args.out, to_csv(curves));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
    std::string methods = "all";
    int reps = 1000;
    int warmup = 100;
    double c = 0.7;
    double phi = 0.1;
    double se = 0.02551;
    long long max_n = 1'000'000;
    std::string out;
    std::string summary_path;
    std::string format;
};

int run_bench_cmd(const BenchArgs& args) {
    const BenchConfig config(parse_method_list(args.methods), args.reps, args.warmup,
                             validate_inputs(args.c, args.phi, args.se),
                             IterativeConfig(args.max_n));
    const BenchReport report = run_bench(config);
    if (!report.warning.empty()) {
        std::cerr << "warning: " << report.warning << "\n";
    }

    const std::string format = resolve_format(args.format, "csv");
    if (format == "json") {
        write_output(args.out, to_json(report));
    } else if (format == "human") {
        std::string table;
        char line[256];
        std::snprintf(line, sizeof(line), "%-13s %9s %12s %12s %12s %12s %12s\n", "method",
                      "batch", "min_ns", "q1_ns", "median_ns", "q3_ns", "max_ns");
        table += line;
        for (const MethodTiming& mt : report.methods) {
            std::snprintf(line, sizeof(line), "%-13s %9lld %12.1f %12.1f %12.1f %12.1f %12.1f\n",
                          std::string(method_id(mt.method)).c_str(), mt.batch, mt.min_ns,
                          mt.q1_ns, mt.median_ns, mt.q3_ns, mt.max_ns);
            table += line;
        }
        bool have_iterative = false;
        for (const MethodTiming& mt : report.methods) {
            have_iterative = have_iterative || mt.method == SolverMethod::Iterative;
        }
        if (have_iterative && report.methods.size() > 1) {
            table += "speedup vs iterative (median):";
            for (const auto& [method, ratio] : speedup_summary(report, SolverMethod::Iterative)) {
                if (method == SolverMethod::Iterative) continue;
                std::snprintf(line, sizeof(line), " %s %.0fx",
                              std::string(method_id(method)).c_str(), ratio);
                table += line;
            }
            table += "\n";
        }
        table += "environment: " + report.environment + "\n";
        write_output(args.out, table);
    } else {
        write_output(args.out, to_csv(report));
    }
    if (!args.summary_path.empty()) {
        write_output(args.summary_path, to_json(report));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sample-size calculator for external validation of binary prediction models\n"
                 "(C-statistic precision criterion; closed-form and iterative methods)"};
    app.require_subcommand(1);
    const char* format_help = "output format: human, csv, or json";
    const auto format_check = CLI::IsMember({"human", "csv", "json"});

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "compute N for one problem");
    solve_cmd->add_option("--c", solve_args.c, "anticipated C-statistic, in (0, 1)")->required();
    solve_cmd->add_option("--phi", solve_args.phi, "anticipated outcome event proportion, in (0, 1)")
        ->required();
    auto* se_opt = solve_cmd->add_option("--se", solve_args.se, "target SE of the C-statistic");
    auto* width_opt = solve_cmd->add_option("--ci-width", solve_args.ci_width,
                                            "target CI width for the C-statistic");
    se_opt->excludes(width_opt);
    width_opt->excludes(se_opt);
    solve_cmd->add_option("--level", solve_args.level, "confidence level for --ci-width")
        ->capture_default_str();
    solve_cmd
        ->add_option("--method", solve_args.method,
                     "method id, 'all', or 'closed' (ids: mathematica, maxima, sonar, gpt41, "
                     "grok3beta, gemini25pro, mathgpt, iterative)")
        ->capture_default_str();
    solve_cmd->add_flag("--raw", solve_args.raw, "also print the unrounded root");
    solve_cmd->add_option("--max-n", solve_args.max_n, "iterative search ceiling")
        ->capture_default_str();
    solve_cmd->add_option("--format", solve_args.format, format_help)
        ->envname("CSTATSIZE_FORMAT")
        ->check(format_check);

    VerifyArgs verify_args;
    auto* verify_cmd =
        app.add_subcommand("verify", "check the built-in reference cases (and grid with --grid)");
    verify_cmd->add_flag("--grid", verify_args.grid,
                         "also sweep the 450-point agreement grid against the iterative search");
    verify_cmd->add_flag("--fast-oracle", verify_args.fast_oracle,
                         "use the bracket+bisection iterative search in the grid");
    verify_cmd->add_option("--max-n", verify_args.max_n, "iterative search ceiling")
        ->capture_default_str();
    verify_cmd->add_option("--format", verify_args.format, format_help)
        ->envname("CSTATSIZE_FORMAT")
        ->check(format_check);

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a parameter grid");
    sweep_cmd->add_option("--c-range", sweep_args.c_range, "C values as lo:hi:step")->required();
    sweep_cmd->add_option("--phi-range", sweep_args.phi_range, "phi values as lo:hi:step")
        ->required();
    sweep_cmd->add_option("--se", sweep_args.se_list, "SE target(s), comma-separated")->required();
    sweep_cmd->add_option("--methods", sweep_args.methods, "comma-separated ids, 'all', or 'closed'")
        ->capture_default_str();
    sweep_cmd->add_flag("--serial", sweep_args.serial, "use the serial reference sweep");
    sweep_cmd->add_flag("--fast-oracle", sweep_args.fast_oracle,
                        "use the bracket+bisection iterative search");
    sweep_cmd->add_option("--max-n", sweep_args.max_n, "iterative search ceiling")
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep_args.out, "output file (default stdout)");
    sweep_cmd->add_option("--format", sweep_args.format, format_help)
        ->envname("CSTATSIZE_FORMAT")
        ->check(format_check);

    CurvesArgs curves_args;
    auto* curves_cmd = app.add_subcommand("curves", "emit N-versus-SE curve data");
    curves_cmd->add_option("--c", curves_args.c, "C-statistic for all curves")->required();
    curves_cmd->add_option("--phi-list", curves_args.phi_list, "comma-separated phi values")
        ->required();
    curves_cmd->add_option("--se-range", curves_args.se_range, "SE axis as lo:hi:count")
        ->required();
    curves_cmd
        ->add_option("--methods", curves_args.methods, "comma-separated ids, 'all', or 'closed'")
        ->capture_default_str();
    curves_cmd->add_option("--out", curves_args.out, "output file (default stdout)");
    curves_cmd->add_option("--format", curves_args.format, format_help)
        ->envname("CSTATSIZE_FORMAT")
        ->check(format_check);

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "time the methods on one input point");
    bench_cmd->add_option("--methods", bench_args.methods, "comma-separated ids, 'all', or 'closed'")
        ->capture_default_str();
    bench_cmd->add_option("--reps", bench_args.reps, "samples per method (>= 100)")
        ->capture_default_str();
    bench_cmd->add_option("--warmup", bench_args.warmup, "discarded warmup iterations (>= 10)")
        ->capture_default_str();
    bench_cmd->add_option("--c", bench_args.c, "C-statistic")->capture_default_str();
    bench_cmd->add_option("--phi", bench_args.phi, "outcome event proportion")
        ->capture_default_str();
    bench_cmd->add_option("--se", bench_args.se, "target SE")->capture_default_str();
    bench_cmd->add_option("--max-n", bench_args.max_n, "iterative search ceiling")
        ->capture_default_str();
    bench_cmd->add_option("--out", bench_args.out, "output file (default stdout)");
    bench_cmd->add_option("--summary", bench_args.summary_path,
                          "also write the JSON summary to this file");
    bench_cmd->add_option("--format", bench_args.format, format_help)
        ->envname("CSTATSIZE_FORMAT")
        ->check(format_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        solve_args.has_se = se_opt->count() > 0;
        solve_args.has_width = width_opt->count() > 0;
        if (solve_cmd->parsed()) return run_solve(solve_args);
        if (verify_cmd->parsed()) return run_verify(verify_args);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_args);
        if (curves_cmd->parsed()) return run_curves(curves_args);
        if (bench_cmd->parsed()) return run_bench_cmd(bench_args);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
