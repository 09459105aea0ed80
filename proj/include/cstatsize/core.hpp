#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cstatsize {

// Raised when a user-supplied value is outside its documented domain.
// field() names the offending input.
class DomainError : public std::domain_error {
public:
    DomainError(std::string field, const std::string& message)
        : std::domain_error(message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Raised when a computed result violates an internal invariant. Points at a
// transcription bug, never at bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Validated problem definition:
//   c          anticipated C-statistic, 0 < c < 1 (strict)
//   phi        anticipated outcome event proportion, 0 < phi < 1 (strict)
//   se_target  target standard error of the C-statistic, > 0
class DiscriminationInputs {
public:
    DiscriminationInputs(double c, double phi, double se_target);

    double c() const noexcept { return c_; }
    double phi() const noexcept { return phi_; }
    double se_target() const noexcept { return se_target_; }

private:
    double c_;
    double phi_;
    double se_target_;
};

// Validating factory; values pass through unchanged.
DiscriminationInputs validate_inputs(double c, double phi, double se_target);

// The eight computation routes: seven closed-form inversions of the SE
// formula plus the iterative integer search they are checked against.
enum class SolverMethod {
    Mathematica,
    Maxima,
    Sonar,
    Gpt41,
    Grok3Beta,
    Gemini25Pro,
    MathGpt,
    Iterative,
};

inline constexpr std::array<SolverMethod, 8> kAllMethods = {
    SolverMethod::Mathematica, SolverMethod::Maxima,      SolverMethod::Sonar,
    SolverMethod::Gpt41,       SolverMethod::Grok3Beta,   SolverMethod::Gemini25Pro,
    SolverMethod::MathGpt,     SolverMethod::Iterative,
};

inline constexpr std::array<SolverMethod, 7> kClosedMethods = {
    SolverMethod::Mathematica, SolverMethod::Maxima,    SolverMethod::Sonar,
    SolverMethod::Gpt41,       SolverMethod::Grok3Beta, SolverMethod::Gemini25Pro,
    SolverMethod::MathGpt,
};

constexpr bool is_closed_form(SolverMethod m) noexcept {
    return m != SolverMethod::Iterative;
}

// Stable lowercase identifier used in CSV/JSON output and CLI flags.
std::string_view method_id(SolverMethod m);

// Human-readable name for tables and reports.
std::string_view method_label(SolverMethod m);

std::optional<SolverMethod> parse_method(std::string_view id);

// One solved sample-size problem. n is n_raw rounded up to the next integer
// (with a near-integer snap); the iterative search returns integers directly,
// so n_raw == n there.
struct SampleSizeResult {
    double n_raw;
    long long n;
    SolverMethod method;
    DiscriminationInputs inputs;
};

// Target confidence interval for the C-statistic: full two-sided width at a
// given confidence level.
class ConfidenceSpec {
public:
    explicit ConfidenceSpec(double ci_width, double level = 0.95);

    double ci_width() const noexcept { return ci_width_; }
    double level() const noexcept { return level_; }

private:
    double ci_width_;
    double level_;
};

// Standard error of the C-statistic for a validation set of n individuals
// with outcome proportion phi. n may be fractional; n > 0 required.
double se_c(double c, double phi, double n);

// Squared SE in the fraction-free simplified form. Algebraically equal to
// se_c(...)^2; kept as an independently transcribed cross-check.
double se_c_squared_simplified(double c, double phi, double n);

// SE implied by a target CI width: width / (2 z), where z is the standard
// normal quantile at (1 + level) / 2.
double ci_width_to_se(const ConfidenceSpec& spec);

// Standard normal quantile (inverse CDF). Rational approximation accurate to
// well below 1e-9 everywhere on (0, 1).
double norm_quantile(double p);

// 17-significant-digit decimal rendering; round-trips any double.
std::string format_g17(double value);

}  // namespace cstatsize
