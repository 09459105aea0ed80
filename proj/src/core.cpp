#include "cstatsize/core.hpp"

#include <cmath>
#include <cstdio>

namespace cstatsize {

namespace {

[[noreturn]] void fail_domain(const char* field, double value, const char* requirement) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s must satisfy %s, got %.17g", field, requirement, value);
    throw DomainError(field, buf);
}

void check_open_unit(const char* field, double value) {
    if (!std::isfinite(value) || value <= 0.0 || value >= 1.0) {
        fail_domain(field, value, "0 < value < 1");
    }
}

void check_positive(const char* field, double value) {
    if (!std::isfinite(value) || value <= 0.0) {
        fail_domain(field, value, "value > 0");
    }
}

}  // namespace

DiscriminationInputs::DiscriminationInputs(double c, double phi, double se_target)
    : c_(c), phi_(phi), se_target_(se_target) {
    check_open_unit("c", c);
    check_open_unit("phi", phi);
    check_positive("se_target", se_target);
}

DiscriminationInputs validate_inputs(double c, double phi, double se_target) {
    return DiscriminationInputs(c, phi, se_target);
}

ConfidenceSpec::ConfidenceSpec(double ci_width, double level) : ci_width_(ci_width), level_(level) {
    check_open_unit("ci_width", ci_width);
    check_open_unit("level", level);
}

std::string_view method_id(SolverMethod m) {
    switch (m) {
        case SolverMethod::Mathematica: return "mathematica";
        case SolverMethod::Maxima: return "maxima";
        case SolverMethod::Sonar: return "sonar";
        case SolverMethod::Gpt41: return "gpt41";
        case SolverMethod::Grok3Beta: return "grok3beta";
        case SolverMethod::Gemini25Pro: return "gemini25pro";
        case SolverMethod::MathGpt: return "mathgpt";
        case SolverMethod::Iterative: return "iterative";
    }
    throw InternalError("method_id: unknown SolverMethod");
}

std::string_view method_label(SolverMethod m) {
    switch (m) {
        case SolverMethod::Mathematica: return "Mathematica";
        case SolverMethod::Maxima: return "Maxima";
        case SolverMethod::Sonar: return "Sonar";
        case SolverMethod::Gpt41: return "GPT 4.1";
        case SolverMethod::Grok3Beta: return "Grok 3 Beta";
        case SolverMethod::Gemini25Pro: return "Gemini 2.5 Pro";
        case SolverMethod::MathGpt: return "MathGPT";
        case SolverMethod::Iterative: return "Iterative";
    }
    throw InternalError("method_label: unknown SolverMethod");
}

std::optional<SolverMethod> parse_method(std::string_view id) {
    for (SolverMethod m : kAllMethods) {
        if (method_id(m) == id) return m;
    }
    return std::nullopt;
}

double se_c(double c, double phi, double n) {
    check_open_unit("c", c);
    check_open_unit("phi", phi);
    check_positive("n", n);
    const double half_n_less_one = n / 2.0 - 1.0;
    const double bracket = 1.0 + half_n_less_one * ((1.0 - c) / (2.0 - c)) +
                           half_n_less_one * c / (1.0 + c);
    const double se2 = c * (1.0 - c) * bracket / (n * n * (phi * (1.0 - phi)));
    const double se = std::sqrt(se2);
    if (!std::isfinite(se) || se <= 0.0) {
        throw InternalError("se_c: result not a positive finite value");
    }
    return se;
}

double se_c_squared_simplified(double c, double phi, double n) {
    check_open_unit("c", c);
    check_open_unit("phi", phi);
    check_positive("n", n);
    const double numerator = (c - 1.0) * c * (2.0 * (c - 1.0) * c * (n - 1.0) - (n + 2.0));
    const double denominator = 2.0 * (c - 2.0) * (c + 1.0) * n * n * (phi - 1.0) * phi;
    const double se2 = numerator / denominator;
    if (!std::isfinite(se2) || se2 <= 0.0) {
        throw InternalError("se_c_squared_simplified: result not a positive finite value");
    }
    return se2;
}

double ci_width_to_se(const ConfidenceSpec& spec) {
    const double z = norm_quantile(0.5 * (1.0 + spec.level()));
    return spec.ci_width() / (2.0 * z);
}

// Wichura's PPND16 rational approximation for the normal quantile; absolute
// error below 1e-15 across (0, 1).
double norm_quantile(double p) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
        fail_domain("p", p, "0 < p < 1");
    }
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                     67265.770927008700853) *
                        r +
                    45921.953931549871457) *
                       r +
                   13731.693765509461125) *
                      r +
                  1971.5909503065514427) *
                     r +
                 133.14166789178437745) *
                    r +
                3.387132872796366608) /
               (((((((5226.495278852854561 * r + 28729.085735721942674) * r +
                     39307.89580009271061) *
                        r +
                    21213.794301586595867) *
                       r +
                   5394.1960214247511077) *
                      r +
                  687.1870074920579083) *
                     r +
                 42.313330701600911252) *
                    r +
                1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                      0.24178072517745061177) *
                         r +
                     1.27045825245236838258) *
                        r +
                    3.64784832476320460504) *
                       r +
                   5.7694972214606914055) *
                      r +
                  4.6303378461565452959) *
                     r +
                 1.42343711074968357734) /
                (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                      0.0151986665636164571966) *
                         r +
                     0.14810397642748007459) *
                        r +
                    0.68976733498510000455) *
                       r +
                   1.6763848301838038494) *
                      r +
                  2.05319162663775882187) *
                     r +
                 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      0.0012426609473880784386) *
                         r +
                     0.026532189526576123093) *
                        r +
                    0.29656057182850489123) *
                       r +
                   1.7848265399172913358) *
                      r +
                  5.4637849111641143699) *
                     r +
                 6.6579046435011037772) /
                (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                      1.8463183175100546818e-5) *
                         r +
                     7.868691311456132591e-4) *
                        r +
                    0.0148753612908506148525) *
                       r +
                   0.13692988092273580531) *
                      r +
                  0.59983220655588793769) *
                     r +
                 1.0);
    }
    return q < 0.0 ? -value : value;
}

std::string format_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

}  // namespace cstatsize
