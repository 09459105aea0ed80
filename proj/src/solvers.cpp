#include "cstatsize/solvers.hpp"

#include <cmath>
#include <string>

namespace cstatsize {

namespace {

double checked_radicand(double r, const char* where) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw InternalError(std::string(where) + ": radicand not finite and non-negative");
    }
    return r;
}

double checked_root(double n_raw, const char* where) {
    if (!std::isfinite(n_raw) || n_raw <= 0.0) {
        throw InternalError(std::string(where) + ": root not a positive finite value");
    }
    return n_raw;
}

}  // namespace

// Each function below is an independent transcription of one tool's output.
// Intermediates are local to each solution and do not mean the same thing
// across functions.

double n_mathematica(const DiscriminationInputs& in) {
    const double c = in.c();
    const double phi = in.phi();
    const double se2 = in.se_target() * in.se_target();

    const double alpha = c - 1.0;
    const double beta = 16.0 * (-2.0 + c - 2.0 * c * c * c + c * c * c * c) * se2 * phi;
    const double mu = c * alpha;
    const double delta = c + c * c - 4.0 * c * c * c + 2.0 * c * c * c * c;

    const double one_minus_2mu = 1.0 - 2.0 * mu;
    const double radicand =
        checked_radicand(mu * (beta + one_minus_2mu * one_minus_2mu * mu - beta * phi),
                         "n_mathematica");
    const double numerator = delta + std::sqrt(radicand);
    const double denominator = 4.0 * se2 * (alpha - 1.0) * (alpha + 2.0) * (phi - 1.0) * phi;
    return checked_root(numerator / denominator, "n_mathematica");
}

double n_mathematica_rejected_root(const DiscriminationInputs& in) {
    const double c = in.c();
    const double phi = in.phi();
    const double se2 = in.se_target() * in.se_target();

    const double cm1c = (c - 1.0) * c;
    const double z = std::sqrt(checked_radicand(
        cm1c * (cm1c * (1.0 - 2.0 * cm1c) * (1.0 - 2.0 * cm1c) +
                16.0 * se2 * (-2.0 + c - 2.0 * c * c * c + c * c * c * c) * phi * (1.0 - phi)),
        "n_mathematica_rejected_root"));
    const double numerator = c + c * c - 4.0 * c * c * c + 2.0 * c * c * c * c - z;
    const double denominator = 4.0 * se2 * (c - 2.0) * (c + 1.0) * (phi - 1.0) * phi;
    // Negative by construction; returned unchecked for diagnostics.
    return numerator / denominator;
}

double n_maxima(const DiscriminationInputs& in) {
    const double c = in.c();
    const double phi = in.phi();
    const double se2 = in.se_target() * in.se_target();

    const double w = 16.0 * c * (c - 1.0) * (c - 2.0) * (c + 1.0) * (c * c - c + 1.0);
    const double x = phi * se2;
    const double y = c * (c - 1.0) * (2.0 * c * c - 2.0 * c - 1.0);

    const double radicand = checked_radicand(-(w * x * phi) + y * y + w * x, "n_maxima");
    const double numerator = y + std::sqrt(radicand);
    const double denominator = 4.0 * (c - 2.0) * (c + 1.0) * x * (phi - 1.0);
    return checked_root(numerator / denominator, "n_maxima");
}

double n_sonar(const DiscriminationInputs& in) {
    const double c = in.c();
    const double phi = in.phi();
    const double se2 = in.se_target() * in.se_target();

    const double d = 4.0 * se2 * phi * (1.0 - phi);
    const double alpha = (1.0 - c) / (2.0 - c);
    const double beta = c / (1.0 + c);

    const double lead = c * (1.0 - c) * (alpha + beta);
    const double radicand = checked_radicand(
        lead * lead + 4.0 * d * c * (1.0 - c) * (1.0 - (alpha + beta)), "n_sonar");
    return checked_root((lead + std::sqrt(radicand)) / d, "n_sonar");
}

double n_gpt41(const DiscriminationInputs& in) {
    const double c = in.c();
    const double phi = in.phi();
    const double se2 = in.se_target() * in.se_target();

    const double gamma = (1.0 - c) / (2.0 - c) + c / (1.0 + c);

    const double half_lead = c * (1.0 - c) * gamma / 2.0;
    const double radicand = checked_radicand(
        half_lead * half_lead + 4.0 * se2 * phi * (1.0 - phi) * c * (1.0 - c) * (1.0 - gamma),
        "n_gpt41");
    const double numerator = half_lead + std::sqrt(radicand);
    const double denominator = 2.0 * se2 * phi * (1.0 - phi);
    return checked_root(numerator / denominator, "n_gpt41");
}

double n_grok3(const DiscriminationInputs& in) {
    const double c = in.c();
    const double phi = in.phi();
    const double se2 = in.se_target() * in.se_target();

    const double d = 4.0 * se2 * phi * (1.0 - phi);
    const double gamma = (1.0 - c) / (2.0 - c) + c / (1.0 + c);

    const double cc = c * (1.0 - c);
    const double radicand = checked_radicand(cc * gamma * gamma - 4.0 * d * (gamma - 1.0),
                                             "n_grok3");
    return checked_root((std::sqrt(cc) * std::sqrt(radicand) + cc * gamma) / d, "n_grok3");
}

double n_gemini(const DiscriminationInputs& in) {
    const double c = in.c();
    const double phi = in.phi();
    const double se2 = in.se_target() * in.se_target();

    const double alpha = se2 * phi * (1.0 - phi);
    const double beta = (1.0 + 2.0 * c - 2.0 * c * c) / ((2.0 - c) * (1.0 + c));
    const double gamma = c * (1.0 - c);

    const double radicand = checked_radicand(
        gamma * gamma * beta * beta + 16.0 * alpha * gamma * (1.0 - beta), "n_gemini");
    return checked_root((gamma * beta + std::sqrt(radicand)) / (4.0 * alpha), "n_gemini");
}

double n_mathgpt(const DiscriminationInputs& in) {
    const double c = in.c();
    const double phi = in.phi();
    const double se2 = in.se_target() * in.se_target();

    const double delta = (1.0 - c) / (2.0 - c) + c / (1.0 + c);
    const double a = c * (1.0 - c) / (se2 * phi * (1.0 - phi));

    const double radicand =
        checked_radicand(a * a * delta * delta + 16.0 * a * (1.0 - delta), "n_mathgpt");
    const double numerator = a * delta + std::sqrt(radicand);
    // The positive quadratic branch adds two same-sign terms; anything less
    // than a*delta means the wrong branch or a cancellation slipped in.
    if (numerator < a * delta) {
        throw InternalError("n_mathgpt: numerator fell below a*delta");
    }
    return checked_root(numerator / 4.0, "n_mathgpt");
}

double solve_closed_raw(const DiscriminationInputs& in, SolverMethod method) {
    switch (method) {
        case SolverMethod::Mathematica: return n_mathematica(in);
        case SolverMethod::Maxima: return n_maxima(in);
        case SolverMethod::Sonar: return n_sonar(in);
        case SolverMethod::Gpt41: return n_gpt41(in);
        case SolverMethod::Grok3Beta: return n_grok3(in);
        case SolverMethod::Gemini25Pro: return n_gemini(in);
        case SolverMethod::MathGpt: return n_mathgpt(in);
        case SolverMethod::Iterative:
            throw DomainError("method", "solve_closed_raw: iterative is not a closed-form method");
    }
    throw InternalError("solve_closed_raw: unknown SolverMethod");
}

long long ceil_with_snap(double n_raw) {
    const double nearest = std::round(n_raw);
    if (std::abs(n_raw - nearest) <= kIntegerSnapTol) {
        return static_cast<long long>(nearest);
    }
    return static_cast<long long>(std::ceil(n_raw));
}

SampleSizeResult solve(const DiscriminationInputs& in, SolverMethod method) {
    if (!is_closed_form(method)) {
        throw DomainError("method",
                          "solve: iterative search is handled by n_iterative, not solve()");
    }
    const double n_raw = solve_closed_raw(in, method);
    return SampleSizeResult{n_raw, ceil_with_snap(n_raw), method, in};
}

}  // namespace cstatsize
