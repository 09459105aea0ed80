#pragma once

#include "cstatsize/core.hpp"

namespace cstatsize {

// The seven closed-form solutions for the sample size N at which the
// C-statistic's standard error reaches se_target. All are roots of the same
// quadratic and agree to floating rounding; each is transcribed from the
// form produced by the tool it is named after, deliberately without shared
// sub-expressions, so that agreement between them is a meaningful
// differential check.
//
// Every function returns the raw (possibly fractional) root, > 0.

double n_mathematica(const DiscriminationInputs& in);
double n_maxima(const DiscriminationInputs& in);
double n_sonar(const DiscriminationInputs& in);
double n_gpt41(const DiscriminationInputs& in);
double n_grok3(const DiscriminationInputs& in);
double n_gemini(const DiscriminationInputs& in);

// Recommended default: the clearest of the seven (two intermediates and a
// plain quadratic root).
double n_mathgpt(const DiscriminationInputs& in);

// Diagnostic only: the negative root that the positivity requirement
// discards. Not reachable through solve().
double n_mathematica_rejected_root(const DiscriminationInputs& in);

// Raw root for any closed-form method.
double solve_closed_raw(const DiscriminationInputs& in, SolverMethod method);

// Roots within this distance of an integer are treated as that integer
// before rounding up, so representable-root boundaries cannot produce
// ceil(k + 1e-15) == k + 1 artifacts.
inline constexpr double kIntegerSnapTol = 1e-9;

long long ceil_with_snap(double n_raw);

// Dispatch + rounding rule. Closed-form methods only; the iterative search
// lives in oracle.hpp.
SampleSizeResult solve(const DiscriminationInputs& in, SolverMethod method);

}  // namespace cstatsize
