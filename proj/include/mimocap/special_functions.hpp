// SPDX-License-Identifier: Apache-2.0
//
// mimocap: capacity and outage computations for IID Rayleigh MIMO channels.

#ifndef MIMOCAP_SPECIAL_FUNCTIONS_HPP
#define MIMOCAP_SPECIAL_FUNCTIONS_HPP

namespace mimocap {

struct LaguerreParams {
    int k;  // polynomial order, k >= 0
    int a;  // integer superscript, a >= 0
};

// Associated Laguerre polynomial L_k^a(x) for x >= 0, evaluated with the
// upward three-term recurrence in k. Throws std::domain_error on invalid
// order, superscript or negative x.
double laguerre_assoc(LaguerreParams params, double x);

// Natural log of the gamma function for x > 0.
double ln_gamma(double x);

// ln(n!) for n >= 0.
double ln_factorial(int n);

// Upper incomplete gamma Gamma(s, x) = int_x^inf t^(s-1) e^(-t) dt for
// s > 0, x >= 0. Integer s uses the exact finite sum
// (s-1)! e^(-x) sum_{j<s} x^j/j!; other s use a series/continued-fraction
// split at x = s + 1.
double gamma_upper(double s, double x);

// Regularized lower incomplete gamma P(s, x) = 1 - Gamma(s, x)/Gamma(s),
// monotone in x with P(s, 0) = 0 and P(s, inf) = 1.
double gamma_lower_regularized(double s, double x);

}  // namespace mimocap

#endif
