// SPDX-License-Identifier: Apache-2.0
//
// Adaptive quadrature on finite and semi-infinite intervals and bracketed
// scalar root finding.

#ifndef MIMOCAP_NUMERICS_HPP
#define MIMOCAP_NUMERICS_HPP

#include <functional>
#include <stdexcept>
#include <string>

namespace mimocap {

struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
};

struct RootSpec {
    double bracket_lo;
    double bracket_hi;
    double rel_tol = 1e-12;
    int max_iter = 200;
};

// Thrown when an iterative routine exhausts its budget; carries the best
// estimate available at that point.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best(best_estimate), error(error_bound) {}

    double best;
    double error;
};

// Adaptive Gauss-Kronrod (7-15) integration of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadSpec& spec = {});

// Integral of f over [lower, inf) for integrands decaying like
// e^-x * polynomial. The tail is truncated at
// T = max(60, scale + 20 sqrt(scale) + lower), where `scale` bounds the
// polynomial degree region of the integrand (callers pass n for
// Wishart-eigenvalue integrands); the truncated remainder is below 1e-14
// for that envelope.
double integrate_semi_infinite(const std::function<double(double)>& f, double lower,
                               const QuadSpec& spec = {}, double scale = 40.0);

// Bracketed root finding, Brent's method. The result never leaves
// [bracket_lo, bracket_hi]. Throws std::invalid_argument when the bracket
// does not straddle a sign change.
double find_root(const std::function<double(double)>& g, const RootSpec& spec);

}  // namespace mimocap

#endif
