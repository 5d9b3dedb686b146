// SPDX-License-Identifier: Apache-2.0

#include "mimocap/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mimocap {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Regularized lower incomplete gamma by power series, for x < s + 1.
double gamma_p_series(double s, double x) {
    double ap = s;
    double sum = 1.0 / s;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Regularized upper incomplete gamma by modified Lentz continued fraction,
// for x >= s + 1.
double gamma_q_contfrac(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

bool is_nonneg_integer(double s, int& out) {
    double r = std::round(s);
    if (r < 0.0 || r > 170.0 || std::fabs(s - r) > 1e-12 * (1.0 + std::fabs(s))) return false;
    out = static_cast<int>(r);
    return true;
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: requires x > 0");
    return std::lgamma(x);
}

double ln_factorial(int n) {
    if (n < 0) throw std::domain_error("ln_factorial: requires n >= 0");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double laguerre_assoc(LaguerreParams params, double x) {
    if (params.k < 0) throw std::domain_error("laguerre_assoc: order k must be >= 0");
    if (params.a < 0) throw std::domain_error("laguerre_assoc: superscript a must be >= 0");
    if (x < 0.0) throw std::domain_error("laguerre_assoc: requires x >= 0");
    const double a = params.a;
    double lkm1 = 1.0;  // L_0
    if (params.k == 0) return lkm1;
    double lk = 1.0 + a - x;  // L_1
    for (int k = 1; k < params.k; ++k) {
        double lkp1 = ((2.0 * k + 1.0 + a - x) * lk - (k + a) * lkm1) / (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}

double gamma_upper(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("gamma_upper: requires s > 0");
    if (x < 0.0) throw std::domain_error("gamma_upper: requires x >= 0");
    if (x == 0.0) return std::exp(std::lgamma(s));

    int si = 0;
    if (is_nonneg_integer(s, si)) {
        // (s-1)! e^-x sum_{j=0}^{s-1} x^j / j!
        if (x <= 700.0) {
            double term = 1.0;
            double sum = 1.0;
            for (int j = 1; j < si; ++j) {
                term *= x / j;
                sum += term;
            }
            return std::exp(std::lgamma(s) - x + std::log(sum));
        }
        // log-domain sum for extreme x, where e^-x underflows
        double lnx = std::log(x);
        double lnsum = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < si; ++j) {
            double lnterm = j * lnx - std::lgamma(j + 1.0);
            double hi = std::fmax(lnsum, lnterm);
            lnsum = hi + std::log(std::exp(lnsum - hi) + std::exp(lnterm - hi));
        }
        return std::exp(std::lgamma(s) - x + lnsum);
    }

    double q = (x < s + 1.0) ? 1.0 - gamma_p_series(s, x) : gamma_q_contfrac(s, x);
    return q * std::exp(std::lgamma(s));
}

double gamma_lower_regularized(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("gamma_lower_regularized: requires s > 0");
    if (x < 0.0) throw std::domain_error("gamma_lower_regularized: requires x >= 0");
    if (x == 0.0) return 0.0;
    double p = (x < s + 1.0) ? gamma_p_series(s, x) : 1.0 - gamma_q_contfrac(s, x);
    if (p < 0.0) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

}  // namespace mimocap
