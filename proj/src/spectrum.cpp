// SPDX-License-Identifier: Apache-2.0

#include "mimocap/spectrum.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "mimocap/special_functions.hpp"

namespace mimocap {

void validate(const AntennaPair& pair) {
    if (pair.n_r < 1 || pair.n_t < 1)
        throw std::domain_error("AntennaPair: antenna counts must be >= 1");
}

EigenDensity::EigenDensity(AntennaPair pair) : pair_(pair) {
    validate(pair);
    const int m = pair_.m();
    const int a = pair_.n() - m;
    ln_norm_.reserve(m);
    for (int k = 0; k < m; ++k)
        ln_norm_.push_back(ln_factorial(k) - ln_factorial(k + a));
}

double EigenDensity::operator()(double lambda) const {
    if (lambda < 0.0) throw std::domain_error("eigen_pdf: requires lambda >= 0");
    const int m = pair_.m();
    const int a = pair_.n() - m;
    if (lambda == 0.0 && a > 0) return 0.0;

    double sum = 0.0;
    double lprev = 0.0;  // L_{k-1}^a, with L_{-1} = 0 seeding the recurrence
    double lcur = 1.0;   // L_k^a, starting from L_0 = 1
    for (int k = 0; k < m; ++k) {
        if (k > 0) {
            double lnext = ((2.0 * (k - 1) + 1.0 + a - lambda) * lcur - (k - 1 + a) * lprev) / k;
            lprev = lcur;
            lcur = lnext;
        }
        sum += std::exp(ln_norm_[k]) * lcur * lcur;
    }
    double envelope = (lambda == 0.0) ? 1.0 : std::exp(-lambda + a * std::log(lambda));
    return envelope * sum / m;
}

namespace {

double ln_det_normalization(int m, int n) {
    double s = 0.0;
    for (int k = 1; k <= m; ++k) s += ln_factorial(n - k) + ln_factorial(m - k);
    return s;
}

// Entries gamma(n-m+i+j+1, x) for 0-based i, j: the lower incomplete gamma
// evaluated at the 2m-1 distinct orders along the antidiagonals.
Eigen::MatrixXd lower_gamma_matrix(int m, int n, double x) {
    std::vector<double> by_order(2 * m - 1);
    for (int d = 0; d < 2 * m - 1; ++d) {
        double s = n - m + d + 1;
        by_order[d] = gamma_lower_regularized(s, x) * std::exp(ln_gamma(s));
    }
    Eigen::MatrixXd mat(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) mat(i, j) = by_order[i + j];
    return mat;
}

}  // namespace

double lambda_max_cdf(AntennaPair pair, double x) {
    validate(pair);
    if (x < 0.0) throw std::domain_error("lambda_max_cdf: requires x >= 0");
    if (x == 0.0) return 0.0;
    const int m = pair.m();
    const int n = pair.n();
    double det = lower_gamma_matrix(m, n, x).determinant();
    double value = det * std::exp(-ln_det_normalization(m, n));
    if (value < 0.0) return 0.0;
    if (value > 1.0) return 1.0;
    return value;
}

double lambda_max_pdf(AntennaPair pair, double x) {
    validate(pair);
    if (x <= 0.0) throw std::domain_error("lambda_max_pdf: requires x > 0");
    const int m = pair.m();
    const int n = pair.n();
    const Eigen::MatrixXd base = lower_gamma_matrix(m, n, x);
    const double lnx = std::log(x);

    // d/dx det = sum over rows of the determinant with that row replaced by
    // the entrywise derivative x^(s-1) e^-x.
    double sum = 0.0;
    Eigen::MatrixXd work(m, m);
    for (int r = 0; r < m; ++r) {
        work = base;
        for (int j = 0; j < m; ++j) {
            double s = n - m + r + j + 1;
            work(r, j) = std::exp((s - 1.0) * lnx - x);
        }
        sum += work.determinant();
    }
    double value = sum * std::exp(-ln_det_normalization(m, n));
    return value < 0.0 ? 0.0 : value;
}

}  // namespace mimocap
