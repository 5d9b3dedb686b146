// SPDX-License-Identifier: Apache-2.0

#include "mimocap/outage.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mimocap/special_functions.hpp"

namespace mimocap {

namespace {

double bound_p1_at(const AntennaPair& pair, double lambda0) {
    const int m = pair.m();
    const int n = pair.n();
    // [Gamma(n+m-1) - Gamma(n+m-1, l0)] equals the lower incomplete gamma,
    // evaluated through the regularized form so small l0 loses no digits.
    double s = n + m - 1;
    double lower = gamma_lower_regularized(s, lambda0);
    return lower * std::exp(ln_gamma(s) - ln_gamma(n) - ln_gamma(m));
}

double bound_p2_at(int m, double lambda0) { return -std::expm1(-m * lambda0); }

}  // namespace

double outage_actual(const ChannelConfig& cfg) {
    return lambda_max_cdf(cfg.pair, solve_cutoff(cfg).lambda0);
}

double outage_bound_p1(const ChannelConfig& cfg) {
    return bound_p1_at(cfg.pair, solve_cutoff(cfg).lambda0);
}

double outage_bound_p2(const ChannelConfig& cfg) {
    if (cfg.pair.n_r != cfg.pair.n_t)
        throw std::domain_error("outage_bound_p2: defined for square systems (m == n) only");
    double lambda0 = solve_cutoff(cfg).lambda0;
    double p1 = bound_p1_at(cfg.pair, lambda0);
    double p2 = bound_p2_at(cfg.pair.m(), lambda0);
    return p1 < p2 ? p1 : p2;
}

OutageResult outage_point(const ChannelConfig& cfg) {
    const double lambda0 = solve_cutoff(cfg).lambda0;
    OutageResult result{};
    result.snr_db = cfg.snr_db;
    result.lambda0 = lambda0;
    result.p_actual = lambda_max_cdf(cfg.pair, lambda0);
    result.p_bound1 = bound_p1_at(cfg.pair, lambda0);
    if (cfg.pair.n_r == cfg.pair.n_t) {
        double p2 = bound_p2_at(cfg.pair.m(), lambda0);
        result.p_bound2 = result.p_bound1 < p2 ? result.p_bound1 : p2;
    } else {
        result.p_bound2 = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

}  // namespace mimocap
