// SPDX-License-Identifier: Apache-2.0
//
// Outage probability of the waterfilling system (no eigenmode above the
// cutoff) and its closed-form upper bounds.

#ifndef MIMOCAP_OUTAGE_HPP
#define MIMOCAP_OUTAGE_HPP

#include "mimocap/capacity.hpp"

namespace mimocap {

struct OutageResult {
    double snr_db;
    double lambda0;
    double p_actual;  // F_lambda_max(lambda0), in [0, 1]
    double p_bound1;  // may exceed 1; the bound is not itself a probability
    double p_bound2;  // min(p_bound1, 1 - e^(-m lambda0)); NaN unless m == n
};

// F_lambda_max(lambda0) with lambda0 from solve_cutoff.
double outage_actual(const ChannelConfig& cfg);

// [Gamma(n+m-1) - Gamma(n+m-1, lambda0)] / (Gamma(n) Gamma(m)),
// reported unclamped so plots expose where the bound exceeds 1.
double outage_bound_p1(const ChannelConfig& cfg);

// min(p1, 1 - e^(-m lambda0)); defined for square systems only, throws
// std::domain_error when m != n.
double outage_bound_p2(const ChannelConfig& cfg);

// All of the above at one config (p_bound2 = NaN when m != n), sharing a
// single cutoff solve.
OutageResult outage_point(const ChannelConfig& cfg);

}  // namespace mimocap

#endif
