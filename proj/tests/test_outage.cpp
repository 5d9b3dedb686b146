// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <doctest.h>

#include "mimocap/capacity.hpp"
#include "mimocap/monte_carlo.hpp"
#include "mimocap/outage.hpp"
#include "mimocap/spectrum.hpp"

using namespace mimocap;

namespace {

// Finite-sum form of the first bound, built from scratch with tgamma only.
double p1_reference(int n_r, int n_t, double l0) {
    int m = std::min(n_r, n_t), n = std::max(n_r, n_t);
    int order = n + m - 1;
    double tail = 0.0;  // Gamma(order, l0) / (order-1)!
    double term = 1.0;
    for (int j = 0; j < order; ++j) {
        if (j > 0) term *= l0 / j;
        tail += term;
    }
    tail *= std::exp(-l0);
    double full = std::tgamma(double(order));
    return full * (1.0 - tail) / (std::tgamma(double(n)) * std::tgamma(double(m)));
}

}  // namespace

TEST_SUITE("outage") {

TEST_CASE("single stream outage is the chi-square cdf") {
    auto cfg = ChannelConfig::from_snr_db({1, 1}, 0.0);
    auto o = outage_point(cfg);
    CHECK(o.p_actual == doctest::Approx(-std::expm1(-o.lambda0)).epsilon(1e-12));
}

TEST_CASE("first bound matches its finite sum form") {
    for (auto [nr, nt] : std::vector<std::pair<int, int>>{{2, 4}, {2, 2}, {3, 5}, {4, 4}}) {
        for (double s : {-5.0, 0.0, 10.0}) {
            auto cfg = ChannelConfig::from_snr_db({nr, nt}, s);
            auto o = outage_point(cfg);
            CHECK(o.p_bound1 ==
                  doctest::Approx(p1_reference(nr, nt, o.lambda0)).epsilon(1e-10));
        }
    }
}

TEST_CASE("first bound saturates at a combinatorial constant") {
    // As snr drops, lambda0 grows and the bound approaches
    // Gamma(n+m-1) / (Gamma(n) Gamma(m)); for a 2x2 system that is 2.
    double p1 = outage_bound_p1(ChannelConfig::from_snr_db({2, 2}, -100.0));
    CHECK(p1 == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(p1 <= 2.0 + 1e-12);
}

TEST_CASE("second bound is the minimum and only exists for square systems") {
    auto cfg = ChannelConfig::from_snr_db({3, 3}, 5.0);
    auto o = outage_point(cfg);
    double exp_part = -std::expm1(-3.0 * o.lambda0);
    CHECK(o.p_bound2 == doctest::Approx(std::min(o.p_bound1, exp_part)).epsilon(1e-12));
    CHECK(outage_bound_p2(cfg) == doctest::Approx(o.p_bound2).epsilon(1e-12));

    CHECK_THROWS_AS(outage_bound_p2(ChannelConfig::from_snr_db({2, 4}, 5.0)),
                    std::domain_error);
    auto rect = outage_point(ChannelConfig::from_snr_db({2, 4}, 5.0));
    CHECK(std::isnan(rect.p_bound2));
}

TEST_CASE("bounds dominate the actual outage") {
    for (auto [nr, nt] : std::vector<std::pair<int, int>>{{2, 2}, {2, 6}, {3, 3}, {4, 4}}) {
        for (double s : {-10.0, 0.0, 10.0, 25.0}) {
            auto o = outage_point(ChannelConfig::from_snr_db({nr, nt}, s));
            CHECK(o.p_actual >= 0.0);
            CHECK(o.p_actual <= 1.0);
            CHECK(o.p_actual <= o.p_bound1 + 1e-12);
            if (nr == nt) {
                CHECK(o.p_actual <= o.p_bound2 + 1e-12);
                CHECK(o.p_bound2 <= o.p_bound1 + 1e-12);
                CHECK(o.p_bound2 <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("outage decreases with snr") {
    double prev = 2.0;
    for (double s : {-15.0, -5.0, 5.0, 15.0, 25.0}) {
        double p = outage_actual(ChannelConfig::from_snr_db({2, 2}, s));
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("sampled outage frequency agrees with the cdf value") {
    auto cfg = ChannelConfig::from_snr_db({2, 2}, -5.0);
    auto o = outage_point(cfg);
    McConfig mc;
    mc.samples = 100'000;
    mc.seed = 11;
    auto est = mc_outage(cfg, mc);
    double se = std::sqrt(o.p_actual * (1.0 - o.p_actual) / double(mc.samples));
    CHECK(std::fabs(est.mean - o.p_actual) <= 4.0 * se + 1e-9);
}

}  // TEST_SUITE
