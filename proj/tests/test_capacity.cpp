// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <doctest.h>

#include "mimocap/capacity.hpp"
#include "mimocap/numerics.hpp"
#include "mimocap/spectrum.hpp"

using namespace mimocap;

namespace {

// Trapezoid-grid reimplementation of the cutoff equation and capacity,
// deliberately sharing nothing with the library quadrature.
struct TrapezoidOracle {
    AntennaPair pair;
    double upper = 60.0;
    double step = 1e-3;

    double constraint(double l0, const EigenDensity& f) const {
        double acc = 0.0;
        for (double x = l0; x < upper; x += step) {
            double a = (1.0 / l0 - 1.0 / x) * f(x);
            double xb = x + step;
            double b = (1.0 / l0 - 1.0 / xb) * f(xb);
            acc += 0.5 * (a + b) * step;
        }
        return acc;
    }

    double cutoff(double target) const {
        EigenDensity f(pair);
        double lo = 1e-6, hi = 8.0;
        for (int i = 0; i < 80; ++i) {
            double mid = 0.5 * (lo + hi);
            if (constraint(mid, f) > target)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    double capacity(double l0) const {
        EigenDensity f(pair);
        double acc = 0.0;
        for (double x = l0; x < upper; x += step) {
            double a = std::log(x / l0) * f(x);
            double xb = x + step;
            double b = std::log(xb / l0) * f(xb);
            acc += 0.5 * (a + b) * step;
        }
        return pair.m() * acc / std::log(2.0);
    }
};

}  // namespace

TEST_SUITE("capacity") {

TEST_CASE("snr convention fixes total power") {
    auto c = ChannelConfig::from_snr_db({4, 6}, 0.0);
    CHECK(c.power == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(ChannelConfig::from_snr_db({4, 4}, 10.0).power ==
          doctest::Approx(40.0).epsilon(1e-14));
    CHECK(ChannelConfig::from_snr_db({2, 8}, -10.0).power ==
          doctest::Approx(0.2).epsilon(1e-14));
    auto p = ChannelConfig::from_power({4, 6}, 4.0);
    CHECK(p.snr_db == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("cutoff solves the average power constraint") {
    auto cfg = ChannelConfig::from_snr_db({4, 4}, 0.0);
    auto wf = solve_cutoff(cfg);
    CHECK(wf.lambda0 == doctest::Approx(0.5856956743).epsilon(1e-7));
    CHECK(wf.gamma0 == doctest::Approx(wf.lambda0 * cfg.power / 4.0).epsilon(1e-13));
    CHECK(std::fabs(wf.residual) < 1e-9);

    EigenDensity f(cfg.pair);
    double lhs = integrate_semi_infinite(
        [&](double l) { return (1.0 / wf.lambda0 - 1.0 / l) * f(l); }, wf.lambda0,
        QuadSpec{}, cfg.pair.n());
    CHECK(lhs == doctest::Approx(cfg.power / cfg.pair.m()).epsilon(1e-8));
}

TEST_CASE("cutoff and capacity agree with a trapezoid grid oracle") {
    auto cfg = ChannelConfig::from_snr_db({2, 3}, 5.0);
    TrapezoidOracle oracle{cfg.pair};
    double l0_oracle = oracle.cutoff(cfg.power / cfg.pair.m());
    auto wf = solve_cutoff(cfg);
    CHECK(wf.lambda0 == doctest::Approx(l0_oracle).epsilon(1e-5));
    CHECK(capacity_csit(cfg, wf).value ==
          doctest::Approx(oracle.capacity(wf.lambda0)).epsilon(1e-5));
}

TEST_CASE("waterfilling capacity reproduces reference cells") {
    CHECK(capacity_csit(ChannelConfig::from_snr_db({4, 4}, 0.0)).value ==
          doctest::Approx(8.141885).epsilon(7e-5));
    CHECK(capacity_csit(ChannelConfig::from_snr_db({4, 12}, 10.0)).value ==
          doctest::Approx(26.613163).epsilon(2e-5));
    CHECK(capacity_csit(ChannelConfig::from_snr_db({4, 10}, -15.0)).value ==
          doctest::Approx(1.949609).epsilon(3e-4));
}

TEST_CASE("equal power capacity reproduces reference cells") {
    CHECK(capacity_no_csit(ChannelConfig::from_snr_db({4, 4}, 0.0)).value ==
          doctest::Approx(7.360570).epsilon(7e-5));
    CHECK(capacity_no_csit(ChannelConfig::from_snr_db({12, 4}, 10.0)).value ==
          doctest::Approx(26.612935).epsilon(2e-5));
    CHECK(capacity_no_csit(ChannelConfig::from_snr_db({4, 12}, -15.0)).value ==
          doctest::Approx(0.675479).epsilon(7e-4));
}

TEST_CASE("on-off rate reproduces reference cells") {
    auto r0 = onoff_rate(ChannelConfig::from_snr_db({4, 4}, 0.0));
    CHECK(r0.value == doctest::Approx(5.264009331).epsilon(2e-5));
    auto r40 = onoff_rate(ChannelConfig::from_snr_db({4, 4}, -40.0));
    CHECK(std::fabs(r40.value - 0.008820817) < 5e-4);
    auto r12 = onoff_rate(ChannelConfig::from_snr_db({4, 12}, -40.0));
    CHECK(std::fabs(r12.value - 0.015626368) < 5e-4);
}

TEST_CASE("on-off approaches waterfilling at vanishing snr") {
    auto cfg = ChannelConfig::from_snr_db({4, 4}, -40.0);
    auto wf = solve_cutoff(cfg);
    double onoff = onoff_rate(cfg, wf).value;
    double water = capacity_csit(cfg, wf).value;
    CHECK(onoff <= water);
    CHECK(onoff / water > 0.96);
}

TEST_CASE("high snr approximation collapses orientation") {
    auto approx = capacity_high_snr_approx(ChannelConfig::from_snr_db({4, 12}, 10.0));
    auto swapped = capacity_no_csit(ChannelConfig::from_snr_db({12, 4}, 10.0));
    CHECK(approx.value == doctest::Approx(swapped.value).epsilon(1e-10));
    auto water = capacity_csit(ChannelConfig::from_snr_db({4, 12}, 10.0));
    CHECK(std::fabs(approx.value - water.value) < 0.01);
}

TEST_CASE("cutoff decreases and gamma0 increases with snr") {
    double prev_l0 = 1e300, prev_g0 = 0.0;
    std::optional<double> hint;
    for (double s : {-20.0, -10.0, 0.0, 10.0, 20.0, 30.0}) {
        auto wf = solve_cutoff(ChannelConfig::from_snr_db({4, 6}, s), hint);
        hint = wf.lambda0;
        CHECK(wf.lambda0 < prev_l0);
        CHECK(wf.gamma0 > prev_g0);
        prev_l0 = wf.lambda0;
        prev_g0 = wf.gamma0;
    }
}

TEST_CASE("capacity is symmetric in the antenna pair") {
    for (double s : {-10.0, 0.0, 15.0}) {
        double fwd = capacity_csit(ChannelConfig::from_snr_db({2, 5}, s)).value;
        double rev = capacity_csit(ChannelConfig::from_snr_db({5, 2}, s)).value;
        CHECK(fwd == doctest::Approx(rev).epsilon(1e-10));
    }
}

TEST_CASE("tiny power keeps every rate ordered and positive") {
    auto cfg = ChannelConfig::from_snr_db({4, 4}, -60.0);
    auto wf = solve_cutoff(cfg);
    double water = capacity_csit(cfg, wf).value;
    double onoff = onoff_rate(cfg, wf).value;
    double equal = capacity_no_csit(cfg).value;
    CHECK(water > 0.0);
    CHECK(onoff > 0.0);
    CHECK(equal > 0.0);
    CHECK(onoff <= water);
    CHECK(equal <= water);
}

TEST_CASE("sweep chains hints and captures per-point failures") {
    std::vector<ChannelConfig> cfgs;
    for (double s : {-10.0, -5.0, 0.0, 5.0}) {
        cfgs.push_back(ChannelConfig::from_snr_db({4, 4}, s));
    }
    auto entries = sweep(cfgs, Scheme::csit_waterfill);
    REQUIRE(entries.size() == cfgs.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        REQUIRE(entries[i].point.has_value());
        CHECK(entries[i].point->value ==
              doctest::Approx(capacity_csit(cfgs[i]).value).epsilon(1e-9));
    }

    auto onoff_entries = sweep(cfgs, Scheme::onoff);
    for (std::size_t i = 0; i < onoff_entries.size(); ++i) {
        REQUIRE(onoff_entries[i].point.has_value());
        CHECK(onoff_entries[i].point->value ==
              doctest::Approx(onoff_rate(cfgs[i]).value).epsilon(1e-9));
    }

    std::vector<ChannelConfig> bad = cfgs;
    bad[1].pair = {0, 4};
    auto mixed = sweep(bad, Scheme::no_csit);
    CHECK(mixed[0].point.has_value());
    CHECK_FALSE(mixed[1].point.has_value());
    CHECK_FALSE(mixed[1].error.empty());
    CHECK(mixed[2].point.has_value());
}

}  // TEST_SUITE
