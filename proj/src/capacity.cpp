// SPDX-License-Identifier: Apache-2.0

#include "mimocap/capacity.hpp"

#include <cmath>
#include <stdexcept>

#include "mimocap/numerics.hpp"

namespace mimocap {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void validate_config(const ChannelConfig& cfg) {
    validate(cfg.pair);
    if (!(cfg.power > 0.0)) throw std::domain_error("ChannelConfig: power must be > 0");
}

// Constraint LHS of the cutoff equation, split into two nonnegative
// integrals to avoid subtractive loss:
//   (1/l0) int_{l0}^inf f - int_{l0}^inf f/l.
double cutoff_constraint(const EigenDensity& f, double l0, int n) {
    QuadSpec spec;
    double tail_mass =
        integrate_semi_infinite([&](double l) { return f(l); }, l0, spec, n);
    double tail_inv =
        integrate_semi_infinite([&](double l) { return f(l) / l; }, l0, spec, n);
    return tail_mass / l0 - tail_inv;
}

}  // namespace

ChannelConfig ChannelConfig::from_snr_db(AntennaPair pair, double snr_db) {
    validate(pair);
    double power = pair.m() * std::pow(10.0, snr_db / 10.0);
    return ChannelConfig{pair, power, snr_db};
}

ChannelConfig ChannelConfig::from_power(AntennaPair pair, double power) {
    validate(pair);
    if (!(power > 0.0)) throw std::domain_error("ChannelConfig: power must be > 0");
    double snr_db = 10.0 * std::log10(power / pair.m());
    return ChannelConfig{pair, power, snr_db};
}

WaterfillSolution solve_cutoff(const ChannelConfig& cfg, std::optional<double> hint) {
    validate_config(cfg);
    const EigenDensity f(cfg.pair);
    const int n = cfg.pair.n();
    const double target = cfg.power / cfg.pair.m();
    auto g = [&](double l0) { return cutoff_constraint(f, l0, n) - target; };

    // The constraint decreases monotonically in l0 from +inf to 0.
    double lo = 1e-12;
    double hi = 1.0;
    if (hint && *hint > 0.0) {
        lo = std::max(1e-12, *hint * 0.5);
        hi = *hint * 2.0;
        while (g(lo) < 0.0 && lo > 1e-12) lo = std::max(1e-12, lo * 0.25);
    }
    while (g(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e8) throw ConvergenceError("solve_cutoff: no sign change found", hi, 0.0);
    }

    double l0 = find_root(g, RootSpec{lo, hi, 1e-12, 200});
    return WaterfillSolution{l0, target * l0, g(l0)};
}

RatePoint capacity_csit(const ChannelConfig& cfg) {
    return capacity_csit(cfg, solve_cutoff(cfg));
}

RatePoint capacity_csit(const ChannelConfig& cfg, const WaterfillSolution& wf) {
    validate_config(cfg);
    const EigenDensity f(cfg.pair);
    const int m = cfg.pair.m();
    const int n = cfg.pair.n();
    const double l0 = wf.lambda0;
    double nats = integrate_semi_infinite(
        [&](double l) { return std::log(l / l0) * f(l); }, l0, QuadSpec{}, n);
    return RatePoint{cfg.snr_db, m * nats / kLn2, Scheme::csit_waterfill, Method::numerical};
}

namespace {

RatePoint equal_power_capacity(const ChannelConfig& cfg, double divisor, Scheme scheme) {
    validate_config(cfg);
    const EigenDensity f(cfg.pair);
    const int m = cfg.pair.m();
    const int n = cfg.pair.n();
    const double gain = cfg.power / divisor;
    double nats = integrate_semi_infinite(
        [&](double l) { return std::log1p(gain * l) * f(l); }, 0.0, QuadSpec{}, n);
    return RatePoint{cfg.snr_db, m * nats / kLn2, scheme, Method::numerical};
}

}  // namespace

RatePoint capacity_no_csit(const ChannelConfig& cfg) {
    return equal_power_capacity(cfg, cfg.pair.n_t, Scheme::no_csit);
}

RatePoint capacity_high_snr_approx(const ChannelConfig& cfg) {
    return equal_power_capacity(cfg, cfg.pair.m(), Scheme::high_snr_approx);
}

RatePoint onoff_rate(const ChannelConfig& cfg) {
    return onoff_rate(cfg, solve_cutoff(cfg));
}

RatePoint onoff_rate(const ChannelConfig& cfg, const WaterfillSolution& wf) {
    validate_config(cfg);
    const double tau = wf.lambda0;
    const double q = 1.0 - lambda_max_cdf(cfg.pair, tau);
    if (q < 1e-300)
        throw std::runtime_error("onoff_rate: on-probability underflowed; no usable tail");
    const double p0 = cfg.power / q;
    const int m = cfg.pair.m();
    const int n = cfg.pair.n();
    double nats = integrate_semi_infinite(
        [&](double l) {
            return std::log1p(kOnoffSnrScale * l * p0) * lambda_max_pdf(cfg.pair, l);
        },
        tau, QuadSpec{}, n + m);
    return RatePoint{cfg.snr_db, nats / kLn2, Scheme::onoff, Method::numerical};
}

std::vector<SweepEntry> sweep(const std::vector<ChannelConfig>& cfgs, Scheme scheme) {
    if (cfgs.empty()) throw std::invalid_argument("sweep: empty config list");
    std::vector<SweepEntry> out;
    out.reserve(cfgs.size());
    std::optional<double> last_l0;
    for (const auto& cfg : cfgs) {
        SweepEntry entry{cfg, std::nullopt, ""};
        try {
            switch (scheme) {
                case Scheme::csit_waterfill: {
                    auto wf = solve_cutoff(cfg, last_l0);
                    last_l0 = wf.lambda0;
                    entry.point = capacity_csit(cfg, wf);
                    break;
                }
                case Scheme::no_csit:
                    entry.point = capacity_no_csit(cfg);
                    break;
                case Scheme::high_snr_approx:
                    entry.point = capacity_high_snr_approx(cfg);
                    break;
                case Scheme::onoff: {
                    auto wf = solve_cutoff(cfg, last_l0);
                    last_l0 = wf.lambda0;
                    entry.point = onoff_rate(cfg, wf);
                    break;
                }
            }
        } catch (const std::exception& ex) {
            entry.error = ex.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace mimocap
