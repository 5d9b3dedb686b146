// SPDX-License-Identifier: Apache-2.0

#include "mimocap/monte_carlo.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>

namespace mimocap {

namespace {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Box-Muller on 53-bit uniforms; kept in-repo so streams are identical
// across standard library implementations.
class GaussianPairSource {
  public:
    explicit GaussianPairSource(std::uint64_t seed) : eng_(seed) {}

    void next_pair(double& z0, double& z1) {
        double u1 = ((eng_() >> 11) + 1) * 0x1.0p-53;  // in (0, 1]
        double u2 = (eng_() >> 11) * 0x1.0p-53;        // in [0, 1)
        double r = std::sqrt(-2.0 * std::log(u1));
        double angle = 6.283185307179586476925286766559 * u2;
        z0 = r * std::cos(angle);
        z1 = r * std::sin(angle);
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace

std::uint64_t worker_stream_seed(std::uint64_t seed, int worker) {
    std::uint64_t state = seed;
    std::uint64_t out = 0;
    for (int i = 0; i <= worker; ++i) out = splitmix64_next(state);
    return out;
}

struct EigenvalueSampler::Impl {
    int n_r;
    int n_t;
    int m;
    GaussianPairSource gauss;
    Eigen::MatrixXcd h;
    Eigen::MatrixXcd gram;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    std::vector<double> eigenvalues;
    std::uint64_t resamples = 0;

    Impl(AntennaPair pair, std::uint64_t stream_seed)
        : n_r(pair.n_r),
          n_t(pair.n_t),
          m(pair.m()),
          gauss(stream_seed),
          h(pair.n_r, pair.n_t),
          gram(m, m),
          eigenvalues(m) {}

    const std::vector<double>& next() {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        for (;;) {
            for (int c = 0; c < n_t; ++c) {
                for (int r = 0; r < n_r; ++r) {
                    double z0, z1;
                    gauss.next_pair(z0, z1);
                    h(r, c) = std::complex<double>(z0 * inv_sqrt2, z1 * inv_sqrt2);
                }
            }
            if (n_r <= n_t)
                gram.noalias() = h * h.adjoint();
            else
                gram.noalias() = h.adjoint() * h;
            gram = 0.5 * (gram + gram.adjoint()).eval();
            solver.compute(gram, Eigen::EigenvaluesOnly);
            if (solver.info() == Eigen::Success) break;
            ++resamples;
        }
        const auto& ev = solver.eigenvalues();
        for (int i = 0; i < m; ++i) eigenvalues[i] = ev(i) < 0.0 ? 0.0 : ev(i);
        return eigenvalues;
    }
};

EigenvalueSampler::EigenvalueSampler(AntennaPair pair, std::uint64_t stream_seed)
    : impl_(std::make_unique<Impl>(pair, stream_seed)) {
    validate(pair);
}

EigenvalueSampler::~EigenvalueSampler() = default;
EigenvalueSampler::EigenvalueSampler(EigenvalueSampler&&) noexcept = default;
EigenvalueSampler& EigenvalueSampler::operator=(EigenvalueSampler&&) noexcept = default;

const std::vector<double>& EigenvalueSampler::next() { return impl_->next(); }

std::uint64_t EigenvalueSampler::resample_count() const { return impl_->resamples; }

namespace {

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
};

}  // namespace

std::vector<McEstimate> mc_batch(AntennaPair pair, const McConfig& mc,
                                 const std::vector<DrawFunctional>& fns) {
    validate(pair);
    if (mc.samples < 1) throw std::invalid_argument("mc_batch: samples must be >= 1");
    if (mc.workers < 1) throw std::invalid_argument("mc_batch: workers must be >= 1");
    const int workers = static_cast<int>(std::min<std::uint64_t>(mc.workers, mc.samples));
    const std::size_t nf = fns.size();

    std::vector<std::vector<Accumulator>> partial(workers, std::vector<Accumulator>(nf));
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t base = mc.samples / workers;
    const std::uint64_t extra = mc.samples % workers;

    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w]() {
            try {
                std::uint64_t count = base + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
                EigenvalueSampler sampler(pair, worker_stream_seed(mc.seed, w));
                auto& acc = partial[w];
                for (std::uint64_t i = 0; i < count; ++i) {
                    const auto& eigs = sampler.next();
                    for (std::size_t k = 0; k < nf; ++k) {
                        double v = fns[k](eigs);
                        acc[k].sum += v;
                        acc[k].sum_sq += v * v;
                    }
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<McEstimate> out(nf);
    const double n = static_cast<double>(mc.samples);
    for (std::size_t k = 0; k < nf; ++k) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int w = 0; w < workers; ++w) {  // fixed reduction order
            sum += partial[w][k].sum;
            sum_sq += partial[w][k].sum_sq;
        }
        double mean = sum / n;
        double var = 0.0;
        if (mc.samples > 1) {
            var = (sum_sq - sum * sum / n) / (n - 1.0);
            if (var < 0.0) var = 0.0;
        }
        out[k] = McEstimate{mean, std::sqrt(var / n), mc.samples, mc.seed};
    }
    return out;
}

namespace {

constexpr double kLn2 = 0.6931471805599453;

}  // namespace

McEstimate mc_capacity_csit(const ChannelConfig& cfg, const McConfig& mc) {
    const double l0 = solve_cutoff(cfg).lambda0;
    DrawFunctional fn = [l0](const std::vector<double>& eigs) {
        double nats = 0.0;
        for (double l : eigs)
            if (l > l0) nats += std::log(l / l0);
        return nats / kLn2;
    };
    return mc_batch(cfg.pair, mc, {fn})[0];
}

McEstimate mc_capacity_no_csit(const ChannelConfig& cfg, const McConfig& mc) {
    const double gain = cfg.power / cfg.pair.n_t;
    DrawFunctional fn = [gain](const std::vector<double>& eigs) {
        double nats = 0.0;
        for (double l : eigs) nats += std::log1p(gain * l);
        return nats / kLn2;
    };
    return mc_batch(cfg.pair, mc, {fn})[0];
}

McEstimate mc_onoff_rate(const ChannelConfig& cfg, const McConfig& mc) {
    const double tau = solve_cutoff(cfg).lambda0;
    const double q = 1.0 - lambda_max_cdf(cfg.pair, tau);
    if (q < 1e-300)
        throw std::runtime_error("mc_onoff_rate: on-probability underflowed; no usable tail");
    const double p0 = cfg.power / q;
    DrawFunctional fn = [tau, p0](const std::vector<double>& eigs) {
        double lmax = eigs.back();
        return lmax > tau ? std::log1p(lmax * p0) / kLn2 : 0.0;
    };
    return mc_batch(cfg.pair, mc, {fn})[0];
}

McEstimate mc_outage(const ChannelConfig& cfg, const McConfig& mc) {
    const double l0 = solve_cutoff(cfg).lambda0;
    DrawFunctional fn = [l0](const std::vector<double>& eigs) {
        return eigs.back() < l0 ? 1.0 : 0.0;
    };
    return mc_batch(cfg.pair, mc, {fn})[0];
}

}  // namespace mimocap
