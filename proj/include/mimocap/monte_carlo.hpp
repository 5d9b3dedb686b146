// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte Carlo estimation: sample IID complex Gaussian channel
// matrices, extract Gram-matrix eigenvalues, and average per-draw
// functionals. Deterministic for a fixed (seed, workers) pair: each worker
// owns a substream derived from the seed and worker index, and partial
// results are reduced in worker order.

#ifndef MIMOCAP_MONTE_CARLO_HPP
#define MIMOCAP_MONTE_CARLO_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "mimocap/capacity.hpp"
#include "mimocap/spectrum.hpp"

namespace mimocap {

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    // Fixed logical default rather than hardware concurrency, so results
    // for a given (seed, workers) do not depend on the machine.
    int workers = 4;
};

struct McEstimate {
    double mean;
    double std_error;  // sample std / sqrt(samples)
    std::uint64_t samples;
    std::uint64_t seed;
};

// Substream seed for one worker, derived by iterating a splitmix64 chain.
std::uint64_t worker_stream_seed(std::uint64_t seed, int worker);

// Stream of eigenvalue draws for one substream. Each next() samples an
// N_R x N_T matrix with CN(0,1) entries (real and imaginary parts
// independent N(0, 1/2)), forms the smaller m x m Gram matrix, and returns
// its eigenvalues in ascending order, clamped at 0. Draws on which the
// eigensolver fails are resampled and counted.
class EigenvalueSampler {
  public:
    EigenvalueSampler(AntennaPair pair, std::uint64_t stream_seed);
    ~EigenvalueSampler();

    EigenvalueSampler(EigenvalueSampler&&) noexcept;
    EigenvalueSampler& operator=(EigenvalueSampler&&) noexcept;

    const std::vector<double>& next();

    std::uint64_t resample_count() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Per-draw functional of the ascending eigenvalue vector.
using DrawFunctional = std::function<double(const std::vector<double>&)>;

// Estimates several functionals from one shared stream of eigenvalue
// draws. This is the workhorse behind the single-quantity estimators and
// lets table generation reuse the expensive eigendecompositions across
// SNR points and schemes.
std::vector<McEstimate> mc_batch(AntennaPair pair, const McConfig& mc,
                                 const std::vector<DrawFunctional>& fns);

// Waterfilling rate per draw: sum over eigenvalues above the analytic
// cutoff of log2(lambda / lambda0).
McEstimate mc_capacity_csit(const ChannelConfig& cfg, const McConfig& mc);

// Equal-power rate per draw: sum of log2(1 + lambda P / N_T).
McEstimate mc_capacity_no_csit(const ChannelConfig& cfg, const McConfig& mc);

// On-off rate per draw: log2(1 + lambda_max P0) when lambda_max exceeds
// the cutoff, else 0. P0 comes from the analytic tail mass; the per-draw
// rate is unscaled (see kOnoffSnrScale).
McEstimate mc_onoff_rate(const ChannelConfig& cfg, const McConfig& mc);

// Fraction of draws with lambda_max below the cutoff.
McEstimate mc_outage(const ChannelConfig& cfg, const McConfig& mc);

}  // namespace mimocap

#endif
