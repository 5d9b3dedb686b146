// SPDX-License-Identifier: Apache-2.0
//
// Eigenvalue distributions of the Gram matrix H H^dagger of an IID
// complex-Gaussian channel matrix: the marginal density of an unordered
// eigenvalue and the distribution of the largest eigenvalue.

#ifndef MIMOCAP_SPECTRUM_HPP
#define MIMOCAP_SPECTRUM_HPP

#include <vector>

namespace mimocap {

struct AntennaPair {
    int n_r;
    int n_t;

    int m() const { return n_r < n_t ? n_r : n_t; }
    int n() const { return n_r < n_t ? n_t : n_r; }
};

// Throws std::domain_error unless n_r >= 1 and n_t >= 1.
void validate(const AntennaPair& pair);

// Marginal density of a uniformly chosen eigenvalue of H H^dagger,
//   f(x) = (e^-x x^(n-m) / m) sum_{k=0}^{m-1} k!/(k+n-m)! [L_k^(n-m)(x)]^2.
// Normalization constants are precomputed in the log domain at
// construction; evaluation is pure and thread-safe.
class EigenDensity {
  public:
    explicit EigenDensity(AntennaPair pair);

    double operator()(double lambda) const;

    const AntennaPair& pair() const { return pair_; }

  private:
    AntennaPair pair_;
    std::vector<double> ln_norm_;  // ln(k! / (k+n-m)!) for k = 0..m-1
};

inline double eigen_pdf(const EigenDensity& density, double lambda) {
    return density(lambda);
}

// CDF of the largest eigenvalue: determinant of the m x m matrix with
// entries gamma_lower(n - m + i + j - 1, x), divided by
// prod_{k=1}^{m} (n-k)! (m-k)!.
double lambda_max_cdf(AntennaPair pair, double x);

// Density of the largest eigenvalue, the analytic derivative of
// lambda_max_cdf: a sum over rows of determinants in which one row of
// incomplete-gamma entries is replaced by x^(s-1) e^-x.
double lambda_max_pdf(AntennaPair pair, double x);

}  // namespace mimocap

#endif
