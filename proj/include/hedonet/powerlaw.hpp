#ifndef HEDONET_POWERLAW_HPP
#define HEDONET_POWERLAW_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "hedonet/rng.hpp"

namespace hedonet {

// Hurwitz zeta sum_{n>=0} (q+n)^-s and its s-derivative, by direct summation
// with an Euler-Maclaurin tail. Relative error ~1e-12 for s in (1, 8], q >= 1.
struct ZetaPair {
  double z = 0.0;
  double dz = 0.0;  // d/ds
};
ZetaPair hurwitz_zeta_pair(double s, double q);
double hurwitz_zeta(double s, double q);

struct PowerLawFit {
  double alpha = 0.0;        // scaling exponent, in (1.01, 6]
  std::uint32_t k_min = 1;   // lower bound of the scaling region
  double ks_distance = 0.0;  // sup gap between tail empirical CDF and fitted CDF
  std::uint64_t n_tail = 0;
  std::uint64_t n_total = 0;
};

// Clauset-Shalizi-Newman fit for a discrete power law: for each candidate
// k_min among observed degrees, alpha maximizes the zeta-normalized
// log-likelihood over the tail; the reported k_min minimizes the KS distance.
// Candidates are capped so that n_tail >= 50 where the sample allows it.
// Throws std::invalid_argument on empty input or a degenerate (single-value)
// distribution.
PowerLawFit fit_discrete_powerlaw(std::span<const std::uint32_t> degrees);

// Discrete MLE for alpha at a fixed k_min over degrees >= k_min.
double fit_alpha(std::span<const std::uint32_t> degrees, std::uint32_t k_min);

struct GofResult {
  double p_value = 0.0;
  int n_bootstrap = 0;
  std::uint64_t seed = 0;
};

// Semiparametric bootstrap goodness of fit: each replica resamples n_total
// points (fitted tail model with probability n_tail/n_total, else uniform from
// the empirical body) and is refit with a fresh k_min search; p is the
// fraction of replica KS distances >= the observed one.
GofResult gof_pvalue(const PowerLawFit& fit, std::span<const std::uint32_t> degrees,
                     int n_bootstrap, std::uint64_t seed);

// Inverse-CDF sampler for the discrete power law p(k) ~ k^-alpha, k >= k_min.
class DiscretePowerLawSampler {
 public:
  DiscretePowerLawSampler(double alpha, std::uint32_t k_min);
  std::uint32_t sample(Rng& rng) const;

 private:
  double alpha_;
  std::uint32_t k_min_;
  std::vector<double> cdf_;  // P(K <= k_min + i)
};

}  // namespace hedonet

#endif  // HEDONET_POWERLAW_HPP
