#include "hedonet/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hedonet/parallel.hpp"

namespace hedonet {

namespace {

// Euler-Maclaurin tail needs the expansion point far enough out for the
// Bernoulli terms (through B8) to hit ~1e-13 relative error for s <= 8.
constexpr double kEmCutoff = 33.0;

// Natural logs of small integers, grown on demand. The bootstrap refits spend
// most of their time in k^-alpha evaluations over integer k, so ln k is cached
// per thread and alpha-scaled with one exp.
const std::vector<double>& ln_table(std::uint32_t up_to) {
  thread_local std::vector<double> table{0.0, 0.0};  // table[k] = ln k; index 0 unused
  while (table.size() <= up_to) table.push_back(std::log(static_cast<double>(table.size())));
  return table;
}

// sum_{n>=0} (a+n)^-s and d/ds of it, Euler-Maclaurin at point a >= kEmCutoff.
ZetaPair em_tail(double s, double a) {
  const double ln_a = std::log(a);
  const double a_pow = std::exp(-s * ln_a);  // a^-s
  const double inv_a = 1.0 / a;

  const double lead = a_pow * a / (s - 1.0);  // a^(1-s)/(s-1)
  double z = lead + 0.5 * a_pow;
  double dz = -ln_a * lead - lead / (s - 1.0) - 0.5 * ln_a * a_pow;

  // Bernoulli corrections B2k/(2k)! * P(s) * a^(-s-2k+1), P = s(s+1)...(s+2k-2).
  struct Term {
    double coeff;
    int factors;
  };
  constexpr Term kTerms[] = {
      {1.0 / 12.0, 1},        // B2/2!
      {-1.0 / 720.0, 3},      // B4/4!
      {1.0 / 30240.0, 5},     // B6/6!
      {-1.0 / 1209600.0, 7},  // B8/8!
  };
  double a_shift = a_pow * inv_a;  // a^(-s-1)
  for (const Term& t : kTerms) {
    double poly = 1.0, harm = 0.0;
    for (int i = 0; i < t.factors; ++i) {
      poly *= s + i;
      harm += 1.0 / (s + i);
    }
    z += t.coeff * poly * a_shift;
    dz += t.coeff * (poly * harm - poly * ln_a) * a_shift;
    a_shift *= inv_a * inv_a;
  }
  return {z, dz};
}

// Fast path for integer q: direct terms come from the shared log table.
ZetaPair zeta_pair_int(double s, std::uint32_t q) {
  const std::uint32_t start = q;
  const std::uint32_t stop = static_cast<std::uint32_t>(kEmCutoff);
  ZetaPair acc{0.0, 0.0};
  if (start < stop) {
    const auto& ln = ln_table(stop);
    for (std::uint32_t k = start; k < stop; ++k) {
      const double p = std::exp(-s * ln[k]);
      acc.z += p;
      acc.dz -= ln[k] * p;
    }
  }
  const ZetaPair tail = em_tail(s, std::max(static_cast<double>(start), kEmCutoff));
  acc.z += tail.z;
  acc.dz += tail.dz;
  return acc;
}

}  // namespace

ZetaPair hurwitz_zeta_pair(double s, double q) {
  if (!(s > 1.0) || !(q >= 1.0)) throw std::invalid_argument("hurwitz_zeta: need s > 1, q >= 1");
  if (q == std::floor(q) && q <= 4294967295.0)
    return zeta_pair_int(s, static_cast<std::uint32_t>(q));
  ZetaPair acc{0.0, 0.0};
  double x = q;
  while (x < kEmCutoff) {
    const double ln_x = std::log(x);
    const double p = std::exp(-s * ln_x);
    acc.z += p;
    acc.dz -= ln_x * p;
    x += 1.0;
  }
  const ZetaPair tail = em_tail(s, x);
  acc.z += tail.z;
  acc.dz += tail.dz;
  return acc;
}

double hurwitz_zeta(double s, double q) { return hurwitz_zeta_pair(s, q).z; }

namespace {

constexpr double kAlphaLo = 1.01;
constexpr double kAlphaHi = 6.0;

// Root of dL/dalpha for the zeta-normalized tail likelihood
//   L(a) = -n ln zeta(a, k_min) - a * sum(ln k_i),
// which is strictly decreasing in a. Illinois-damped false position; stops at
// |dL/dalpha| < 1e-8 or when the bracket collapses to machine width.
double solve_alpha(double n_tail, double sum_ln, std::uint32_t k_min) {
  const auto deriv = [&](double a) {
    const ZetaPair zp = zeta_pair_int(a, k_min);
    return -n_tail * (zp.dz / zp.z) - sum_ln;
  };
  double lo = kAlphaLo, hi = kAlphaHi;
  double flo = deriv(lo);
  if (flo <= 0.0) return lo;
  double fhi = deriv(hi);
  if (fhi >= 0.0) return hi;

  int side = 0;
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100 && hi - lo > 1e-12; ++iter) {
    x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = deriv(x);
    if (std::fabs(fx) < 1e-8) return x;
    if (fx > 0.0) {
      lo = x;
      flo = fx;
      if (side == 1) fhi *= 0.5;
      side = 1;
    } else {
      hi = x;
      fhi = fx;
      if (side == -1) flo *= 0.5;
      side = -1;
    }
  }
  return x;
}

struct Histogram {
  std::vector<std::uint32_t> values;  // distinct, ascending
  std::vector<std::uint64_t> counts;
};

Histogram histogram_of(std::span<const std::uint32_t> degrees) {
  std::uint32_t max_v = 0;
  for (std::uint32_t k : degrees) max_v = std::max(max_v, k);
  Histogram h;
  if (max_v <= (1u << 22)) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_v) + 1, 0);
    for (std::uint32_t k : degrees) ++counts[k];
    for (std::uint32_t v = 0; v <= max_v; ++v) {
      if (counts[v] > 0) {
        h.values.push_back(v);
        h.counts.push_back(counts[v]);
      }
    }
  } else {
    std::vector<std::uint32_t> sorted(degrees.begin(), degrees.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < sorted.size()) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      h.values.push_back(sorted[i]);
      h.counts.push_back(j - i);
      i = j;
    }
  }
  return h;
}

// KS distance between the tail empirical CDF and the fitted CDF renormalized
// over [k_min, k_max_obs]; both sides reach exactly 1 at the max observed
// degree. The empirical CDF is constant between observed values, so the sup
// is checked at each observed value and just below the next one. One
// Euler-Maclaurin evaluation at the top, then a downward recurrence
//   zeta(a, k) = zeta(a, k+1) + k^-a
// supplies every fitted CDF value in O(k_max - k_min) exps.
double ks_distance(const Histogram& h, std::size_t first, double alpha,
                   std::uint64_t n_tail) {
  const std::size_t n_distinct = h.values.size() - first;
  const std::uint32_t k_max = h.values.back();
  const auto& ln = ln_table(std::max(k_max, static_cast<std::uint32_t>(kEmCutoff)));

  std::vector<double> zeta_above(n_distinct);  // zeta(alpha, values[i] + 1)
  std::vector<double> zeta_at(n_distinct);     // zeta(alpha, values[i])
  double acc = em_tail(alpha, std::max(static_cast<double>(k_max) + 1.0, kEmCutoff)).z;
  if (static_cast<double>(k_max) + 1.0 < kEmCutoff)
    for (std::uint32_t k = static_cast<std::uint32_t>(kEmCutoff) - 1; k > k_max; --k)
      acc += std::exp(-alpha * ln[k]);
  for (std::size_t i = n_distinct; i-- > 0;) {
    const std::uint32_t v = h.values[first + i];
    const std::uint32_t upper = (i + 1 == n_distinct) ? k_max : h.values[first + i + 1] - 1;
    for (std::uint32_t k = upper; k > v; --k) acc += std::exp(-alpha * ln[k]);
    zeta_above[i] = acc;
    acc += std::exp(-alpha * ln[v]);
    zeta_at[i] = acc;
  }
  const double z_lo = acc;  // zeta(alpha, k_min)
  const double mass = z_lo - zeta_above[n_distinct - 1];

  double d = 0.0;
  double s_prev = 0.0;
  std::uint64_t cum = 0;
  for (std::size_t i = 0; i < n_distinct; ++i) {
    cum += h.counts[first + i];
    const double s_here = static_cast<double>(cum) / static_cast<double>(n_tail);
    const double f_before = (z_lo - zeta_at[i]) / mass;    // F(values[i] - 1)
    const double f_here = (z_lo - zeta_above[i]) / mass;   // F(values[i])
    d = std::max(d, std::fabs(f_before - s_prev));
    d = std::max(d, std::fabs(f_here - s_here));
    s_prev = s_here;
  }
  return d;
}

}  // namespace

double fit_alpha(std::span<const std::uint32_t> degrees, std::uint32_t k_min) {
  double n_tail = 0.0;
  double sum_ln = 0.0;
  for (std::uint32_t k : degrees) {
    if (k < k_min) continue;
    n_tail += 1.0;
    sum_ln += std::log(static_cast<double>(k));
  }
  if (n_tail < 2.0) throw std::invalid_argument("fit_alpha: fewer than 2 tail observations");
  return solve_alpha(n_tail, sum_ln, k_min);
}

PowerLawFit fit_discrete_powerlaw(std::span<const std::uint32_t> degrees) {
  if (degrees.empty()) throw std::invalid_argument("fit: empty sample");
  for (std::uint32_t k : degrees)
    if (k == 0) throw std::invalid_argument("fit: degrees must be positive");

  const Histogram h = histogram_of(degrees);
  const std::size_t n_distinct = h.values.size();
  if (n_distinct < 2) throw std::invalid_argument("fit: degenerate sample (single value)");

  // suffix statistics per candidate k_min = h.values[i]
  std::vector<std::uint64_t> n_tail(n_distinct, 0);
  std::vector<double> sum_ln(n_distinct, 0.0);
  {
    std::uint64_t n_acc = 0;
    double ln_acc = 0.0;
    for (std::size_t i = n_distinct; i-- > 0;) {
      n_acc += h.counts[i];
      ln_acc += static_cast<double>(h.counts[i]) * std::log(static_cast<double>(h.values[i]));
      n_tail[i] = n_acc;
      sum_ln[i] = ln_acc;
    }
  }

  // Candidates need >= 2 distinct tail values; prefer n_tail >= 50 so the KS
  // statistic is not noise-dominated, falling back when the sample is small.
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i + 1 < n_distinct; ++i)
    if (n_tail[i] >= 50) candidates.push_back(i);
  if (candidates.empty())
    for (std::size_t i = 0; i + 1 < n_distinct; ++i) candidates.push_back(i);

  PowerLawFit best;
  best.ks_distance = std::numeric_limits<double>::infinity();
  best.n_total = n_tail[0];

  for (const std::size_t i : candidates) {
    const double alpha = solve_alpha(static_cast<double>(n_tail[i]), sum_ln[i], h.values[i]);
    const double d = ks_distance(h, i, alpha, n_tail[i]);
    if (d < best.ks_distance) {
      best.ks_distance = d;
      best.alpha = alpha;
      best.k_min = h.values[i];
      best.n_tail = n_tail[i];
    }
  }
  return best;
}

DiscretePowerLawSampler::DiscretePowerLawSampler(double alpha, std::uint32_t k_min)
    : alpha_(alpha), k_min_(k_min) {
  if (!(alpha > 1.0) || k_min == 0)
    throw std::invalid_argument("sampler: need alpha > 1, k_min >= 1");
  const double z = hurwitz_zeta(alpha, static_cast<double>(k_min));
  constexpr std::size_t kMaxTable = std::size_t{1} << 21;
  long double acc = 0.0L;
  cdf_.reserve(4096);
  for (std::size_t i = 0; i < kMaxTable; ++i) {
    const double k = static_cast<double>(k_min) + static_cast<double>(i);
    acc += static_cast<long double>(std::exp(-alpha * std::log(k)) / z);
    cdf_.push_back(static_cast<double>(acc));
    if (1.0L - acc < 1e-12L) break;
  }
}

std::uint32_t DiscretePowerLawSampler::sample(Rng& rng) const {
  const double u = rng.next_double();
  if (u <= cdf_.back()) {
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return k_min_ + static_cast<std::uint32_t>(it - cdf_.begin());
  }
  // Beyond the table: continuous inverse-CDF approximation of the residual tail.
  const double k_end = static_cast<double>(k_min_) + static_cast<double>(cdf_.size()) - 1.0;
  const double residual = 1.0 - cdf_.back();
  const double v = std::max((1.0 - u) / residual, 1e-300);
  double k = 0.5 + (k_end + 0.5) * std::pow(v, -1.0 / (alpha_ - 1.0));
  if (k > 2147483647.0) k = 2147483647.0;
  const auto ki = static_cast<std::uint32_t>(k);
  return std::max<std::uint32_t>(ki, static_cast<std::uint32_t>(k_end) + 1);
}

GofResult gof_pvalue(const PowerLawFit& fit, std::span<const std::uint32_t> degrees,
                     int n_bootstrap, std::uint64_t seed) {
  if (n_bootstrap < 1) throw std::invalid_argument("gof: n_bootstrap must be >= 1");

  std::vector<std::uint32_t> body;
  body.reserve(degrees.size());
  for (std::uint32_t k : degrees)
    if (k < fit.k_min) body.push_back(k);
  const double p_tail = static_cast<double>(fit.n_tail) / static_cast<double>(fit.n_total);
  const DiscretePowerLawSampler sampler(fit.alpha, fit.k_min);

  std::vector<double> replica_d(static_cast<std::size_t>(n_bootstrap), 0.0);
  parallel_for(static_cast<std::size_t>(n_bootstrap), [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    std::vector<std::uint32_t> sample;
    sample.reserve(fit.n_total);
    for (std::uint64_t j = 0; j < fit.n_total; ++j) {
      if (body.empty() || rng.next_double() < p_tail)
        sample.push_back(sampler.sample(rng));
      else
        sample.push_back(body[rng.uniform_below(body.size())]);
    }
    try {
      replica_d[i] = fit_discrete_powerlaw(sample).ks_distance;
    } catch (const std::invalid_argument&) {
      replica_d[i] = std::numeric_limits<double>::infinity();
    }
  });

  std::uint64_t at_least = 0;
  for (const double d : replica_d)
    if (d >= fit.ks_distance) ++at_least;

  GofResult result;
  result.p_value = static_cast<double>(at_least) / static_cast<double>(n_bootstrap);
  result.n_bootstrap = n_bootstrap;
  result.seed = seed;
  return result;
}

}  // namespace hedonet
