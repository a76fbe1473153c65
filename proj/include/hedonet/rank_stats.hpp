#ifndef HEDONET_RANK_STATS_HPP
#define HEDONET_RANK_STATS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hedonet {

// Product-moment correlation. nullopt when n < 2 or either side has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

// Fractional ranks, 1-based; ties receive the average of the ranks they span.
std::vector<double> average_ranks(std::span<const double> v);

// Spearman rank correlation = Pearson applied to average-tie ranks.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

// Two-sided p-value for a correlation coefficient under the asymptotic
// t-approximation with n - 2 degrees of freedom. Informational only.
std::optional<double> correlation_pvalue(double r, std::size_t n);

// Upper tail P(T > t) of Student's t distribution with df degrees of freedom.
double student_t_sf(double t, double df);

}  // namespace hedonet

#endif  // HEDONET_RANK_STATS_HPP
