#ifndef HEDONET_ASSORTATIVITY_HPP
#define HEDONET_ASSORTATIVITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hedonet/hedonometer.hpp"
#include "hedonet/reply_graph.hpp"

namespace hedonet {

// Happiness pairs over exact-distance node pairs. Both orderings of every
// qualifying unordered pair are materialized, so correlations are symmetric.
struct ScoredPairSet {
  int distance = 1;
  std::uint64_t alpha = 1;
  std::uint64_t n_users_qualifying = 0;
  std::vector<double> x;  // first coordinates, ordered pairs
  std::vector<double> y;
};

// Qualifying = user is a node, has a score, and labmt_word_count >= alpha
// (threshold applies to both endpoints). d in {1, 2, 3}.
ScoredPairSet scored_pairs(const ReplyGraph& g, std::span<const HappinessScore> scores, int d,
                           std::uint64_t alpha);

struct CorrelationResult {
  std::optional<double> r_spearman;
  std::optional<double> r_pearson;
  std::uint64_t n_pairs = 0;  // ordered-pair count (even by construction)
  std::optional<double> p_value_spearman;  // asymptotic, informational
};

CorrelationResult correlate(const ScoredPairSet& pairs);

struct NullModelResult {
  std::optional<double> observed_r;
  std::vector<std::optional<double>> null_rs;
  std::optional<double> null_mean;
  std::optional<double> null_std;
  std::optional<double> empirical_p;  // add-one estimator
  int n_perm = 0;
  std::uint64_t seed = 0;
};

// Permutes happiness scores among the qualifying users only, holding topology
// and the qualifying set fixed, and recomputes the Spearman correlation at
// distance d per replica. Deterministic given (seed, n_perm) at any thread count.
NullModelResult null_model(const ReplyGraph& g, std::span<const HappinessScore> scores, int d,
                           std::uint64_t alpha, int n_perm, std::uint64_t seed);

struct DegreeBin {
  std::uint32_t lo = 0;                  // inclusive
  std::optional<std::uint32_t> hi;       // exclusive; nullopt = unbounded last bin
  std::optional<double> mean_h;
  std::uint64_t n_users = 0;
};

// Mean happiness per degree bin. bin_edges must be strictly increasing and
// positive; bin i covers [edges[i], edges[i+1]), the last bin is unbounded.
std::vector<DegreeBin> happiness_by_degree(const ReplyGraph& g,
                                           std::span<const HappinessScore> scores,
                                           std::span<const std::uint32_t> bin_edges);

std::vector<std::uint32_t> default_degree_bin_edges();  // 1, 2, 4, ..., 2048

}  // namespace hedonet

#endif  // HEDONET_ASSORTATIVITY_HPP
