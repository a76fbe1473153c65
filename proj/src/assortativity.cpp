#include "hedonet/assortativity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hedonet/parallel.hpp"
#include "hedonet/rank_stats.hpp"
#include "hedonet/rng.hpp"

namespace hedonet {

namespace {

struct QualifyingScores {
  std::vector<double> h_of_node;           // valid where qualifying
  std::vector<std::uint8_t> qualifies;
  std::vector<std::uint32_t> qualifying_nodes;  // ascending
};

QualifyingScores align_scores(const ReplyGraph& g, std::span<const HappinessScore> scores,
                              std::uint64_t alpha) {
  QualifyingScores q;
  q.h_of_node.assign(g.num_nodes(), 0.0);
  q.qualifies.assign(g.num_nodes(), 0);
  for (const auto& s : scores) {
    if (s.labmt_word_count < std::max<std::uint64_t>(alpha, 1)) continue;
    if (auto idx = g.index_of(s.user_id)) {
      q.h_of_node[*idx] = s.h;
      q.qualifies[*idx] = 1;
    }
  }
  for (std::uint32_t v = 0; v < g.num_nodes(); ++v)
    if (q.qualifies[v]) q.qualifying_nodes.push_back(v);
  return q;
}

// Qualifying exact-distance pairs as node-index pairs, u < v.
std::vector<std::pair<std::uint32_t, std::uint32_t>> qualifying_pairs(
    const ReplyGraph& g, const QualifyingScores& q, int d) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for_each_pair_at_distance(g, d, [&](std::uint32_t u, std::uint32_t v) {
    if (q.qualifies[u] && q.qualifies[v]) pairs.emplace_back(u, v);
  });
  return pairs;
}

ScoredPairSet make_pair_set(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                            const std::vector<double>& h_of_node, int d, std::uint64_t alpha,
                            std::uint64_t n_users_qualifying) {
  ScoredPairSet set;
  set.distance = d;
  set.alpha = alpha;
  set.n_users_qualifying = n_users_qualifying;
  set.x.reserve(pairs.size() * 2);
  set.y.reserve(pairs.size() * 2);
  for (const auto& [u, v] : pairs) {
    set.x.push_back(h_of_node[u]);
    set.y.push_back(h_of_node[v]);
    set.x.push_back(h_of_node[v]);
    set.y.push_back(h_of_node[u]);
  }
  return set;
}

}  // namespace

ScoredPairSet scored_pairs(const ReplyGraph& g, std::span<const HappinessScore> scores, int d,
                           std::uint64_t alpha) {
  if (d < 1 || d > 3) throw std::invalid_argument("scored_pairs: d must be in {1,2,3}");
  const QualifyingScores q = align_scores(g, scores, alpha);
  const auto pairs = qualifying_pairs(g, q, d);
  return make_pair_set(pairs, q.h_of_node, d, alpha, q.qualifying_nodes.size());
}

CorrelationResult correlate(const ScoredPairSet& pairs) {
  CorrelationResult r;
  r.n_pairs = pairs.x.size();
  if (r.n_pairs < 2) return r;
  r.r_pearson = pearson(pairs.x, pairs.y);
  r.r_spearman = spearman(pairs.x, pairs.y);
  if (r.r_spearman)
    r.p_value_spearman = correlation_pvalue(*r.r_spearman, pairs.x.size() / 2);
  return r;
}

NullModelResult null_model(const ReplyGraph& g, std::span<const HappinessScore> scores, int d,
                           std::uint64_t alpha, int n_perm, std::uint64_t seed) {
  if (n_perm < 1) throw std::invalid_argument("null_model: n_perm must be >= 1");
  if (d < 1 || d > 3) throw std::invalid_argument("null_model: d must be in {1,2,3}");

  const QualifyingScores q = align_scores(g, scores, alpha);
  const auto pairs = qualifying_pairs(g, q, d);
  if (pairs.empty()) throw std::invalid_argument("null_model: no qualifying pairs");

  NullModelResult result;
  result.seed = seed;
  result.n_perm = n_perm;

  const std::uint64_t n_qual = q.qualifying_nodes.size();
  {
    const ScoredPairSet observed = make_pair_set(pairs, q.h_of_node, d, alpha, n_qual);
    result.observed_r = correlate(observed).r_spearman;
  }

  // The qualifying set and topology are fixed across replicas, so permuting
  // the score values among qualifying nodes and re-reading the same pair list
  // reproduces scored_pairs() on the permuted assignment exactly.
  std::vector<double> base_values;
  base_values.reserve(n_qual);
  for (std::uint32_t v : q.qualifying_nodes) base_values.push_back(q.h_of_node[v]);

  result.null_rs.assign(static_cast<std::size_t>(n_perm), std::nullopt);
  parallel_for(static_cast<std::size_t>(n_perm), [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    std::vector<double> permuted = base_values;
    rng.shuffle(permuted);
    std::vector<double> h_of_node = q.h_of_node;
    for (std::size_t s = 0; s < q.qualifying_nodes.size(); ++s)
      h_of_node[q.qualifying_nodes[s]] = permuted[s];
    const ScoredPairSet replica = make_pair_set(pairs, h_of_node, d, alpha, n_qual);
    result.null_rs[i] = correlate(replica).r_spearman;
  });

  std::vector<double> defined;
  defined.reserve(result.null_rs.size());
  for (const auto& v : result.null_rs)
    if (v) defined.push_back(*v);
  if (!defined.empty()) {
    double m = 0.0;
    for (double v : defined) m += v;
    m /= static_cast<double>(defined.size());
    result.null_mean = m;
    double var = 0.0;
    for (double v : defined) var += (v - m) * (v - m);
    result.null_std =
        defined.size() > 1 ? std::sqrt(var / static_cast<double>(defined.size() - 1)) : 0.0;
  }
  if (result.observed_r) {
    std::uint64_t at_least = 0;
    for (const auto& v : result.null_rs)
      if (v && std::fabs(*v) >= std::fabs(*result.observed_r)) ++at_least;
    result.empirical_p = static_cast<double>(at_least + 1) / static_cast<double>(n_perm + 1);
  }
  return result;
}

std::vector<DegreeBin> happiness_by_degree(const ReplyGraph& g,
                                           std::span<const HappinessScore> scores,
                                           std::span<const std::uint32_t> bin_edges) {
  if (bin_edges.empty()) throw std::invalid_argument("happiness_by_degree: no bin edges");
  for (std::size_t i = 0; i < bin_edges.size(); ++i) {
    if (bin_edges[i] == 0 || (i > 0 && bin_edges[i] <= bin_edges[i - 1]))
      throw std::invalid_argument("happiness_by_degree: edges must be strictly increasing, > 0");
  }

  std::vector<DegreeBin> bins(bin_edges.size());
  std::vector<double> sums(bin_edges.size(), 0.0);
  for (std::size_t i = 0; i < bin_edges.size(); ++i) {
    bins[i].lo = bin_edges[i];
    if (i + 1 < bin_edges.size()) bins[i].hi = bin_edges[i + 1];
  }

  for (const auto& s : scores) {
    const auto idx = g.index_of(s.user_id);
    if (!idx) continue;
    const std::uint32_t k = g.degree(*idx);
    if (k < bin_edges[0]) continue;
    const std::size_t b =
        static_cast<std::size_t>(std::upper_bound(bin_edges.begin(), bin_edges.end(), k) -
                                 bin_edges.begin()) - 1;
    sums[b] += s.h;
    ++bins[b].n_users;
  }
  for (std::size_t i = 0; i < bins.size(); ++i)
    if (bins[i].n_users > 0) bins[i].mean_h = sums[i] / static_cast<double>(bins[i].n_users);
  return bins;
}

std::vector<std::uint32_t> default_degree_bin_edges() {
  std::vector<std::uint32_t> edges;
  for (std::uint32_t k = 1; k <= 2048; k *= 2) edges.push_back(k);
  return edges;
}

}  // namespace hedonet
