#include "hedonet/hedonometer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "hedonet/parallel.hpp"
#include "hedonet/rng.hpp"

namespace hedonet {

std::vector<WordBag> build_word_bags(
    std::span<const std::pair<std::uint64_t, std::string>> texts, const FilteredLexicon& lex,
    std::int64_t window_index) {
  std::unordered_map<std::uint64_t, std::unordered_map<std::uint32_t, std::uint32_t>> per_user;
  for (const auto& [user, text] : texts) {
    for (const std::string& token : tokenize(text)) {
      if (auto idx = lex.index_of(token)) ++per_user[user][*idx];
    }
  }
  std::vector<WordBag> bags;
  bags.reserve(per_user.size());
  for (auto& [user, counts] : per_user) {
    WordBag bag;
    bag.user_id = user;
    bag.window_index = window_index;
    bag.counts.assign(counts.begin(), counts.end());
    std::sort(bag.counts.begin(), bag.counts.end());
    for (const auto& [idx, f] : bag.counts) bag.total_count += f;
    bags.push_back(std::move(bag));
  }
  std::sort(bags.begin(), bags.end(),
            [](const WordBag& a, const WordBag& b) { return a.user_id < b.user_id; });
  return bags;
}

std::optional<HappinessScore> happiness(const WordBag& bag, const FilteredLexicon& lex) {
  if (bag.total_count == 0) return std::nullopt;
  double weighted = 0.0;
  for (const auto& [idx, f] : bag.counts) weighted += lex.h_avg(idx) * static_cast<double>(f);
  HappinessScore s;
  s.user_id = bag.user_id;
  s.window_index = bag.window_index;
  s.h = weighted / static_cast<double>(bag.total_count);
  s.labmt_word_count = bag.total_count;
  return s;
}

std::vector<HappinessScore> score_all(std::span<const WordBag> bags, const FilteredLexicon& lex) {
  std::vector<HappinessScore> scores;
  scores.reserve(bags.size());
  for (const auto& bag : bags)
    if (auto s = happiness(bag, lex)) scores.push_back(*s);
  return scores;
}

std::string_view shift_class_name(ShiftClass c) {
  switch (c) {
    case ShiftClass::pos_up: return "pos_up";
    case ShiftClass::pos_down: return "pos_down";
    case ShiftClass::neg_up: return "neg_up";
    case ShiftClass::neg_down: return "neg_down";
  }
  return "unknown";
}

WordShiftReport word_shift(const WordBag& ref, const WordBag& comp, const FilteredLexicon& lex) {
  if (ref.total_count == 0 || comp.total_count == 0)
    throw std::invalid_argument("word_shift: empty bag");

  WordShiftReport report;
  report.h_ref = happiness(ref, lex)->h;
  report.h_comp = happiness(comp, lex)->h;
  report.ref_total = ref.total_count;
  report.comp_total = comp.total_count;

  const double rn = static_cast<double>(ref.total_count);
  const double cn = static_cast<double>(comp.total_count);

  // Merge the two sorted sparse count vectors over the shared lexicon indices.
  std::size_t i = 0, j = 0;
  while (i < ref.counts.size() || j < comp.counts.size()) {
    std::uint32_t idx;
    double p_ref = 0.0, p_comp = 0.0;
    if (j >= comp.counts.size() || (i < ref.counts.size() && ref.counts[i].first < comp.counts[j].first)) {
      idx = ref.counts[i].first;
      p_ref = ref.counts[i].second / rn;
      ++i;
    } else if (i >= ref.counts.size() || comp.counts[j].first < ref.counts[i].first) {
      idx = comp.counts[j].first;
      p_comp = comp.counts[j].second / cn;
      ++j;
    } else {
      idx = ref.counts[i].first;
      p_ref = ref.counts[i].second / rn;
      p_comp = comp.counts[j].second / cn;
      ++i;
      ++j;
    }
    const double h_w = lex.h_avg(idx);
    if (h_w > report.h_ref) {
      report.ref_pos_mass += p_ref;
      report.comp_pos_mass += p_comp;
    } else if (h_w < report.h_ref) {
      report.ref_neg_mass += p_ref;
      report.comp_neg_mass += p_comp;
    }
    const double contribution = (h_w - report.h_ref) * (p_comp - p_ref);
    if (contribution == 0.0) continue;
    WordShiftEntry e;
    e.word = lex.word(idx);
    e.contribution = contribution;
    e.h_avg = h_w;
    e.p_ref = p_ref;
    e.p_comp = p_comp;
    const bool positive = h_w > report.h_ref;
    const bool up = p_comp > p_ref;
    e.sign_class = positive ? (up ? ShiftClass::pos_up : ShiftClass::pos_down)
                            : (up ? ShiftClass::neg_up : ShiftClass::neg_down);
    report.entries.push_back(std::move(e));
  }

  std::sort(report.entries.begin(), report.entries.end(),
            [](const WordShiftEntry& a, const WordShiftEntry& b) {
              const double ma = std::fabs(a.contribution), mb = std::fabs(b.contribution);
              if (ma != mb) return ma > mb;
              return a.word < b.word;
            });
  return report;
}

double bag_similarity(const WordBag& a, const WordBag& b) {
  if (a.total_count == 0 || b.total_count == 0)
    throw std::invalid_argument("bag_similarity: empty bag");
  const double na = static_cast<double>(a.total_count);
  const double nb = static_cast<double>(b.total_count);
  double l1 = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.counts.size() || j < b.counts.size()) {
    if (j >= b.counts.size() || (i < a.counts.size() && a.counts[i].first < b.counts[j].first)) {
      l1 += a.counts[i].second / na;
      ++i;
    } else if (i >= a.counts.size() || b.counts[j].first < a.counts[i].first) {
      l1 += b.counts[j].second / nb;
      ++j;
    } else {
      l1 += std::fabs(a.counts[i].second / na - b.counts[j].second / nb);
      ++i;
      ++j;
    }
  }
  double d = 1.0 - 0.5 * l1;
  if (d < 0.0) d = 0.0;  // guard against rounding just below zero
  if (d > 1.0) d = 1.0;
  return d;
}

WordBag merge_bags(std::span<const WordBag> bags) {
  std::unordered_map<std::uint32_t, std::uint64_t> counts;
  for (const auto& bag : bags)
    for (const auto& [idx, f] : bag.counts) counts[idx] += f;
  WordBag merged;
  merged.counts.reserve(counts.size());
  for (const auto& [idx, f] : counts)
    merged.counts.emplace_back(idx, static_cast<std::uint32_t>(f));
  std::sort(merged.counts.begin(), merged.counts.end());
  for (const auto& [idx, f] : merged.counts) merged.total_count += f;
  return merged;
}

WordBag remove_words(const WordBag& bag, std::span<const std::uint32_t> excluded) {
  WordBag out;
  out.user_id = bag.user_id;
  out.window_index = bag.window_index;
  for (const auto& [idx, f] : bag.counts) {
    if (std::find(excluded.begin(), excluded.end(), idx) != excluded.end()) continue;
    out.counts.emplace_back(idx, f);
    out.total_count += f;
  }
  return out;
}

namespace {

struct QualifyingEdges {
  std::vector<const WordBag*> bag_of_node;            // nullptr where not qualifying
  std::vector<std::uint32_t> qualifying_nodes;        // ascending node index
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // qualifying, u < v
};

QualifyingEdges find_qualifying(const ReplyGraph& g, std::span<const WordBag> bags,
                                std::uint64_t alpha) {
  QualifyingEdges q;
  q.bag_of_node.assign(g.num_nodes(), nullptr);
  for (const auto& bag : bags) {
    if (bag.total_count < std::max<std::uint64_t>(alpha, 1)) continue;
    if (auto idx = g.index_of(bag.user_id)) q.bag_of_node[*idx] = &bag;
  }
  for (std::uint32_t v = 0; v < g.num_nodes(); ++v)
    if (q.bag_of_node[v]) q.qualifying_nodes.push_back(v);
  g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
    if (q.bag_of_node[u] && q.bag_of_node[v]) q.edges.emplace_back(u, v);
  });
  return q;
}

}  // namespace

std::vector<double> edge_similarities(const ReplyGraph& g, std::span<const WordBag> bags,
                                      std::uint64_t alpha) {
  const QualifyingEdges q = find_qualifying(g, bags, alpha);
  std::vector<double> out;
  out.reserve(q.edges.size());
  for (const auto& [u, v] : q.edges)
    out.push_back(bag_similarity(*q.bag_of_node[u], *q.bag_of_node[v]));
  return out;
}

SimilarityNullResult similarity_null(const ReplyGraph& g, std::span<const WordBag> bags,
                                     std::uint64_t alpha, int n_perm, std::uint64_t seed) {
  if (n_perm < 1) throw std::invalid_argument("similarity_null: n_perm must be >= 1");
  const QualifyingEdges q = find_qualifying(g, bags, alpha);
  if (q.edges.empty()) throw std::invalid_argument("similarity_null: no qualifying edges");

  SimilarityNullResult result;
  result.seed = seed;
  result.n_edges_scored = q.edges.size();
  result.n_users_qualifying = q.qualifying_nodes.size();

  // node index -> position in the qualifying list, for permutation lookup
  std::vector<std::uint32_t> slot_of_node(g.num_nodes(), 0);
  for (std::uint32_t s = 0; s < q.qualifying_nodes.size(); ++s)
    slot_of_node[q.qualifying_nodes[s]] = s;

  const auto mean_with = [&](const std::vector<const WordBag*>& bag_at_slot) {
    double sum = 0.0;
    for (const auto& [u, v] : q.edges)
      sum += bag_similarity(*bag_at_slot[slot_of_node[u]], *bag_at_slot[slot_of_node[v]]);
    return sum / static_cast<double>(q.edges.size());
  };

  std::vector<const WordBag*> identity(q.qualifying_nodes.size());
  for (std::uint32_t s = 0; s < q.qualifying_nodes.size(); ++s)
    identity[s] = q.bag_of_node[q.qualifying_nodes[s]];
  result.observed_mean = mean_with(identity);

  result.null_means.assign(static_cast<std::size_t>(n_perm), 0.0);
  parallel_for(static_cast<std::size_t>(n_perm), [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    std::vector<const WordBag*> permuted = identity;
    rng.shuffle(permuted);
    result.null_means[i] = mean_with(permuted);
  });

  double m = 0.0;
  for (double v : result.null_means) m += v;
  m /= static_cast<double>(n_perm);
  result.null_mean = m;
  double var = 0.0;
  for (double v : result.null_means) var += (v - m) * (v - m);
  result.null_std = n_perm > 1 ? std::sqrt(var / static_cast<double>(n_perm - 1)) : 0.0;
  return result;
}

}  // namespace hedonet
