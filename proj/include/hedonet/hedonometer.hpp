#ifndef HEDONET_HEDONOMETER_HPP
#define HEDONET_HEDONOMETER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hedonet/lexicon.hpp"
#include "hedonet/reply_graph.hpp"

namespace hedonet {

// Per-user, per-window counts of matched lexicon words. Sparse over the
// filtered lexicon's dense indices, sorted by index.
struct WordBag {
  std::uint64_t user_id = 0;
  std::int64_t window_index = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> counts;  // (lexicon idx, frequency)
  std::uint64_t total_count = 0;
};

// Builds one bag per user from all their messages in a window. Users whose
// text matches no lexicon word yield no bag. Output sorted by user_id.
std::vector<WordBag> build_word_bags(
    std::span<const std::pair<std::uint64_t, std::string>> texts, const FilteredLexicon& lex,
    std::int64_t window_index);

struct HappinessScore {
  std::uint64_t user_id = 0;
  std::int64_t window_index = 0;
  double h = 0.0;
  std::uint64_t labmt_word_count = 0;
};

// Frequency-weighted average of the bag's word scores; nullopt for an empty bag.
std::optional<HappinessScore> happiness(const WordBag& bag, const FilteredLexicon& lex);

std::vector<HappinessScore> score_all(std::span<const WordBag> bags, const FilteredLexicon& lex);

enum class ShiftClass { pos_up, pos_down, neg_up, neg_down };
std::string_view shift_class_name(ShiftClass c);

struct WordShiftEntry {
  std::string word;
  double contribution = 0.0;  // (h_avg(w) - h_ref) * (p_comp(w) - p_ref(w))
  ShiftClass sign_class = ShiftClass::pos_up;
  double h_avg = 0.0;
  double p_ref = 0.0;
  double p_comp = 0.0;
};

struct WordShiftReport {
  double h_ref = 0.0;
  double h_comp = 0.0;
  std::uint64_t ref_total = 0;
  std::uint64_t comp_total = 0;
  // Normalized frequency mass on words above/below the reference score.
  double ref_pos_mass = 0.0, ref_neg_mass = 0.0;
  double comp_pos_mass = 0.0, comp_neg_mass = 0.0;
  std::vector<WordShiftEntry> entries;  // |contribution| descending
};

// Per-word decomposition of h(comp) - h(ref). Contributions sum to the score
// difference exactly; zero-contribution words are omitted. Throws
// std::invalid_argument if either bag is empty.
WordShiftReport word_shift(const WordBag& ref, const WordBag& comp, const FilteredLexicon& lex);

// D = 1 - L1(p_i, p_j)/2 over the full filtered-lexicon support; 1 for
// identical distributions, 0 for disjoint ones. Throws on an empty bag.
double bag_similarity(const WordBag& a, const WordBag& b);

// Sums counts of several bags into one (user_id/window of the result are 0).
WordBag merge_bags(std::span<const WordBag> bags);

// Removes the given lexicon indices from a bag (CLI --exclude-words support).
WordBag remove_words(const WordBag& bag, std::span<const std::uint32_t> excluded);

struct SimilarityNullResult {
  double observed_mean = 0.0;
  std::vector<double> null_means;
  double null_mean = 0.0;
  double null_std = 0.0;
  std::uint64_t n_edges_scored = 0;
  std::uint64_t n_users_qualifying = 0;
  std::uint64_t seed = 0;
};

// Mean edge similarity vs. a null that permutes bag-to-user assignment among
// qualifying users (bag present and total_count >= alpha) with the topology
// fixed. Throws std::invalid_argument if no edge qualifies.
SimilarityNullResult similarity_null(const ReplyGraph& g, std::span<const WordBag> bags,
                                     std::uint64_t alpha, int n_perm, std::uint64_t seed);

// Observed per-edge similarity values, CSR edge order (for distribution plots).
std::vector<double> edge_similarities(const ReplyGraph& g, std::span<const WordBag> bags,
                                      std::uint64_t alpha);

}  // namespace hedonet

#endif  // HEDONET_HEDONOMETER_HPP
