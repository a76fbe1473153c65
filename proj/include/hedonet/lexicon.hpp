#ifndef HEDONET_LEXICON_HPP
#define HEDONET_LEXICON_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hedonet {

struct LexiconEntry {
  std::string word;  // lowercased
  double h_avg = 0.0;
  std::optional<double> h_std;
};

// The full labMT-style word list: unique words with happiness averages in [1, 9].
class Lexicon {
 public:
  // Accepts the labMT TSV (header row naming word / happiness_average /
  // happiness_standard_deviation columns, extras ignored) or a headerless
  // two-column word<TAB>h_avg file. Throws std::runtime_error on duplicate
  // words, unparsable scores, or an empty file.
  static Lexicon load(const std::string& path);
  static Lexicon from_entries(std::vector<LexiconEntry> entries);

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<LexiconEntry> entries_;
};

// Lexicon with the neutral band removed: entries with 5-dh < h_avg < 5+dh are
// dropped (strict bounds, so delta_h = 0 removes nothing). Words carry stable
// dense indices (sorted order) used by word bags and similarity vectors.
class FilteredLexicon {
 public:
  FilteredLexicon(const Lexicon& lexicon, double delta_h);

  double delta_h() const { return delta_h_; }
  std::size_t size() const { return words_.size(); }
  const std::string& word(std::uint32_t idx) const { return words_[idx]; }
  double h_avg(std::uint32_t idx) const { return h_avg_[idx]; }
  std::optional<std::uint32_t> index_of(std::string_view word) const;
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;  // sorted ascending
  std::vector<double> h_avg_;
  std::unordered_map<std::string, std::uint32_t> index_;
  double delta_h_ = 0.0;
};

// Lowercases and splits UTF-8 text into maximal runs of letters, digits, and
// apostrophes (U+2019 is normalized to ASCII '). Letter coverage: ASCII,
// Latin-1 supplement, Latin Extended-A; anything else separates tokens.
std::vector<std::string> tokenize(std::string_view text);

// The case fold used by tokenize(), applied to lexicon words on load so that
// token/lexicon comparisons are byte-exact.
std::string fold_case(std::string_view text);

}  // namespace hedonet

#endif  // HEDONET_LEXICON_HPP
