#ifndef HEDONET_TESTS_FIXTURES_HPP
#define HEDONET_TESTS_FIXTURES_HPP

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "hedonet/lexicon.hpp"

namespace hedonet::testing {

// Small labMT-style fixture. Scores follow the published word list so that
// exact-value checks (love = 8.42, Table-1 sentence = 7.07, ...) are meaningful;
// the list also includes neutral-band words to exercise the stop-word filter.
inline const std::vector<std::pair<const char*, double>>& labmt_sample() {
  static const std::vector<std::pair<const char*, double>> words = {
      {"love", 8.42},     {"happy", 8.30},    {"music", 8.02},   {"weekend", 8.00},
      {"fun", 7.96},      {"free", 7.96},     {"christmas", 7.96}, {"vacation", 7.92},
      {"funny", 7.92},    {"friends", 7.92},  {"great", 7.88},   {"family", 7.72},
      {"friend", 7.66},   {"amazing", 7.66},  {"haha", 7.64},    {"awesome", 7.60},
      {"party", 7.58},    {"interesting", 7.52}, {"glad", 7.48}, {"internet", 7.48},
      {"food", 7.44},     {"lunch", 7.42},    {"thanks", 7.40},  {"dinner", 7.40},
      {"hope", 7.38},     {"nice", 7.38},     {"kids", 7.38},    {"life", 7.32},
      {"pretty", 7.32},   {"god", 7.28},      {"play", 7.26},    {"book", 7.24},
      {"like", 7.22},     {"good", 7.20},     {"cool", 7.20},    {"special", 7.20},
      {"google", 7.20},   {"best", 7.18},     {"bed", 7.18},     {"coffee", 7.18},
      {"sleep", 7.16},    {"home", 7.14},     {"better", 7.00},  {"wish", 6.92},
      {"game", 6.92},     {"friday", 6.88},   {"lol", 6.84},     {"movie", 6.84},
      {"new", 6.82},      {"first", 6.82},    {"yes", 6.74},     {"car", 6.72},
      {"well", 6.68},     {"me", 6.58},       {"morning", 6.56}, {"right", 6.54},
      {"done", 6.54},     {"give", 6.54},     {"world", 6.52},   {"video", 6.48},
      {"always", 6.48},   {"house", 6.34},    {"soon", 6.34},    {"snow", 6.32},
      {"sure", 6.32},     {"you", 6.24},      {"day", 6.24},     {"show", 6.24},
      {"all", 6.22},      {"today", 6.22},    {"night", 6.22},   {"guys", 6.22},
      {"big", 6.22},      {"tomorrow", 6.18}, {"she", 6.18},     {"my", 6.16},
      {"people", 6.16},   {"up", 6.14},       {"tonight", 6.14}, {"very", 6.12},
      {"everyone", 6.12}, {"yay", 6.10},      {"check", 6.10},   {"know", 6.10},
      {"open", 6.10},     {"help", 6.08},     {"our", 6.08},     {"hey", 6.06},
      {"talk", 6.06},     {"see", 6.06},      {"award", 6.06},   {"awards", 6.04},
      {"will", 6.02},     {"blog", 6.02},     {"find", 6.00},    {"ha", 6.00},
      // neutral band (stop words at delta_h = 1)
      {"starts", 5.96},   {"now", 5.90},      {"just", 5.76},    {"i'm", 5.74},
      {"time", 5.74},     {"have", 5.82},     {"really", 5.84},  {"want", 5.70},
      {"going", 5.42},    {"twitter", 5.46},  {"work", 5.24},    {"the", 4.98},
      {"to", 4.98},       {"that's", 5.28},   {"sigh", 4.16},    {"but", 4.24},
      {"was", 4.60},      {"out", 4.62},      {"if", 4.66},      {"how", 4.68},
      {"what", 4.80},     {"oh", 4.84},       {"need", 4.84},    {"off", 4.02},
      // negative side
      {"least", 4.00},    {"didn't", 4.00},   {"old", 3.98},     {"stop", 3.90},
      {"nothing", 3.90},  {"not", 3.86},      {"wait", 3.74},    {"last", 3.74},
      {"don't", 3.70},    {"waiting", 3.68},  {"mean", 3.68},    {"sorry", 3.66},
      {"down", 3.66},     {"doesn't", 3.62},  {"no", 3.48},      {"late", 3.46},
      {"can't", 3.42},    {"never", 3.34},    {"tired", 3.34},   {"damn", 2.98},
      {"lost", 2.76},     {"bad", 2.64},      {"sad", 2.38},     {"hate", 2.34},
      {"die", 1.74},
  };
  return words;
}

inline Lexicon fixture_lexicon() {
  std::vector<LexiconEntry> entries;
  for (const auto& [w, h] : labmt_sample()) entries.push_back({w, h, std::nullopt});
  return Lexicon::from_entries(std::move(entries));
}

// Writes the fixture in the 4-column labMT TSV layout consumed by --lexicon.
inline void write_fixture_lexicon_tsv(const std::filesystem::path& path) {
  std::ofstream out(path);
  out << "word\thappiness_rank\thappiness_average\thappiness_standard_deviation\n";
  int rank = 1;
  for (const auto& [w, h] : labmt_sample()) {
    out << w << '\t' << rank++ << '\t' << h << "\t1.0\n";
  }
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("hedonet-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace hedonet::testing

#endif
