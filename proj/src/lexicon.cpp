#include "hedonet/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace hedonet {

namespace {

// Decodes one UTF-8 sequence starting at i, advancing i. Invalid bytes decode
// as U+FFFD and advance by one so a bad byte can never stall the scan.
std::uint32_t decode_utf8(std::string_view s, std::size_t& i) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  std::uint32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    const unsigned char b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

void encode_utf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Folded code point when cp is a token character, 0 when it separates tokens.
// Letters: ASCII, Latin-1 supplement, Latin Extended-A. Digits: ASCII.
// U+2019 normalizes to the ASCII apostrophe so contractions match the lexicon.
std::uint32_t fold_token_char(std::uint32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= '0' && cp <= '9') || cp == '\'') return cp;
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp == 0x2019) return '\'';
  if (cp >= 0xC0 && cp <= 0xDE) return cp == 0xD7 ? 0 : cp + 0x20;
  if (cp >= 0xDF && cp <= 0xFF) return cp == 0xF7 ? 0 : cp;
  if (cp >= 0x100 && cp <= 0x137) return cp | 1;
  if (cp == 0x138 || cp == 0x149) return cp;
  if (cp >= 0x139 && cp <= 0x148) return (cp & 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return cp | 1;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) ? cp + 1 : cp;
  if (cp == 0x17F) return 's';
  return 0;
}

bool parse_double(std::string_view s, double& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string fold_case(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t before = i;
    const std::uint32_t cp = decode_utf8(text, i);
    const std::uint32_t folded = fold_token_char(cp);
    if (folded != 0) {
      encode_utf8(folded, out);
    } else {
      out.append(text.substr(before, i - before));
    }
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::uint32_t cp = decode_utf8(text, i);
    const std::uint32_t folded = fold_token_char(cp);
    if (folded != 0) {
      encode_utf8(folded, current);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Lexicon Lexicon::from_entries(std::vector<LexiconEntry> entries) {
  if (entries.empty()) throw std::runtime_error("lexicon: no entries");
  for (auto& e : entries) {
    e.word = fold_case(e.word);
    if (!(e.h_avg >= 1.0 && e.h_avg <= 9.0))
      throw std::runtime_error("lexicon: h_avg out of [1,9] for word '" + e.word + "'");
  }
  std::vector<std::string> seen;
  seen.reserve(entries.size());
  for (const auto& e : entries) seen.push_back(e.word);
  std::sort(seen.begin(), seen.end());
  auto dup = std::adjacent_find(seen.begin(), seen.end());
  if (dup != seen.end()) throw std::runtime_error("lexicon: duplicate word '" + *dup + "'");
  Lexicon lex;
  lex.entries_ = std::move(entries);
  return lex;
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("lexicon: cannot open " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw std::runtime_error("lexicon: empty file " + path);

  // Header detection: a headerless file is exactly two columns with a numeric
  // second column; anything else must carry a header naming its columns.
  const auto first = split_tabs(lines[0]);
  int word_col = -1, avg_col = -1, std_col = -1;
  std::size_t data_start = 0;
  double probe = 0.0;
  const bool two_col_data = first.size() == 2 && parse_double(first[1], probe);
  if (two_col_data) {
    word_col = 0;
    avg_col = 1;
  } else {
    for (std::size_t c = 0; c < first.size(); ++c) {
      const std::string name = lower_ascii(first[c]);
      if (name == "word") word_col = static_cast<int>(c);
      else if (name == "happiness_average") avg_col = static_cast<int>(c);
      else if (name == "happiness_standard_deviation") std_col = static_cast<int>(c);
    }
    if (word_col < 0 || avg_col < 0)
      throw std::runtime_error("lexicon: unrecognized header in " + path);
    data_start = 1;
  }

  std::vector<LexiconEntry> entries;
  entries.reserve(lines.size());
  for (std::size_t li = data_start; li < lines.size(); ++li) {
    const auto cols = split_tabs(lines[li]);
    const std::size_t needed = static_cast<std::size_t>(std::max(word_col, avg_col)) + 1;
    if (cols.size() < needed)
      throw std::runtime_error("lexicon: short row at line " + std::to_string(li + 1));
    LexiconEntry e;
    e.word = std::string(cols[static_cast<std::size_t>(word_col)]);
    if (!parse_double(cols[static_cast<std::size_t>(avg_col)], e.h_avg))
      throw std::runtime_error("lexicon: unparsable h_avg at line " + std::to_string(li + 1));
    if (std_col >= 0 && static_cast<std::size_t>(std_col) < cols.size()) {
      double sd = 0.0;
      if (parse_double(cols[static_cast<std::size_t>(std_col)], sd)) e.h_std = sd;
    }
    entries.push_back(std::move(e));
  }
  return from_entries(std::move(entries));
}

FilteredLexicon::FilteredLexicon(const Lexicon& lexicon, double delta_h) : delta_h_(delta_h) {
  if (delta_h < 0.0) throw std::invalid_argument("delta_h must be >= 0");
  std::vector<const LexiconEntry*> kept;
  kept.reserve(lexicon.size());
  for (const auto& e : lexicon.entries()) {
    const bool stop_word = e.h_avg > 5.0 - delta_h && e.h_avg < 5.0 + delta_h;
    if (!stop_word) kept.push_back(&e);
  }
  std::sort(kept.begin(), kept.end(),
            [](const LexiconEntry* a, const LexiconEntry* b) { return a->word < b->word; });
  words_.reserve(kept.size());
  h_avg_.reserve(kept.size());
  index_.reserve(kept.size());
  for (const LexiconEntry* e : kept) {
    index_.emplace(e->word, static_cast<std::uint32_t>(words_.size()));
    words_.push_back(e->word);
    h_avg_.push_back(e->h_avg);
  }
}

std::optional<std::uint32_t> FilteredLexicon::index_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace hedonet
