#include "hedonet/record.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include <json.hpp>

namespace hedonet {

std::string_view skip_reason_name(SkipReason r) {
  switch (r) {
    case SkipReason::malformed: return "malformed";
    case SkipReason::missing_required_field: return "missing_required_field";
    case SkipReason::inconsistent_reply_fields: return "inconsistent_reply_fields";
  }
  return "unknown";
}

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, unsigned& month, unsigned& day) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = doy - (153 * mp + 2) / 5 + 1;
  month = mp + (mp < 10 ? 3 : -9);
  year = static_cast<int>(y + (month <= 2));
}

namespace {

bool parse_uint(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_fixed_digits(std::string_view s, std::size_t pos, int width, int& out) {
  out = 0;
  for (int i = 0; i < width; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    out = out * 10 + (c - '0');
  }
  return true;
}

constexpr unsigned days_in_month(int year, unsigned month) {
  constexpr std::array<unsigned, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[month - 1];
}

}  // namespace

std::optional<std::int64_t> parse_iso8601_utc(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (s.size() != 20) return std::nullopt;
  if (s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' || s[16] != ':' || s[19] != 'Z')
    return std::nullopt;
  int year, month, day, hour, minute, second;
  if (!parse_fixed_digits(s, 0, 4, year) || !parse_fixed_digits(s, 5, 2, month) ||
      !parse_fixed_digits(s, 8, 2, day) || !parse_fixed_digits(s, 11, 2, hour) ||
      !parse_fixed_digits(s, 14, 2, minute) || !parse_fixed_digits(s, 17, 2, second))
    return std::nullopt;
  if (month < 1 || month > 12) return std::nullopt;
  if (day < 1 || static_cast<unsigned>(day) > days_in_month(year, static_cast<unsigned>(month)))
    return std::nullopt;
  if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
  return days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day)) * 86400 +
         hour * 3600 + minute * 60 + second;
}

std::string format_iso8601_utc(std::int64_t ts) {
  std::int64_t days = ts / 86400;
  std::int64_t rem = ts % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  int year;
  unsigned month, day;
  civil_from_days(days, year, month, day);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", year, month, day,
                static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

namespace {

ParseOutcome parse_record_jsonl(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return SkipReason::malformed;

  const auto required = [&](const char* key) -> const nlohmann::json* {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return nullptr;
    return &*it;
  };

  const nlohmann::json* id = required("id");
  const nlohmann::json* user = required("user_id");
  const nlohmann::json* text = required("text");
  const nlohmann::json* created = required("created_at");
  if (!id || !user || !text || !created) return SkipReason::missing_required_field;
  if (!id->is_number_unsigned() || !user->is_number_unsigned() || !text->is_string() ||
      !created->is_string())
    return SkipReason::malformed;

  MessageRecord r;
  r.message_id = id->get<std::uint64_t>();
  r.user_id = user->get<std::uint64_t>();
  if (r.message_id == 0 || r.user_id == 0) return SkipReason::malformed;
  r.text = text->get<std::string>();
  const auto ts = parse_iso8601_utc(created->get<std::string>());
  if (!ts) return SkipReason::malformed;
  r.timestamp = *ts;

  const nlohmann::json* reply_msg = required("in_reply_to_status_id");
  const nlohmann::json* reply_user = required("in_reply_to_user_id");
  if (static_cast<bool>(reply_msg) != static_cast<bool>(reply_user))
    return SkipReason::inconsistent_reply_fields;
  if (reply_msg) {
    if (!reply_msg->is_number_unsigned() || !reply_user->is_number_unsigned())
      return SkipReason::malformed;
    const std::uint64_t rm = reply_msg->get<std::uint64_t>();
    const std::uint64_t ru = reply_user->get<std::uint64_t>();
    if (rm == 0 || ru == 0) return SkipReason::malformed;
    r.reply_to_message_id = rm;
    r.reply_to_user_id = ru;
  }
  return r;
}

ParseOutcome parse_record_tsv(std::string_view line) {
  // id, user_id, in_reply_to_status_id, in_reply_to_user_id, created_at, text.
  // The text column is last and is taken verbatim after the fifth tab.
  std::array<std::string_view, 5> head;
  std::size_t start = 0;
  for (auto& col : head) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) return SkipReason::malformed;
    col = line.substr(start, tab - start);
    start = tab + 1;
  }
  const std::string_view text = line.substr(start);

  if (head[0].empty() || head[1].empty() || head[4].empty())
    return SkipReason::missing_required_field;

  MessageRecord r;
  if (!parse_uint(head[0], r.message_id) || !parse_uint(head[1], r.user_id))
    return SkipReason::malformed;
  if (r.message_id == 0 || r.user_id == 0) return SkipReason::malformed;
  if (head[2].empty() != head[3].empty()) return SkipReason::inconsistent_reply_fields;
  if (!head[2].empty()) {
    std::uint64_t rm = 0, ru = 0;
    if (!parse_uint(head[2], rm) || !parse_uint(head[3], ru)) return SkipReason::malformed;
    if (rm == 0 || ru == 0) return SkipReason::malformed;
    r.reply_to_message_id = rm;
    r.reply_to_user_id = ru;
  }
  const auto ts = parse_iso8601_utc(head[4]);
  if (!ts) return SkipReason::malformed;
  r.timestamp = *ts;
  r.text = std::string(text);
  return r;
}

}  // namespace

ParseOutcome parse_record(std::string_view line, InputFormat format) {
  if (line.empty()) return SkipReason::malformed;
  return format == InputFormat::jsonl ? parse_record_jsonl(line) : parse_record_tsv(line);
}

std::string format_record_tsv(const MessageRecord& r) {
  std::string out;
  out += std::to_string(r.message_id);
  out += '\t';
  out += std::to_string(r.user_id);
  out += '\t';
  if (r.reply_to_message_id) out += std::to_string(*r.reply_to_message_id);
  out += '\t';
  if (r.reply_to_user_id) out += std::to_string(*r.reply_to_user_id);
  out += '\t';
  out += format_iso8601_utc(r.timestamp);
  out += '\t';
  out += r.text;
  return out;
}

std::string format_record_jsonl(const MessageRecord& r) {
  nlohmann::json j;
  j["id"] = r.message_id;
  j["user_id"] = r.user_id;
  j["text"] = r.text;
  j["in_reply_to_status_id"] =
      r.reply_to_message_id ? nlohmann::json(*r.reply_to_message_id) : nlohmann::json(nullptr);
  j["in_reply_to_user_id"] =
      r.reply_to_user_id ? nlohmann::json(*r.reply_to_user_id) : nlohmann::json(nullptr);
  j["created_at"] = format_iso8601_utc(r.timestamp);
  return j.dump();
}

}  // namespace hedonet
