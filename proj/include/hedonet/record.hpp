#ifndef HEDONET_RECORD_HPP
#define HEDONET_RECORD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace hedonet {

struct MessageRecord {
  std::uint64_t message_id = 0;
  std::uint64_t user_id = 0;
  std::string text;
  std::optional<std::uint64_t> reply_to_message_id;
  std::optional<std::uint64_t> reply_to_user_id;
  std::int64_t timestamp = 0;  // seconds since epoch, UTC

  bool is_reply() const { return reply_to_message_id.has_value(); }
};

enum class SkipReason { malformed, missing_required_field, inconsistent_reply_fields };

std::string_view skip_reason_name(SkipReason r);

enum class InputFormat { jsonl, tsv };

using ParseOutcome = std::variant<MessageRecord, SkipReason>;

// Parses one input line. Never throws on bad data: structural problems come
// back as a SkipReason so a stream survives individual bad records.
//   jsonl keys: id, user_id, text, in_reply_to_status_id, in_reply_to_user_id,
//               created_at (ISO-8601 UTC, e.g. 2008-09-09T14:03:22Z)
//   tsv cols:   id, user_id, in_reply_to_status_id, in_reply_to_user_id,
//               created_at, text (text last; empty string = absent field)
ParseOutcome parse_record(std::string_view line, InputFormat format);

std::string format_record_tsv(const MessageRecord& r);
std::string format_record_jsonl(const MessageRecord& r);

// Strict "YYYY-MM-DDTHH:MM:SSZ" parser; nullopt on any deviation.
std::optional<std::int64_t> parse_iso8601_utc(std::string_view s);
std::string format_iso8601_utc(std::int64_t ts);

// Proleptic Gregorian day arithmetic (days since 1970-01-01).
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

}  // namespace hedonet

#endif  // HEDONET_RECORD_HPP
