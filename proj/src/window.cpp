#include "hedonet/window.hpp"

#include <algorithm>
#include <istream>

namespace hedonet {

std::string_view granularity_name(Granularity g) {
  switch (g) {
    case Granularity::day: return "day";
    case Granularity::week: return "week";
    case Granularity::month: return "month";
  }
  return "unknown";
}

std::optional<Granularity> granularity_from_name(std::string_view name) {
  if (name == "day") return Granularity::day;
  if (name == "week") return Granularity::week;
  if (name == "month") return Granularity::month;
  return std::nullopt;
}

std::int64_t WindowSpec::anchor_timestamp() const {
  return days_from_civil(anchor_year, anchor_month, anchor_day) * 86400;
}

std::optional<std::int64_t> WindowSpec::window_index(std::int64_t ts) const {
  const std::int64_t anchor = anchor_timestamp();
  if (ts < anchor) return std::nullopt;
  switch (granularity) {
    case Granularity::day: return (ts - anchor) / 86400;
    case Granularity::week: return (ts - anchor) / (7 * 86400);
    case Granularity::month: {
      int y;
      unsigned m, d;
      civil_from_days(ts >= 0 ? ts / 86400 : (ts - 86399) / 86400, y, m, d);
      return (static_cast<std::int64_t>(y) - anchor_year) * 12 + static_cast<int>(m) -
             static_cast<int>(anchor_month);
    }
  }
  return std::nullopt;
}

std::int64_t WindowSpec::window_start(std::int64_t index) const {
  switch (granularity) {
    case Granularity::day: return anchor_timestamp() + index * 86400;
    case Granularity::week: return anchor_timestamp() + index * 7 * 86400;
    case Granularity::month: {
      const std::int64_t months = (anchor_year * 12 + static_cast<int>(anchor_month) - 1) + index;
      const int y = static_cast<int>(months / 12);
      const unsigned m = static_cast<unsigned>(months % 12) + 1;
      return days_from_civil(y, m, 1) * 86400;
    }
  }
  return 0;
}

void WindowPartitioner::add(const MessageRecord& record) {
  const auto idx = spec_.window_index(record.timestamp);
  if (!idx) {
    ++n_out_of_range_;
    return;
  }
  const auto w = static_cast<std::size_t>(*idx);
  if (w >= buckets_.size()) buckets_.resize(w + 1);
  auto& slot = buckets_[w];
  if (!slot) {
    slot.emplace();
    slot->store.index = *idx;
  }
  Bucket& b = *slot;
  if (!b.seen_ids.insert(record.message_id).second) {
    ++b.store.n_duplicates;
    return;
  }
  if (b.store.n_records == 0) {
    b.store.min_message_id = record.message_id;
    b.store.max_message_id = record.message_id;
  } else {
    b.store.min_message_id = std::min(b.store.min_message_id, record.message_id);
    b.store.max_message_id = std::max(b.store.max_message_id, record.message_id);
  }
  ++b.store.n_records;
  if (record.reply_to_user_id)
    b.store.events.push_back({*idx, record.user_id, *record.reply_to_user_id});
  b.store.texts.emplace_back(record.user_id, record.text);
}

PartitionResult WindowPartitioner::finish() {
  PartitionResult result;
  result.spec = spec_;
  result.n_out_of_range = n_out_of_range_;
  for (auto& slot : buckets_) {
    if (!slot) continue;
    result.windows.push_back(std::move(slot->store));
  }
  buckets_.clear();
  return result;
}

void StreamCounters::count_skip(SkipReason r) {
  switch (r) {
    case SkipReason::malformed: ++n_malformed; break;
    case SkipReason::missing_required_field: ++n_missing_required_field; break;
    case SkipReason::inconsistent_reply_fields: ++n_inconsistent_reply_fields; break;
  }
}

PartitionResult ingest_stream(std::istream& in, InputFormat format, const WindowSpec& spec,
                              StreamCounters& counters) {
  WindowPartitioner partitioner(spec);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++counters.n_lines;
    ParseOutcome outcome = parse_record(line, format);
    if (auto* skip = std::get_if<SkipReason>(&outcome)) {
      counters.count_skip(*skip);
      continue;
    }
    ++counters.n_parsed;
    partitioner.add(std::get<MessageRecord>(outcome));
  }
  return partitioner.finish();
}

std::optional<Coverage> estimate_coverage(std::uint64_t observed, std::uint64_t min_id,
                                          std::uint64_t max_id) {
  if (observed < 2 || max_id <= min_id) return std::nullopt;
  Coverage c;
  c.observed = observed;
  c.total_estimate = max_id - min_id;
  c.percent = 100.0 * static_cast<double>(observed) / static_cast<double>(c.total_estimate);
  return c;
}

std::optional<Coverage> estimate_coverage(const WindowStore& w) {
  return estimate_coverage(w.n_records, w.min_message_id, w.max_message_id);
}

}  // namespace hedonet
