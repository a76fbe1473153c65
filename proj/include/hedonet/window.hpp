#ifndef HEDONET_WINDOW_HPP
#define HEDONET_WINDOW_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hedonet/record.hpp"

namespace hedonet {

enum class Granularity { day, week, month };

std::string_view granularity_name(Granularity g);
std::optional<Granularity> granularity_from_name(std::string_view name);

// A windowing scheme anchored at a UTC midnight. Day and week windows are
// consecutive fixed-length intervals from the anchor; month windows are
// calendar months, window 0 being the anchor's month.
struct WindowSpec {
  Granularity granularity = Granularity::week;
  int anchor_year = 2008;
  unsigned anchor_month = 9;
  unsigned anchor_day = 9;

  std::int64_t anchor_timestamp() const;
  // nullopt for timestamps before the anchor.
  std::optional<std::int64_t> window_index(std::int64_t ts) const;
  // Inclusive start of window `index`, as a timestamp.
  std::int64_t window_start(std::int64_t index) const;
};

struct ReplyEvent {
  std::int64_t window_index = 0;
  std::uint64_t from_user = 0;
  std::uint64_t to_user = 0;
};

// Everything one window accumulates during partitioning: the directed reply
// events and every author's message text (replies and non-replies alike feed
// the hedonometer), plus the id range needed for coverage estimation.
struct WindowStore {
  std::int64_t index = 0;
  std::vector<ReplyEvent> events;
  std::vector<std::pair<std::uint64_t, std::string>> texts;  // (user_id, text), arrival order
  std::uint64_t n_records = 0;     // kept records (first occurrence of each message_id)
  std::uint64_t n_duplicates = 0;  // dropped replays of an already-seen message_id
  std::uint64_t min_message_id = 0;
  std::uint64_t max_message_id = 0;
};

struct PartitionResult {
  WindowSpec spec;
  std::vector<WindowStore> windows;  // nonempty windows, ascending index
  std::uint64_t n_out_of_range = 0;  // records before the anchor
};

// Streaming partitioner; records may arrive in any timestamp order.
class WindowPartitioner {
 public:
  explicit WindowPartitioner(const WindowSpec& spec) : spec_(spec) {}
  void add(const MessageRecord& record);
  PartitionResult finish();

 private:
  struct Bucket {
    WindowStore store;
    std::unordered_set<std::uint64_t> seen_ids;
  };
  WindowSpec spec_;
  std::vector<std::optional<Bucket>> buckets_;  // dense by window index
  std::uint64_t n_out_of_range_ = 0;
};

struct StreamCounters {
  std::uint64_t n_lines = 0;
  std::uint64_t n_parsed = 0;
  std::uint64_t n_malformed = 0;
  std::uint64_t n_missing_required_field = 0;
  std::uint64_t n_inconsistent_reply_fields = 0;

  void count_skip(SkipReason r);
  std::uint64_t n_skipped() const {
    return n_malformed + n_missing_required_field + n_inconsistent_reply_fields;
  }
};

// Reads one record per line from `in`, parses, and partitions.
PartitionResult ingest_stream(std::istream& in, InputFormat format, const WindowSpec& spec,
                              StreamCounters& counters);

struct Coverage {
  std::uint64_t observed = 0;
  std::uint64_t total_estimate = 0;  // max(message_id) - min(message_id)
  double percent = 0.0;
};

// Sample-coverage estimate from the message-id range; needs >= 2 records
// (and a nonzero id span), otherwise nullopt.
std::optional<Coverage> estimate_coverage(std::uint64_t observed, std::uint64_t min_id,
                                          std::uint64_t max_id);
std::optional<Coverage> estimate_coverage(const WindowStore& w);

}  // namespace hedonet

#endif  // HEDONET_WINDOW_HPP
