#ifndef HEDONET_REPLY_GRAPH_HPP
#define HEDONET_REPLY_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hedonet/window.hpp"

namespace hedonet {

// Undirected simple graph over user ids for one window: an edge {i, j} exists
// iff i replied to j and j replied to i within the window. Nodes are exactly
// the users incident to at least one reciprocal edge, so there are no
// degree-0 nodes. Immutable after construction; CSR adjacency with sorted
// neighbor lists.
class ReplyGraph {
 public:
  ReplyGraph() = default;

  // build_reciprocal: keeps pairs with both directions present, drops self-replies.
  static ReplyGraph from_events(std::span<const ReplyEvent> events);
  // From an explicit undirected edge list (self-loops dropped, duplicates merged).
  static ReplyGraph from_edges(std::vector<std::pair<std::uint64_t, std::uint64_t>> edges);

  std::uint32_t num_nodes() const { return static_cast<std::uint32_t>(ids_.size()); }
  std::uint64_t num_edges() const { return n_edges_; }

  std::uint64_t node_id(std::uint32_t idx) const { return ids_[idx]; }
  std::optional<std::uint32_t> index_of(std::uint64_t user_id) const;

  std::span<const std::uint32_t> neighbors(std::uint32_t idx) const {
    return {adj_.data() + offsets_[idx], adj_.data() + offsets_[idx + 1]};
  }
  std::uint32_t degree(std::uint32_t idx) const {
    return static_cast<std::uint32_t>(offsets_[idx + 1] - offsets_[idx]);
  }

  // Visits each edge once as (u, v) with u < v, both ascending.
  template <class F>
  void for_each_edge(F&& f) const {
    for (std::uint32_t u = 0; u < num_nodes(); ++u)
      for (std::uint32_t v : neighbors(u))
        if (v > u) f(u, v);
  }

 private:
  std::vector<std::uint64_t> ids_;      // sorted user ids
  std::vector<std::uint64_t> offsets_;  // size N+1
  std::vector<std::uint32_t> adj_;      // sorted within each node
  std::uint64_t n_edges_ = 0;
};

struct NetworkStats {
  std::uint64_t n_nodes = 0;
  std::uint64_t n_edges = 0;
  std::optional<double> mean_degree;
  std::uint64_t max_degree = 0;
  std::optional<double> global_clustering;  // 3*triangles / connected triples
  std::uint64_t n_components = 0;
  std::optional<double> giant_fraction;
  std::optional<double> degree_assortativity_spearman;
  std::optional<double> degree_assortativity_pearson;
};

// All nine summary statistics in one pass family. Degree assortativity is the
// rank (and product-moment) correlation over the degree pairs of every edge,
// both orderings included; undefined values come back as nullopt.
NetworkStats compute_stats(const ReplyGraph& g);

std::uint64_t count_triangles(const ReplyGraph& g);

// Reusable depth-limited BFS machinery for exact-distance pair enumeration.
// O(N) scratch reused across sources; never materializes anything quadratic.
class DistancePairEnumerator {
 public:
  explicit DistancePairEnumerator(const ReplyGraph& g);
  // Appends to `out` every node at BFS distance exactly d from source.
  void collect(std::uint32_t source, int d, std::vector<std::uint32_t>& out);

 private:
  const ReplyGraph& g_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint8_t> dist_;
  std::vector<std::uint32_t> queue_;
  std::uint32_t round_ = 0;
};

// Streams each unordered pair {u, v} with shortest-path distance exactly d,
// emitted once with u < v (node indices). d in {1, 2, 3}.
template <class Emit>
void for_each_pair_at_distance(const ReplyGraph& g, int d, Emit&& emit) {
  DistancePairEnumerator enumerator(g);
  std::vector<std::uint32_t> reached;
  for (std::uint32_t s = 0; s < g.num_nodes(); ++s) {
    reached.clear();
    enumerator.collect(s, d, reached);
    for (std::uint32_t v : reached)
      if (v > s) emit(s, v);
  }
}

// Complementary cumulative degree distribution: (k, P(K >= k)) at each
// observed degree, ascending. Throws on empty input.
std::vector<std::pair<std::uint32_t, double>> ccdf(std::span<const std::uint32_t> degrees);

std::vector<std::uint32_t> degree_sequence(const ReplyGraph& g);

enum class GraphFormat { edge_csv, gexf };

void write_edge_csv(const ReplyGraph& g, std::ostream& out);
void write_gexf(const ReplyGraph& g, std::ostream& out);
ReplyGraph read_edge_csv(std::istream& in);

// Two-column TSV used for the persisted net-<window>.edges artifacts.
void write_edge_tsv(const ReplyGraph& g, std::ostream& out);
ReplyGraph read_edge_tsv(std::istream& in);

}  // namespace hedonet

#endif  // HEDONET_REPLY_GRAPH_HPP
