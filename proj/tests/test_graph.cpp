#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "hedonet/reply_graph.hpp"
#include "oracles.hpp"

using namespace hedonet;
namespace ht = hedonet::testing;

namespace {

std::vector<ReplyEvent> events_of(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> l) {
  std::vector<ReplyEvent> events;
  for (const auto& [a, b] : l) events.push_back({0, a, b});
  return events;
}

std::set<std::pair<std::uint64_t, std::uint64_t>> edge_set(const ReplyGraph& g) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> edges;
  g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
    edges.insert({g.node_id(u), g.node_id(v)});
  });
  return edges;
}

std::set<std::pair<std::uint64_t, std::uint64_t>> pairs_at(const ReplyGraph& g, int d) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for_each_pair_at_distance(g, d, [&](std::uint32_t u, std::uint32_t v) {
    std::uint64_t a = g.node_id(u), b = g.node_id(v);
    out.insert({std::min(a, b), std::max(a, b)});
  });
  return out;
}

}  // namespace

TEST_CASE("one-way replies are not edges") {
  // a<->b reciprocate, a->c does not
  const auto g = ReplyGraph::from_events(events_of({{1, 2}, {2, 1}, {1, 3}}));
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(edge_set(g) == std::set<std::pair<std::uint64_t, std::uint64_t>>{{1, 2}});
  CHECK_FALSE(g.index_of(3).has_value());
}

TEST_CASE("self-replies are discarded") {
  const auto g = ReplyGraph::from_events(events_of({{1, 1}, {1, 1}}));
  CHECK(g.num_nodes() == 0);
  CHECK(g.num_edges() == 0);
}

TEST_CASE("repeated reciprocal replies collapse to a simple edge") {
  const auto g = ReplyGraph::from_events(events_of({{1, 2}, {1, 2}, {2, 1}, {2, 1}, {2, 1}}));
  CHECK(g.num_edges() == 1);
  CHECK(g.degree(0) == 1);
}

TEST_CASE("build matches set-intersection oracle on random event streams") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const auto events = ht::random_events(rng, 500, 10000);
    const auto g = ReplyGraph::from_events(events);
    const auto oracle = ht::oracle_reciprocal(events);
    const auto want = ht::oracle_edge_list(oracle);
    CHECK(edge_set(g) ==
          std::set<std::pair<std::uint64_t, std::uint64_t>>(want.begin(), want.end()));
    CHECK(g.num_nodes() == oracle.n());
  }
}

TEST_CASE("triangle stats") {
  const auto g = ReplyGraph::from_events(
      events_of({{1, 2}, {2, 1}, {2, 3}, {3, 2}, {1, 3}, {3, 1}}));
  const auto s = compute_stats(g);
  CHECK(s.n_nodes == 3);
  CHECK(s.n_edges == 3);
  CHECK(*s.mean_degree == doctest::Approx(2.0));
  CHECK(s.max_degree == 2);
  CHECK(*s.global_clustering == doctest::Approx(1.0));
  CHECK(s.n_components == 1);
  CHECK(*s.giant_fraction == doctest::Approx(1.0));
  // all degrees equal: correlations undefined
  CHECK_FALSE(s.degree_assortativity_spearman.has_value());
  CHECK_FALSE(s.degree_assortativity_pearson.has_value());
}

TEST_CASE("path graph has zero clustering") {
  const auto g = ReplyGraph::from_events(events_of({{1, 2}, {2, 1}, {2, 3}, {3, 2}}));
  const auto s = compute_stats(g);
  CHECK(*s.global_clustering == doctest::Approx(0.0));
  CHECK(s.n_components == 1);
}

TEST_CASE("empty and two-node graphs report undefined where applicable") {
  const auto empty = ReplyGraph::from_events({});
  const auto se = compute_stats(empty);
  CHECK(se.n_nodes == 0);
  CHECK_FALSE(se.mean_degree.has_value());
  CHECK_FALSE(se.global_clustering.has_value());
  CHECK(se.n_components == 0);

  // single edge: no path of length 2, C_G undefined (null, not 0)
  const auto pair = ReplyGraph::from_events(events_of({{1, 2}, {2, 1}}));
  const auto sp = compute_stats(pair);
  CHECK_FALSE(sp.global_clustering.has_value());
  CHECK(sp.n_components == 1);
}

TEST_CASE("stats match O(N^3) oracle on random graphs") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 5; ++trial) {
    const auto edges = ht::er_edges(rng, 200, 0.02);
    const auto g = ReplyGraph::from_edges(edges);
    const auto s = compute_stats(g);

    ht::DenseGraph dense;
    std::set<std::uint64_t> nodes;
    for (const auto& [a, b] : edges) {
      nodes.insert(a);
      nodes.insert(b);
    }
    dense.ids.assign(nodes.begin(), nodes.end());
    dense.adj.assign(dense.n(), std::vector<char>(dense.n(), 0));
    const auto idx = [&](std::uint64_t id) {
      return static_cast<std::size_t>(
          std::lower_bound(dense.ids.begin(), dense.ids.end(), id) - dense.ids.begin());
    };
    for (const auto& [a, b] : edges) {
      dense.adj[idx(a)][idx(b)] = 1;
      dense.adj[idx(b)][idx(a)] = 1;
    }
    const auto want = ht::oracle_stats(dense);

    CHECK(s.n_nodes == want.n_nodes);
    CHECK(s.n_edges == want.n_edges);
    CHECK(*s.mean_degree == doctest::Approx(*want.mean_degree).epsilon(1e-12));
    CHECK(s.max_degree == want.max_degree);
    REQUIRE(s.global_clustering.has_value() == want.global_clustering.has_value());
    if (s.global_clustering)
      CHECK(*s.global_clustering == doctest::Approx(*want.global_clustering).epsilon(1e-10));
    CHECK(s.n_components == want.n_components);
    CHECK(*s.giant_fraction == doctest::Approx(*want.giant_fraction).epsilon(1e-12));
    REQUIRE(s.degree_assortativity_spearman.has_value() == want.spearman.has_value());
    if (s.degree_assortativity_spearman) {
      CHECK(*s.degree_assortativity_spearman ==
            doctest::Approx(*want.spearman).epsilon(1e-10));
      CHECK(*s.degree_assortativity_pearson ==
            doctest::Approx(*want.pearson).epsilon(1e-10));
    }
  }
}

TEST_CASE("disjoint-union component accounting") {
  // two disjoint triangles sharing no users
  const auto g = ReplyGraph::from_edges({{1, 2}, {2, 3}, {1, 3}, {10, 11}, {11, 12}, {10, 12},
                                         {20, 21}});
  const auto s = compute_stats(g);
  CHECK(s.n_components == 3);
  CHECK(*s.giant_fraction == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("exact distance pairs on a path graph") {
  const auto g = ReplyGraph::from_edges({{1, 2}, {2, 3}, {3, 4}});
  CHECK(pairs_at(g, 1) ==
        std::set<std::pair<std::uint64_t, std::uint64_t>>{{1, 2}, {2, 3}, {3, 4}});
  CHECK(pairs_at(g, 2) == std::set<std::pair<std::uint64_t, std::uint64_t>>{{1, 3}, {2, 4}});
  CHECK(pairs_at(g, 3) == std::set<std::pair<std::uint64_t, std::uint64_t>>{{1, 4}});
}

TEST_CASE("triangle has no distance-2 pairs") {
  const auto g = ReplyGraph::from_edges({{1, 2}, {2, 3}, {1, 3}});
  CHECK(pairs_at(g, 2).empty());
}

TEST_CASE("distance pairs match Floyd-Warshall oracle and are disjoint across d") {
  std::mt19937_64 rng(303);
  const auto edges = ht::er_edges(rng, 300, 0.01);
  const auto g = ReplyGraph::from_edges(edges);

  ht::DenseGraph dense;
  std::set<std::uint64_t> nodes;
  for (const auto& [a, b] : edges) {
    nodes.insert(a);
    nodes.insert(b);
  }
  dense.ids.assign(nodes.begin(), nodes.end());
  dense.adj.assign(dense.n(), std::vector<char>(dense.n(), 0));
  const auto idx = [&](std::uint64_t id) {
    return static_cast<std::size_t>(
        std::lower_bound(dense.ids.begin(), dense.ids.end(), id) - dense.ids.begin());
  };
  for (const auto& [a, b] : edges) {
    dense.adj[idx(a)][idx(b)] = 1;
    dense.adj[idx(b)][idx(a)] = 1;
  }
  const auto dist = ht::oracle_distances(dense);

  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (int d = 1; d <= 3; ++d) {
    const auto got = pairs_at(g, d);
    CHECK(got == ht::oracle_pairs_at(dense, dist, d));
    for (const auto& p : got) CHECK(seen.insert(p).second);  // pairwise disjoint
  }
  // d=1 equals the edge set exactly
  CHECK(pairs_at(g, 1) == edge_set(g));
}

TEST_CASE("degree sum is twice the edge count") {
  std::mt19937_64 rng(404);
  const auto g = ReplyGraph::from_edges(ht::er_edges(rng, 150, 0.03));
  std::uint64_t sum = 0;
  for (auto d : degree_sequence(g)) sum += d;
  CHECK(sum == 2 * g.num_edges());
  CHECK(compute_stats(g).max_degree <= g.num_nodes() - 1);
}

TEST_CASE("ccdf hand counts") {
  const std::vector<std::uint32_t> degrees{1, 1, 2};
  const auto c = ccdf(degrees);
  REQUIRE(c.size() == 2);
  CHECK(c[0].first == 1);
  CHECK(c[0].second == doctest::Approx(1.0));
  CHECK(c[1].first == 2);
  CHECK(c[1].second == doctest::Approx(1.0 / 3.0));

  const std::vector<std::uint32_t> same{4, 4, 4};
  const auto cs = ccdf(same);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].second == doctest::Approx(1.0));

  CHECK_THROWS(ccdf(std::vector<std::uint32_t>{}));
}

TEST_CASE("ccdf matches sort-and-count oracle") {
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<std::uint32_t> deg(1, 40);
  std::vector<std::uint32_t> sample;
  for (int i = 0; i < 10000; ++i) sample.push_back(deg(rng));
  const auto c = ccdf(sample);
  double prev = 2.0;
  for (const auto& [k, p] : c) {
    std::size_t count = 0;
    for (auto v : sample)
      if (v >= k) ++count;
    CHECK(p == doctest::Approx(static_cast<double>(count) / sample.size()).epsilon(1e-12));
    CHECK(p < prev);  // strictly decreasing over observed support
    prev = p;
  }
  CHECK(c.front().second == doctest::Approx(1.0));
}

TEST_CASE("edge csv round trip") {
  const auto g = ReplyGraph::from_edges({{5, 9}, {9, 14}, {5, 14}});
  std::ostringstream out;
  write_edge_csv(g, out);
  std::istringstream in(out.str());
  const auto back = read_edge_csv(in);
  CHECK(edge_set(back) == edge_set(g));

  const auto empty = ReplyGraph::from_edges({});
  std::ostringstream eout;
  write_edge_csv(empty, eout);
  CHECK(eout.str() == "source,target\n");  // header-only
}

TEST_CASE("edge tsv round trip") {
  const auto g = ReplyGraph::from_edges({{1, 2}, {2, 3}});
  std::ostringstream out;
  write_edge_tsv(g, out);
  std::istringstream in(out.str());
  CHECK(edge_set(read_edge_tsv(in)) == edge_set(g));
}

TEST_CASE("gexf export is minimally well-formed") {
  const auto g = ReplyGraph::from_edges({{1, 2}, {2, 3}, {1, 3}});
  std::ostringstream out;
  write_gexf(g, out);
  const std::string x = out.str();
  CHECK(x.find("<gexf") != std::string::npos);
  CHECK(x.find("version=\"1.2\"") != std::string::npos);
  CHECK(x.find("<node id=\"1\"") != std::string::npos);
  CHECK(x.find("source=\"1\" target=\"2\"") != std::string::npos);
  CHECK(x.find("</gexf>") != std::string::npos);
}
