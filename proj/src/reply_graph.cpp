#include "hedonet/reply_graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace hedonet {

namespace {

struct CsrParts {
  std::vector<std::uint64_t> ids;
  std::vector<std::uint64_t> offsets;
  std::vector<std::uint32_t> adj;
  std::uint64_t n_edges = 0;
};

// edges must be sorted, unique, with first < second.
CsrParts build_csr(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& edges) {
  CsrParts p;
  p.ids.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) {
    p.ids.push_back(a);
    p.ids.push_back(b);
  }
  std::sort(p.ids.begin(), p.ids.end());
  p.ids.erase(std::unique(p.ids.begin(), p.ids.end()), p.ids.end());

  const auto index_of = [&](std::uint64_t id) {
    return static_cast<std::uint32_t>(
        std::lower_bound(p.ids.begin(), p.ids.end(), id) - p.ids.begin());
  };

  const std::size_t n = p.ids.size();
  p.offsets.assign(n + 1, 0);
  for (const auto& [a, b] : edges) {
    ++p.offsets[index_of(a) + 1];
    ++p.offsets[index_of(b) + 1];
  }
  for (std::size_t i = 0; i < n; ++i) p.offsets[i + 1] += p.offsets[i];
  p.adj.resize(p.offsets[n]);
  std::vector<std::uint64_t> cursor(p.offsets.begin(), p.offsets.end() - 1);
  for (const auto& [a, b] : edges) {
    const std::uint32_t ia = index_of(a), ib = index_of(b);
    p.adj[cursor[ia]++] = ib;
    p.adj[cursor[ib]++] = ia;
  }
  for (std::size_t i = 0; i < n; ++i)
    std::sort(p.adj.begin() + static_cast<std::ptrdiff_t>(p.offsets[i]),
              p.adj.begin() + static_cast<std::ptrdiff_t>(p.offsets[i + 1]));
  p.n_edges = edges.size();
  return p;
}

}  // namespace

ReplyGraph ReplyGraph::from_events(std::span<const ReplyEvent> events) {
  // Normalize each directed event to (lo, hi, direction-bit); an unordered pair
  // is an edge iff both bits show up.
  struct Arc {
    std::uint64_t lo, hi;
    bool rev;
    bool operator<(const Arc& o) const {
      if (lo != o.lo) return lo < o.lo;
      if (hi != o.hi) return hi < o.hi;
      return rev < o.rev;
    }
  };
  std::vector<Arc> arcs;
  arcs.reserve(events.size());
  for (const auto& e : events) {
    if (e.from_user == e.to_user || e.from_user == 0 || e.to_user == 0) continue;
    const bool rev = e.from_user > e.to_user;
    arcs.push_back({rev ? e.to_user : e.from_user, rev ? e.from_user : e.to_user, rev});
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end(),
                         [](const Arc& a, const Arc& b) {
                           return a.lo == b.lo && a.hi == b.hi && a.rev == b.rev;
                         }),
             arcs.end());

  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i) {
    if (arcs[i].lo == arcs[i + 1].lo && arcs[i].hi == arcs[i + 1].hi && !arcs[i].rev &&
        arcs[i + 1].rev)
      edges.emplace_back(arcs[i].lo, arcs[i].hi);
  }
  ReplyGraph g;
  CsrParts p = build_csr(edges);
  g.ids_ = std::move(p.ids);
  g.offsets_ = std::move(p.offsets);
  g.adj_ = std::move(p.adj);
  g.n_edges_ = p.n_edges;
  return g;
}

ReplyGraph ReplyGraph::from_edges(std::vector<std::pair<std::uint64_t, std::uint64_t>> edges) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> norm;
  norm.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a == b || a == 0 || b == 0) continue;
    norm.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(norm.begin(), norm.end());
  norm.erase(std::unique(norm.begin(), norm.end()), norm.end());
  ReplyGraph g;
  CsrParts p = build_csr(norm);
  g.ids_ = std::move(p.ids);
  g.offsets_ = std::move(p.offsets);
  g.adj_ = std::move(p.adj);
  g.n_edges_ = p.n_edges;
  return g;
}

std::optional<std::uint32_t> ReplyGraph::index_of(std::uint64_t user_id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), user_id);
  if (it == ids_.end() || *it != user_id) return std::nullopt;
  return static_cast<std::uint32_t>(it - ids_.begin());
}

NetworkStats compute_stats(const ReplyGraph& g) {
  NetworkStats s;
  const std::uint32_t n = g.num_nodes();
  s.n_nodes = n;
  s.n_edges = g.num_edges();
  if (n == 0) return s;

  s.mean_degree = 2.0 * static_cast<double>(s.n_edges) / static_cast<double>(n);

  std::uint64_t triples = 0;
  std::uint32_t k_max = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint64_t k = g.degree(v);
    k_max = std::max(k_max, static_cast<std::uint32_t>(k));
    triples += k * (k - 1) / 2;
  }
  s.max_degree = k_max;
  if (triples > 0) {
    const std::uint64_t triangles = count_triangles(g);
    s.global_clustering =
        3.0 * static_cast<double>(triangles) / static_cast<double>(triples);
  }

  // Connected components by BFS over the CSR arrays.
  {
    std::vector<std::uint32_t> component(n, UINT32_MAX);
    std::vector<std::uint32_t> queue;
    std::uint32_t n_components = 0;
    std::uint64_t largest = 0;
    for (std::uint32_t start = 0; start < n; ++start) {
      if (component[start] != UINT32_MAX) continue;
      std::uint64_t size = 0;
      queue.clear();
      queue.push_back(start);
      component[start] = n_components;
      while (!queue.empty()) {
        const std::uint32_t u = queue.back();
        queue.pop_back();
        ++size;
        for (std::uint32_t w : g.neighbors(u)) {
          if (component[w] == UINT32_MAX) {
            component[w] = n_components;
            queue.push_back(w);
          }
        }
      }
      largest = std::max(largest, size);
      ++n_components;
    }
    s.n_components = n_components;
    s.giant_fraction = static_cast<double>(largest) / static_cast<double>(n);
  }

  // Degree assortativity over the degree-pair multiset of all edges, both
  // orderings. Spearman ranks are derived from the degree histogram weighted
  // by edge incidence (node of degree k appears k times per coordinate), which
  // equals ranking the materialized 2M-element multiset with average ties.
  if (s.n_edges > 0) {
    std::vector<std::uint32_t> degrees = degree_sequence(g);
    const std::uint32_t max_deg = k_max;
    std::vector<std::uint64_t> incidence(max_deg + 1, 0);
    for (std::uint32_t v = 0; v < n; ++v) incidence[degrees[v]] += degrees[v];

    std::vector<double> rank_of_degree(max_deg + 1, 0.0);
    std::uint64_t before = 0;
    for (std::uint32_t k = 1; k <= max_deg; ++k) {
      if (incidence[k] == 0) continue;
      rank_of_degree[k] = static_cast<double>(before) + (static_cast<double>(incidence[k]) + 1.0) / 2.0;
      before += incidence[k];
    }

    const long double m2 = 2.0L * static_cast<long double>(s.n_edges);
    long double mean_deg = 0.0L, mean_rank = 0.0L;
    for (std::uint32_t v = 0; v < n; ++v) {
      mean_deg += static_cast<long double>(degrees[v]) * degrees[v];
      mean_rank += static_cast<long double>(rank_of_degree[degrees[v]]) * degrees[v];
    }
    mean_deg /= m2;
    mean_rank /= m2;

    long double var_deg = 0.0L, var_rank = 0.0L;
    for (std::uint32_t v = 0; v < n; ++v) {
      const long double dd = static_cast<long double>(degrees[v]) - mean_deg;
      const long double dr = static_cast<long double>(rank_of_degree[degrees[v]]) - mean_rank;
      var_deg += dd * dd * degrees[v];
      var_rank += dr * dr * degrees[v];
    }

    long double cov_deg = 0.0L, cov_rank = 0.0L;
    g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
      const long double du = static_cast<long double>(degrees[u]) - mean_deg;
      const long double dv = static_cast<long double>(degrees[v]) - mean_deg;
      cov_deg += 2.0L * du * dv;
      const long double ru = static_cast<long double>(rank_of_degree[degrees[u]]) - mean_rank;
      const long double rv = static_cast<long double>(rank_of_degree[degrees[v]]) - mean_rank;
      cov_rank += 2.0L * ru * rv;
    });

    if (var_deg > 0.0L)
      s.degree_assortativity_pearson = static_cast<double>(cov_deg / var_deg);
    if (var_rank > 0.0L)
      s.degree_assortativity_spearman = static_cast<double>(cov_rank / var_rank);
  }
  return s;
}

std::uint64_t count_triangles(const ReplyGraph& g) {
  // Each triangle u < v < w counted once at its smallest vertex: for every
  // edge (u, v) with u < v, intersect the two sorted neighbor lists above v.
  std::uint64_t total = 0;
  const std::uint32_t n = g.num_nodes();
  for (std::uint32_t u = 0; u < n; ++u) {
    const auto nu = g.neighbors(u);
    for (std::uint32_t v : nu) {
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      auto iu = std::upper_bound(nu.begin(), nu.end(), v);
      auto iv = std::upper_bound(nv.begin(), nv.end(), v);
      while (iu != nu.end() && iv != nv.end()) {
        if (*iu < *iv) ++iu;
        else if (*iv < *iu) ++iv;
        else {
          ++total;
          ++iu;
          ++iv;
        }
      }
    }
  }
  return total;
}

DistancePairEnumerator::DistancePairEnumerator(const ReplyGraph& g)
    : g_(g), stamp_(g.num_nodes(), 0), dist_(g.num_nodes(), 0) {
  queue_.reserve(64);
}

void DistancePairEnumerator::collect(std::uint32_t source, int d, std::vector<std::uint32_t>& out) {
  ++round_;
  queue_.clear();
  queue_.push_back(source);
  stamp_[source] = round_;
  dist_[source] = 0;
  std::size_t head = 0;
  while (head < queue_.size()) {
    const std::uint32_t u = queue_[head++];
    const int du = dist_[u];
    if (du == d) {
      out.push_back(u);
      continue;  // depth limit: never expand past d
    }
    for (std::uint32_t w : g_.neighbors(u)) {
      if (stamp_[w] == round_) continue;
      stamp_[w] = round_;
      dist_[w] = static_cast<std::uint8_t>(du + 1);
      queue_.push_back(w);
    }
  }
}

std::vector<std::uint32_t> degree_sequence(const ReplyGraph& g) {
  std::vector<std::uint32_t> degrees(g.num_nodes());
  for (std::uint32_t v = 0; v < g.num_nodes(); ++v) degrees[v] = g.degree(v);
  return degrees;
}

std::vector<std::pair<std::uint32_t, double>> ccdf(std::span<const std::uint32_t> degrees) {
  if (degrees.empty()) throw std::invalid_argument("ccdf: empty degree multiset");
  std::vector<std::uint32_t> sorted(degrees.begin(), degrees.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<std::pair<std::uint32_t, double>> out;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const std::uint32_t k = sorted[i];
    // P(K >= k) = fraction of observations at or above k
    out.emplace_back(k, static_cast<double>(sorted.size() - i) / n);
    while (i < sorted.size() && sorted[i] == k) ++i;
  }
  return out;
}

void write_edge_csv(const ReplyGraph& g, std::ostream& out) {
  out << "source,target\n";
  g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
    out << g.node_id(u) << ',' << g.node_id(v) << '\n';
  });
}

void write_edge_tsv(const ReplyGraph& g, std::ostream& out) {
  g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
    out << g.node_id(u) << '\t' << g.node_id(v) << '\n';
  });
}

void write_gexf(const ReplyGraph& g, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
      << "  <graph defaultedgetype=\"undirected\">\n"
      << "    <nodes>\n";
  for (std::uint32_t v = 0; v < g.num_nodes(); ++v)
    out << "      <node id=\"" << g.node_id(v) << "\" />\n";
  out << "    </nodes>\n    <edges>\n";
  std::uint64_t eid = 0;
  g.for_each_edge([&](std::uint32_t u, std::uint32_t v) {
    out << "      <edge id=\"" << eid++ << "\" source=\"" << g.node_id(u) << "\" target=\""
        << g.node_id(v) << "\" />\n";
  });
  out << "    </edges>\n  </graph>\n</gexf>\n";
}

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> read_pairs(std::istream& in, char sep,
                                                                bool skip_header) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && skip_header) {
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    const std::size_t pos = line.find(sep);
    if (pos == std::string::npos) throw std::runtime_error("edge list: bad line '" + line + "'");
    std::uint64_t a = 0, b = 0;
    auto r1 = std::from_chars(line.data(), line.data() + pos, a);
    auto r2 = std::from_chars(line.data() + pos + 1, line.data() + line.size(), b);
    if (r1.ec != std::errc() || r2.ec != std::errc())
      throw std::runtime_error("edge list: bad line '" + line + "'");
    edges.emplace_back(a, b);
  }
  return edges;
}

}  // namespace

ReplyGraph read_edge_csv(std::istream& in) {
  return ReplyGraph::from_edges(read_pairs(in, ',', /*skip_header=*/true));
}

ReplyGraph read_edge_tsv(std::istream& in) {
  return ReplyGraph::from_edges(read_pairs(in, '\t', /*skip_header=*/false));
}

}  // namespace hedonet
