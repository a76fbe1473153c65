#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "hedonet/assortativity.hpp"
#include "hedonet/hedonometer.hpp"
#include "hedonet/record.hpp"
#include "hedonet/report.hpp"
#include "hedonet/window.hpp"
#include "oracles.hpp"

using namespace hedonet;
using nlohmann::json;
namespace ht = hedonet::testing;

namespace {

int run_cli(const std::string& args) {
  const char* bin = std::getenv("HEDONET_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "HEDONET_BIN must point at the hedonet binary");
  const std::string cmd = std::string(bin) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

json read_json(const std::filesystem::path& p) { return json::parse(read_file(p)); }

struct StreamBuilder {
  std::vector<std::string> lines;
  std::uint64_t next_id = 1;

  void message(std::uint64_t user, const std::string& text, const std::string& iso) {
    MessageRecord r;
    r.message_id = next_id++;
    r.user_id = user;
    r.text = text;
    r.timestamp = *parse_iso8601_utc(iso);
    lines.push_back(format_record_jsonl(r));
  }
  void reply(std::uint64_t user, std::uint64_t to_user, const std::string& iso,
             const std::string& text = "reply text") {
    MessageRecord r;
    r.message_id = next_id++;
    r.user_id = user;
    r.text = text;
    r.timestamp = *parse_iso8601_utc(iso);
    r.reply_to_message_id = 900000 + r.message_id;
    r.reply_to_user_id = to_user;
    lines.push_back(format_record_jsonl(r));
  }
  void write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    for (const auto& l : lines) out << l << '\n';
  }
};

std::set<std::pair<std::uint64_t, std::uint64_t>> read_edges(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::set<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::uint64_t a, b;
  while (in >> a >> b) edges.insert({a, b});
  return edges;
}

}  // namespace

TEST_CASE("build on empty input produces a manifest with zero windows") {
  ht::TempDir tmp("cli-empty");
  const auto input = tmp.path / "empty.jsonl";
  { std::ofstream out(input); }
  REQUIRE(run_cli("build --input " + input.string() + " --out " + (tmp.path / "o").string()) ==
          0);
  const json manifest = read_json(tmp.path / "o" / "manifest.json");
  CHECK(manifest["windows"].empty());
  CHECK(manifest["schema_version"] == 1);
}

TEST_CASE("build partitions a two-week fixture into hand-built graphs") {
  ht::TempDir tmp("cli-build");
  StreamBuilder sb;
  // week 0: reciprocal 1<->2, one-way 1->3, plus chatter
  sb.reply(1, 2, "2008-09-10T10:00:00Z");
  sb.reply(2, 1, "2008-09-10T10:05:00Z");
  sb.reply(1, 3, "2008-09-10T11:00:00Z");
  sb.message(3, "just words", "2008-09-11T09:00:00Z");
  sb.message(2, "more words", "2008-09-12T09:00:00Z");
  sb.message(9, "lurker", "2008-09-13T09:00:00Z");
  // week 1: reciprocal 4<->5 and 5<->6
  sb.reply(4, 5, "2008-09-17T10:00:00Z");
  sb.reply(5, 4, "2008-09-17T10:01:00Z");
  sb.reply(5, 6, "2008-09-18T10:00:00Z");
  sb.reply(6, 5, "2008-09-18T10:01:00Z");
  sb.message(4, "hello", "2008-09-19T09:00:00Z");
  sb.message(6, "bye", "2008-09-19T10:00:00Z");
  REQUIRE(sb.lines.size() == 12);

  const auto input = tmp.path / "stream.jsonl";
  sb.write(input);
  const auto out = tmp.path / "o";
  REQUIRE(run_cli("build --input " + input.string() + " --out " + out.string()) == 0);

  const json manifest = read_json(out / "manifest.json");
  REQUIRE(manifest["windows"].size() == 2);
  CHECK(manifest["counters"]["n_parsed"] == 12);
  CHECK(manifest["windows"][0]["index"] == 0);
  CHECK(manifest["windows"][1]["index"] == 1);

  CHECK(read_edges(out / "net-0.edges") ==
        std::set<std::pair<std::uint64_t, std::uint64_t>>{{1, 2}});
  CHECK(read_edges(out / "net-1.edges") ==
        std::set<std::pair<std::uint64_t, std::uint64_t>>{{4, 5}, {5, 6}});

  SUBCASE("rerun produces byte-identical artifacts") {
    const std::string before_manifest = read_file(out / "manifest.json");
    const std::string before_net = read_file(out / "net-0.edges");
    const std::string before_texts = read_file(out / "texts-0.tsv");
    REQUIRE(run_cli("build --input " + input.string() + " --out " + out.string()) == 0);
    CHECK(read_file(out / "manifest.json") == before_manifest);
    CHECK(read_file(out / "net-0.edges") == before_net);
    CHECK(read_file(out / "texts-0.tsv") == before_texts);
  }
}

TEST_CASE("stats reports C_G = 1 on the triangle fixture") {
  ht::TempDir tmp("cli-stats");
  StreamBuilder sb;
  const std::uint64_t users[3] = {1, 2, 3};
  int minute = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      char iso[32];
      std::snprintf(iso, sizeof(iso), "2008-09-10T10:%02d:00Z", minute++);
      sb.reply(users[i], users[j], iso);
    }
  const auto input = tmp.path / "tri.jsonl";
  sb.write(input);
  const auto out = tmp.path / "o";
  REQUIRE(run_cli("build --input " + input.string() + " --out " + out.string()) == 0);
  REQUIRE(run_cli("stats --out " + out.string()) == 0);

  const json stats = read_json(out / "stats.json");
  const json& s = stats["windows"][0]["stats"];
  CHECK(s["n_nodes"] == 3);
  CHECK(s["n_edges"] == 3);
  CHECK(s["global_clustering"].get<double>() == doctest::Approx(1.0));
  CHECK(s["giant_fraction"].get<double>() == doctest::Approx(1.0));
  CHECK(s["degree_assortativity_spearman"].is_null());
}

TEST_CASE("happiness scores the Table-1 sentence at 7.07") {
  ht::TempDir tmp("cli-happy");
  const auto lexicon = tmp.path / "labmt.tsv";
  ht::write_fixture_lexicon_tsv(lexicon);

  StreamBuilder sb;
  sb.message(1, "Vacation starts today, yeahhhhh!", "2008-09-10T08:00:00Z");
  const auto input = tmp.path / "msg.jsonl";
  sb.write(input);
  const auto out = tmp.path / "o";
  REQUIRE(run_cli("build --input " + input.string() + " --out " + out.string()) == 0);
  REQUIRE(run_cli("happiness --out " + out.string() + " --lexicon " + lexicon.string() +
                  " --delta-h 1.0") == 0);

  std::ifstream scores(out / "scores-0.tsv");
  std::uint64_t user, count;
  std::int64_t window;
  double h;
  REQUIRE((scores >> user >> window >> h >> count));
  CHECK(user == 1);
  CHECK(window == 0);
  CHECK(h == doctest::Approx(7.07).epsilon(1e-6));
  CHECK(count == 2);

  const json report = read_json(out / "happiness.json");
  CHECK(report["windows"][0]["n_users_scored"] == 1);
  // degree profile present; the lone user has no reciprocal edge, so no bin fills
  const json& bins = report["windows"][0]["by_degree"];
  REQUIRE(bins.is_array());
  for (const auto& bin : bins) CHECK(bin["n_users"] == 0);
}

namespace {

// A week of traffic over an ER graph with neighbor-smoothed happiness targets,
// realized as word mixes of "die" (1.74) and "love" (8.42).
void write_planted_fixture(const std::filesystem::path& input, std::uint64_t n_users,
                           double edge_p, unsigned rng_seed) {
  std::mt19937_64 rng(rng_seed);
  const auto edges = ht::er_edges(rng, n_users, edge_p);

  std::vector<std::vector<std::uint64_t>> adj(n_users + 1);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::uniform_real_distribution<double> uni(2.0, 8.0);
  std::vector<double> private_value(n_users + 1);
  for (auto& v : private_value) v = uni(rng);

  StreamBuilder sb;
  int second = 0;
  const auto iso_at = [&second]() {
    char iso[32];
    std::snprintf(iso, sizeof(iso), "2008-09-%02dT%02d:%02d:%02dZ", 9 + (second / 86400) % 6,
                  (second / 3600) % 24, (second / 60) % 60, second % 60);
    ++second;
    return std::string(iso);
  };
  for (const auto& [a, b] : edges) {
    sb.reply(a, b, iso_at());
    sb.reply(b, a, iso_at());
  }
  for (std::uint64_t u = 1; u <= n_users; ++u) {
    if (adj[u].empty()) continue;
    double target = private_value[u];
    for (const auto w : adj[u]) target += private_value[w];
    target /= static_cast<double>(adj[u].size() + 1);
    // counts of love (8.42) and die (1.74) matching the smoothed target
    const int total = 60;
    int n_love = static_cast<int>(std::lround(total * (target - 1.74) / (8.42 - 1.74)));
    n_love = std::clamp(n_love, 1, total - 1);
    std::ostringstream text;
    for (int i = 0; i < n_love; ++i) text << "love ";
    for (int i = 0; i < total - n_love; ++i) text << "die ";
    sb.message(u, text.str(), iso_at());
  }
  sb.write(input);
}

}  // namespace

TEST_CASE("assort on the planted fixture shows decaying correlations; sweep agrees") {
  ht::TempDir tmp("cli-assort");
  const auto lexicon = tmp.path / "labmt.tsv";
  ht::write_fixture_lexicon_tsv(lexicon);
  const auto input = tmp.path / "planted.jsonl";
  write_planted_fixture(input, 250, 0.016, 20250810);
  const auto out = tmp.path / "o";
  REQUIRE(run_cli("build --input " + input.string() + " --out " + out.string()) == 0);
  REQUIRE(run_cli("assort --out " + out.string() + " --lexicon " + lexicon.string() +
                  " --delta-h 1.0 --alpha 50 --hops 1,2,3") == 0);

  const json assort = read_json(out / "assort.json");
  const json& results = assort["windows"][0]["results"];
  REQUIRE(results.size() == 3);
  const double r1 = results[0]["r_spearman"].get<double>();
  const double r2 = results[1]["r_spearman"].get<double>();
  const double r3 = results[2]["r_spearman"].get<double>();
  CHECK(r1 >= r2);
  CHECK(r2 >= r3);
  CHECK(r1 > 0.15);

  SUBCASE("single-value sweep reproduces the assort numbers") {
    REQUIRE(run_cli("sweep --out " + out.string() + " --lexicon " + lexicon.string() +
                    " --delta-h 1.0 --parameter alpha --values 50 --hops 1,2,3") == 0);
    const json sweep = read_json(out / "sweep.json");
    const json& row = sweep["windows"][0]["rows"][0];
    for (int i = 0; i < 3; ++i) {
      CHECK(row["hops"][i]["r_spearman"] == results[i]["r_spearman"]);
      CHECK(row["hops"][i]["n_pairs"] == results[i]["n_pairs"]);
    }
  }

  SUBCASE("alpha sweep: pair counts never increase") {
    REQUIRE(run_cli("sweep --out " + out.string() + " --lexicon " + lexicon.string() +
                    " --delta-h 1.0 --parameter alpha --values 1,10,50 --hops 1") == 0);
    const json sweep = read_json(out / "sweep.json");
    std::uint64_t prev = UINT64_MAX;
    for (const auto& row : sweep["windows"][0]["rows"]) {
      const std::uint64_t n = row["hops"][0]["n_pairs"].get<std::uint64_t>();
      CHECK(n <= prev);
      prev = n;
    }
  }

  SUBCASE("delta_h sweep: total bag words never increase") {
    REQUIRE(run_cli("sweep --out " + out.string() + " --lexicon " + lexicon.string() +
                    " --parameter delta_h --values 0,1,2 --hops 1") == 0);
    const json sweep = read_json(out / "sweep.json");
    std::uint64_t prev = UINT64_MAX;
    for (const auto& row : sweep["windows"][0]["rows"]) {
      const std::uint64_t n = row["total_labmt_words"].get<std::uint64_t>();
      CHECK(n <= prev);
      prev = n;
    }
  }

  SUBCASE("command composition equals an in-process pipeline run") {
    std::ifstream in(input);
    StreamCounters counters;
    const auto partition = ingest_stream(in, InputFormat::jsonl, WindowSpec{}, counters);
    REQUIRE(partition.windows.size() == 1);
    const auto g = ReplyGraph::from_events(partition.windows[0].events);
    const FilteredLexicon lex(ht::fixture_lexicon(), 1.0);
    const auto bags = build_word_bags(partition.windows[0].texts, lex, 0);
    const auto scores = score_all(bags, lex);
    for (int d = 1; d <= 3; ++d) {
      const auto r = correlate(scored_pairs(g, scores, d, 50));
      CHECK(*r.r_spearman == results[d - 1]["r_spearman"].get<double>());
      CHECK(r.n_pairs == results[d - 1]["n_pairs"].get<std::uint64_t>());
    }
  }

  SUBCASE("nullmodel reruns are byte-identical for a fixed seed") {
    REQUIRE(run_cli("nullmodel --out " + out.string() + " --lexicon " + lexicon.string() +
                    " --alpha 50 --hops 1 --permutations 25 --seed 777") == 0);
    const std::string first = read_file(out / "nullmodel.json");
    REQUIRE(run_cli("nullmodel --out " + out.string() + " --lexicon " + lexicon.string() +
                    " --alpha 50 --hops 1 --permutations 25 --seed 777") == 0);
    CHECK(read_file(out / "nullmodel.json") == first);
    const json report = json::parse(first);
    CHECK(report["windows"][0]["results"][0]["observed_r"].get<double>() ==
          doctest::Approx(r1));
  }

  SUBCASE("export writes edge csv and gexf") {
    REQUIRE(run_cli("export --out " + out.string() + " --format edge_csv") == 0);
    REQUIRE(run_cli("export --out " + out.string() + " --format gexf") == 0);
    CHECK(read_file(out / "graph-0.csv").rfind("source,target", 0) == 0);
    CHECK(read_file(out / "graph-0.gexf").find("<gexf") != std::string::npos);
  }
}

TEST_CASE("coverage command reports the id-range estimate") {
  ht::TempDir tmp("cli-cov");
  StreamBuilder sb;
  sb.next_id = 100;
  for (int i = 0; i < 10; ++i) {
    sb.message(1, "hello", "2008-09-10T10:00:00Z");
    sb.next_id += 2;  // keep every 3rd id
  }
  const auto input = tmp.path / "cov.jsonl";
  sb.write(input);
  const auto out = tmp.path / "o";
  REQUIRE(run_cli("coverage --input " + input.string() + " --out " + out.string()) == 0);
  const json report = read_json(out / "coverage.json");
  const json& w = report["windows"][0];
  CHECK(w["observed"] == 10);
  CHECK(w["percent"].get<double>() == doctest::Approx(100.0 * 10 / 27.0).epsilon(1e-6));
}

TEST_CASE("missing artifacts yield a nonzero exit and a structured error") {
  ht::TempDir tmp("cli-missing");
  CHECK(run_cli("stats --out " + (tmp.path / "nowhere").string()) != 0);
}

TEST_CASE("stochastic commands require a seed") {
  ht::TempDir tmp("cli-seed");
  CHECK(run_cli("nullmodel --out " + tmp.path.string() + " --lexicon x.tsv") != 0);
  CHECK(run_cli("powerlaw --out " + tmp.path.string()) != 0);
  CHECK(run_cli("similarity --out " + tmp.path.string() + " --lexicon x.tsv") != 0);
}

TEST_CASE("wordshift splits by degree and honors exclusions") {
  ht::TempDir tmp("cli-shift");
  const auto lexicon = tmp.path / "labmt.tsv";
  ht::write_fixture_lexicon_tsv(lexicon);

  StreamBuilder sb;
  // star: hub 1 with 5 reciprocal spokes; hub talks happy, spokes talk sad
  int minute = 0;
  for (std::uint64_t leaf = 2; leaf <= 6; ++leaf) {
    char iso1[32], iso2[32];
    std::snprintf(iso1, sizeof(iso1), "2008-09-10T10:%02d:00Z", minute++);
    std::snprintf(iso2, sizeof(iso2), "2008-09-10T10:%02d:30Z", minute - 1);
    sb.reply(1, leaf, iso1);
    sb.reply(leaf, 1, iso2);
  }
  sb.message(1, "love love love happy great awards", "2008-09-10T12:00:00Z");
  for (std::uint64_t leaf = 2; leaf <= 6; ++leaf)
    sb.message(leaf, "sad tired hate bad", "2008-09-10T12:30:00Z");

  const auto input = tmp.path / "shift.jsonl";
  sb.write(input);
  const auto out = tmp.path / "o";
  REQUIRE(run_cli("build --input " + input.string() + " --out " + out.string()) == 0);
  REQUIRE(run_cli("wordshift --out " + out.string() + " --lexicon " + lexicon.string() +
                  " --split-degree 3 --exclude-words awards") == 0);

  const json report = read_json(out / "wordshift.json");
  const json& w = report["windows"][0];
  CHECK(w["h_comp"].get<double>() > w["h_ref"].get<double>());
  CHECK(w["n_users_comp"] == 1);
  CHECK(w["n_users_ref"] == 5);
  const std::string csv = read_file(out / "wordshift-0.csv");
  CHECK(csv.find("love") != std::string::npos);
  CHECK(csv.find("awards") == std::string::npos);

  // contributions in the CSV sum to h_comp - h_ref
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  double sum = 0.0;
  while (std::getline(lines, line)) {
    std::size_t p1 = line.find(',');
    std::size_t p2 = line.find(',', p1 + 1);
    std::size_t p3 = line.find(',', p2 + 1);
    sum += std::stod(line.substr(p2 + 1, p3 - p2 - 1));
  }
  CHECK(sum == doctest::Approx(w["h_comp"].get<double>() - w["h_ref"].get<double>())
                   .epsilon(1e-9));
}

TEST_CASE("similarity command emits observed and null distributions") {
  ht::TempDir tmp("cli-sim");
  const auto lexicon = tmp.path / "labmt.tsv";
  ht::write_fixture_lexicon_tsv(lexicon);
  const auto input = tmp.path / "planted.jsonl";
  write_planted_fixture(input, 60, 0.08, 7);
  const auto out = tmp.path / "o";
  REQUIRE(run_cli("build --input " + input.string() + " --out " + out.string()) == 0);
  REQUIRE(run_cli("similarity --out " + out.string() + " --lexicon " + lexicon.string() +
                  " --alpha 1 --permutations 10 --seed 5") == 0);
  const json report = read_json(out / "similarity.json");
  const json& w = report["windows"][0];
  CHECK(w["observed_mean"].get<double>() >= 0.0);
  CHECK(w["observed_mean"].get<double>() <= 1.0);
  CHECK(w["null_means"].size() == 10);
  const std::string csv = read_file(out / "similarity-0.csv");
  CHECK(csv.rfind("d_ij", 0) == 0);
}
