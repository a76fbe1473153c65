// hedonet: reciprocal-reply network construction and hedonometric analysis.
//
// Subcommands cover the full pipeline: build windowed artifacts from a message
// stream, then compute network statistics, happiness scores, assortativity
// with permutation null models, power-law fits, word shifts, and word-bag
// similarity from those artifacts.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hedonet/assortativity.hpp"
#include "hedonet/hedonometer.hpp"
#include "hedonet/lexicon.hpp"
#include "hedonet/powerlaw.hpp"
#include "hedonet/rank_stats.hpp"
#include "hedonet/record.hpp"
#include "hedonet/reply_graph.hpp"
#include "hedonet/report.hpp"
#include "hedonet/window.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hedonet;

namespace {

struct BuildOpts {
  std::string input;
  std::string format = "auto";
  std::string window = "week";
  std::string anchor = "2008-09-09";
  std::string out;
};

struct AnalysisOpts {
  std::string out;
  std::string lexicon;
  double delta_h = 1.0;
  std::uint64_t alpha = 50;
  std::vector<int> hops = {1, 2, 3};
  int permutations = 100;
  int bootstrap = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> exclude_words;
  std::uint32_t split_degree = 100;
  bool dump_pairs = false;
  std::string graph_format = "edge_csv";
  std::string sweep_parameter;
  std::vector<double> sweep_values;
};

InputFormat resolve_format(const std::string& flag, const std::string& path) {
  if (flag == "jsonl") return InputFormat::jsonl;
  if (flag == "tsv") return InputFormat::tsv;
  return fs::path(path).extension() == ".tsv" ? InputFormat::tsv : InputFormat::jsonl;
}

WindowSpec resolve_window(const std::string& window, const std::string& anchor) {
  WindowSpec spec;
  const auto g = granularity_from_name(window);
  if (!g) throw std::runtime_error("unknown window granularity: " + window);
  spec.granularity = *g;
  int y, m, d;
  if (std::sscanf(anchor.c_str(), "%d-%d-%d", &y, &m, &d) != 3 || m < 1 || m > 12 || d < 1 ||
      d > 31)
    throw std::runtime_error("bad anchor date: " + anchor);
  spec.anchor_year = y;
  spec.anchor_month = static_cast<unsigned>(m);
  spec.anchor_day = static_cast<unsigned>(d);
  return spec;
}

std::string window_file(const char* stem, std::int64_t index, const char* ext) {
  return std::string(stem) + "-" + std::to_string(index) + ext;
}

json load_manifest(const fs::path& out_dir) {
  const fs::path path = out_dir / "manifest.json";
  if (!fs::exists(path))
    throw std::runtime_error("missing artifact: " + path.string() + " (run build first)");
  return json::parse(read_file(path));
}

std::vector<std::int64_t> manifest_windows(const json& manifest) {
  std::vector<std::int64_t> windows;
  for (const auto& w : manifest.at("windows")) windows.push_back(w.at("index").get<std::int64_t>());
  return windows;
}

ReplyGraph load_graph(const fs::path& out_dir, std::int64_t w) {
  const fs::path path = out_dir / window_file("net", w, ".edges");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing artifact: " + path.string());
  return read_edge_tsv(in);
}

std::vector<std::pair<std::uint64_t, std::string>> load_texts(const fs::path& out_dir,
                                                              std::int64_t w) {
  const fs::path path = out_dir / window_file("texts", w, ".tsv");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing artifact: " + path.string());
  std::vector<std::pair<std::uint64_t, std::string>> texts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) continue;
    texts.emplace_back(std::stoull(line.substr(0, tab)), line.substr(tab + 1));
  }
  return texts;
}

std::string sanitize_text(std::string text) {
  for (char& c : text)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return text;
}

Lexicon load_lexicon_checked(const AnalysisOpts& opts) {
  if (opts.lexicon.empty()) throw std::runtime_error("--lexicon is required for this command");
  return Lexicon::load(opts.lexicon);
}

json correlation_json(int d, const CorrelationResult& r, std::uint64_t n_users_qualifying) {
  json j;
  j["d"] = d;
  j["n_pairs"] = r.n_pairs;
  j["n_users_qualifying"] = n_users_qualifying;
  j["r_spearman"] = json_opt(r.r_spearman);
  j["r_pearson"] = json_opt(r.r_pearson);
  j["p_value_spearman"] = json_opt(r.p_value_spearman);
  return j;
}

// ---------------------------------------------------------------------------

int cmd_build(const BuildOpts& opts) {
  const WindowSpec spec = resolve_window(opts.window, opts.anchor);
  const InputFormat format = resolve_format(opts.format, opts.input);

  std::ifstream in(opts.input);
  if (!in) throw std::runtime_error("cannot open input: " + opts.input);
  fs::create_directories(opts.out);

  StreamCounters counters;
  PartitionResult result = ingest_stream(in, format, spec, counters);

  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["input"] = opts.input;
  manifest["format"] = format == InputFormat::jsonl ? "jsonl" : "tsv";
  manifest["window"] = {{"granularity", std::string(granularity_name(spec.granularity))},
                        {"anchor", opts.anchor}};
  manifest["counters"] = {{"n_lines", counters.n_lines},
                          {"n_parsed", counters.n_parsed},
                          {"n_malformed", counters.n_malformed},
                          {"n_missing_required_field", counters.n_missing_required_field},
                          {"n_inconsistent_reply_fields", counters.n_inconsistent_reply_fields},
                          {"n_out_of_range", result.n_out_of_range}};
  manifest["windows"] = json::array();

  for (const auto& w : result.windows) {
    {
      std::ostringstream replies;
      for (const auto& e : w.events) replies << e.from_user << '\t' << e.to_user << '\n';
      write_atomic(fs::path(opts.out) / window_file("replies", w.index, ".tsv"), replies.str());
    }
    {
      std::ostringstream texts;
      for (const auto& [user, text] : w.texts)
        texts << user << '\t' << sanitize_text(text) << '\n';
      write_atomic(fs::path(opts.out) / window_file("texts", w.index, ".tsv"), texts.str());
    }
    const ReplyGraph g = ReplyGraph::from_events(w.events);
    {
      std::ostringstream net;
      write_edge_tsv(g, net);
      write_atomic(fs::path(opts.out) / window_file("net", w.index, ".edges"), net.str());
    }

    json wj;
    wj["index"] = w.index;
    wj["start"] = format_iso8601_utc(spec.window_start(w.index));
    wj["n_records"] = w.n_records;
    wj["n_reply_events"] = w.events.size();
    wj["n_duplicates"] = w.n_duplicates;
    wj["n_nodes"] = g.num_nodes();
    wj["n_edges"] = g.num_edges();
    if (const auto c = estimate_coverage(w)) {
      wj["coverage"] = {{"observed", c->observed},
                        {"total_estimate", c->total_estimate},
                        {"percent", c->percent}};
    } else {
      wj["coverage"] = nullptr;
    }
    wj["files"] = {{"replies", window_file("replies", w.index, ".tsv")},
                   {"texts", window_file("texts", w.index, ".tsv")},
                   {"net", window_file("net", w.index, ".edges")}};
    manifest["windows"].push_back(wj);
  }
  write_json_report(fs::path(opts.out) / "manifest.json", manifest);
  return 0;
}

int cmd_stats(const AnalysisOpts& opts) {
  const json manifest = load_manifest(opts.out);
  json report;
  report["schema_version"] = kSchemaVersion;
  report["windows"] = json::array();
  for (const std::int64_t w : manifest_windows(manifest)) {
    const ReplyGraph g = load_graph(opts.out, w);
    const NetworkStats s = compute_stats(g);
    json sj;
    sj["n_nodes"] = s.n_nodes;
    sj["n_edges"] = s.n_edges;
    sj["mean_degree"] = json_opt(s.mean_degree);
    sj["max_degree"] = s.max_degree;
    sj["global_clustering"] = json_opt(s.global_clustering);
    sj["n_components"] = s.n_components;
    sj["giant_fraction"] = json_opt(s.giant_fraction);
    sj["degree_assortativity_spearman"] = json_opt(s.degree_assortativity_spearman);
    sj["degree_assortativity_pearson"] = json_opt(s.degree_assortativity_pearson);
    report["windows"].push_back({{"index", w}, {"stats", sj}});
  }
  write_json_report(fs::path(opts.out) / "stats.json", report);
  return 0;
}

struct WindowScores {
  std::vector<WordBag> bags;
  std::vector<HappinessScore> scores;
};

WindowScores window_scores(const fs::path& out_dir, std::int64_t w, const FilteredLexicon& lex) {
  WindowScores ws;
  const auto texts = load_texts(out_dir, w);
  ws.bags = build_word_bags(texts, lex, w);
  ws.scores = score_all(ws.bags, lex);
  return ws;
}

int cmd_happiness(const AnalysisOpts& opts) {
  const json manifest = load_manifest(opts.out);
  const Lexicon lexicon = load_lexicon_checked(opts);
  const FilteredLexicon lex(lexicon, opts.delta_h);

  json report;
  report["schema_version"] = kSchemaVersion;
  report["delta_h"] = opts.delta_h;
  report["lexicon_words"] = lex.size();
  report["windows"] = json::array();

  for (const std::int64_t w : manifest_windows(manifest)) {
    const WindowScores ws = window_scores(opts.out, w, lex);
    std::ostringstream tsv;
    double sum_h = 0.0;
    for (const auto& s : ws.scores) {
      char line[128];
      std::snprintf(line, sizeof(line), "%llu\t%lld\t%.17g\t%llu\n",
                    static_cast<unsigned long long>(s.user_id), static_cast<long long>(s.window_index),
                    s.h, static_cast<unsigned long long>(s.labmt_word_count));
      tsv << line;
      sum_h += s.h;
    }
    write_atomic(fs::path(opts.out) / window_file("scores", w, ".tsv"), tsv.str());
    json wj;
    wj["index"] = w;
    wj["n_users_scored"] = ws.scores.size();
    wj["mean_h"] =
        ws.scores.empty() ? json(nullptr) : json(sum_h / static_cast<double>(ws.scores.size()));
    wj["file"] = window_file("scores", w, ".tsv");

    // mean happiness by degree bin (logarithmic edges), per window-node
    const ReplyGraph g = load_graph(opts.out, w);
    json bins = json::array();
    const auto edges = default_degree_bin_edges();
    for (const auto& bin : happiness_by_degree(g, ws.scores, edges)) {
      json bj;
      bj["degree_lo"] = bin.lo;
      bj["degree_hi"] = bin.hi ? json(*bin.hi) : json(nullptr);
      bj["mean_h"] = json_opt(bin.mean_h);
      bj["n_users"] = bin.n_users;
      bins.push_back(bj);
    }
    wj["by_degree"] = bins;
    report["windows"].push_back(wj);
  }
  write_json_report(fs::path(opts.out) / "happiness.json", report);
  return 0;
}

int cmd_assort(const AnalysisOpts& opts) {
  const json manifest = load_manifest(opts.out);
  const Lexicon lexicon = load_lexicon_checked(opts);
  const FilteredLexicon lex(lexicon, opts.delta_h);

  json report;
  report["schema_version"] = kSchemaVersion;
  report["params"] = {{"alpha", opts.alpha}, {"delta_h", opts.delta_h}, {"hops", opts.hops}};
  report["windows"] = json::array();

  for (const std::int64_t w : manifest_windows(manifest)) {
    const ReplyGraph g = load_graph(opts.out, w);
    const WindowScores ws = window_scores(opts.out, w, lex);
    json results = json::array();
    for (const int d : opts.hops) {
      const ScoredPairSet pairs = scored_pairs(g, ws.scores, d, opts.alpha);
      results.push_back(correlation_json(d, correlate(pairs), pairs.n_users_qualifying));
      if (opts.dump_pairs) {
        std::ostringstream csv;
        csv << "h_u,h_v\n";
        for (std::size_t i = 0; i < pairs.x.size(); ++i)
          csv << pairs.x[i] << ',' << pairs.y[i] << '\n';
        write_atomic(fs::path(opts.out) /
                         (std::string("pairs-") + std::to_string(w) + "-d" + std::to_string(d) +
                          ".csv"),
                     csv.str());
      }
    }
    report["windows"].push_back({{"index", w}, {"results", results}});
  }
  write_json_report(fs::path(opts.out) / "assort.json", report);
  return 0;
}

int cmd_nullmodel(const AnalysisOpts& opts) {
  const json manifest = load_manifest(opts.out);
  const Lexicon lexicon = load_lexicon_checked(opts);
  const FilteredLexicon lex(lexicon, opts.delta_h);

  json report;
  report["schema_version"] = kSchemaVersion;
  report["params"] = {{"alpha", opts.alpha},
                      {"delta_h", opts.delta_h},
                      {"hops", opts.hops},
                      {"permutations", opts.permutations},
                      {"seed", opts.seed}};
  report["windows"] = json::array();

  for (const std::int64_t w : manifest_windows(manifest)) {
    const ReplyGraph g = load_graph(opts.out, w);
    const WindowScores ws = window_scores(opts.out, w, lex);
    json results = json::array();
    for (const int d : opts.hops) {
      const NullModelResult r =
          null_model(g, ws.scores, d, opts.alpha, opts.permutations, opts.seed);
      json rj;
      rj["d"] = d;
      rj["observed_r"] = json_opt(r.observed_r);
      rj["null_mean"] = json_opt(r.null_mean);
      rj["null_std"] = json_opt(r.null_std);
      rj["empirical_p"] = json_opt(r.empirical_p);
      rj["seed"] = r.seed;
      rj["n_perm"] = r.n_perm;
      json nulls = json::array();
      for (const auto& v : r.null_rs) nulls.push_back(json_opt(v));
      rj["null_rs"] = nulls;
      results.push_back(rj);
    }
    report["windows"].push_back({{"index", w}, {"results", results}});
  }
  write_json_report(fs::path(opts.out) / "nullmodel.json", report);
  return 0;
}

int cmd_powerlaw(const AnalysisOpts& opts) {
  const json manifest = load_manifest(opts.out);
  json report;
  report["schema_version"] = kSchemaVersion;
  report["params"] = {{"bootstrap", opts.bootstrap}, {"seed", opts.seed}};
  report["windows"] = json::array();

  for (const std::int64_t w : manifest_windows(manifest)) {
    const ReplyGraph g = load_graph(opts.out, w);
    const auto degrees = degree_sequence(g);
    if (degrees.size() < 50)
      std::cerr << "warning: window " << w << " has only " << degrees.size()
                << " degrees; power-law fit below the recommended sample size\n";
    const PowerLawFit fit = fit_discrete_powerlaw(degrees);
    const GofResult gof = gof_pvalue(fit, degrees, opts.bootstrap, opts.seed);

    {
      std::ostringstream csv;
      csv << "k,ccdf\n";
      for (const auto& [k, p] : ccdf(degrees)) csv << k << ',' << p << '\n';
      write_atomic(fs::path(opts.out) / window_file("ccdf", w, ".csv"), csv.str());
    }
    json wj;
    wj["index"] = w;
    wj["alpha"] = fit.alpha;
    wj["k_min"] = fit.k_min;
    wj["D"] = fit.ks_distance;
    wj["n_tail"] = fit.n_tail;
    wj["n_total"] = fit.n_total;
    wj["p_value"] = gof.p_value;
    wj["n_bootstrap"] = gof.n_bootstrap;
    wj["seed"] = gof.seed;
    report["windows"].push_back(wj);
  }
  write_json_report(fs::path(opts.out) / "powerlaw.json", report);
  return 0;
}

int cmd_wordshift(const AnalysisOpts& opts) {
  const json manifest = load_manifest(opts.out);
  const Lexicon lexicon = load_lexicon_checked(opts);
  const FilteredLexicon lex(lexicon, opts.delta_h);

  std::vector<std::uint32_t> excluded;
  for (const auto& word : opts.exclude_words)
    if (const auto idx = lex.index_of(fold_case(word))) excluded.push_back(*idx);

  json report;
  report["schema_version"] = kSchemaVersion;
  report["split_degree"] = opts.split_degree;
  report["delta_h"] = opts.delta_h;
  report["exclude_words"] = opts.exclude_words;
  report["windows"] = json::array();

  for (const std::int64_t w : manifest_windows(manifest)) {
    const ReplyGraph g = load_graph(opts.out, w);
    const WindowScores ws = window_scores(opts.out, w, lex);

    std::vector<WordBag> low, high;
    for (const auto& bag : ws.bags) {
      const auto idx = g.index_of(bag.user_id);
      if (!idx) continue;
      (g.degree(*idx) >= opts.split_degree ? high : low).push_back(bag);
    }
    if (low.empty() || high.empty())
      throw std::runtime_error("wordshift: a degree group is empty in window " +
                               std::to_string(w));
    const WordBag ref = remove_words(merge_bags(low), excluded);
    const WordBag comp = remove_words(merge_bags(high), excluded);
    const WordShiftReport shift = word_shift(ref, comp, lex);

    std::ostringstream csv;
    csv << "rank,word,contribution,sign_class,h_avg,p_ref,p_comp\n";
    json series = json::array();
    double cumulative = 0.0;
    std::size_t rank = 1;
    for (const auto& e : shift.entries) {
      csv << rank << ',' << e.word << ',' << e.contribution << ','
          << shift_class_name(e.sign_class) << ',' << e.h_avg << ',' << e.p_ref << ','
          << e.p_comp << '\n';
      cumulative += e.contribution;
      series.push_back({{"rank", rank}, {"cumulative", cumulative}});
      ++rank;
    }
    write_atomic(fs::path(opts.out) / window_file("wordshift", w, ".csv"), csv.str());

    json wj;
    wj["index"] = w;
    wj["h_ref"] = shift.h_ref;
    wj["h_comp"] = shift.h_comp;
    wj["ref_total_words"] = shift.ref_total;
    wj["comp_total_words"] = shift.comp_total;
    wj["ref_pos_mass"] = shift.ref_pos_mass;
    wj["ref_neg_mass"] = shift.ref_neg_mass;
    wj["comp_pos_mass"] = shift.comp_pos_mass;
    wj["comp_neg_mass"] = shift.comp_neg_mass;
    wj["n_users_ref"] = low.size();
    wj["n_users_comp"] = high.size();
    wj["cumulative_contribution"] = series;
    wj["file"] = window_file("wordshift", w, ".csv");
    report["windows"].push_back(wj);
  }
  write_json_report(fs::path(opts.out) / "wordshift.json", report);
  return 0;
}

int cmd_similarity(const AnalysisOpts& opts) {
  const json manifest = load_manifest(opts.out);
  const Lexicon lexicon = load_lexicon_checked(opts);
  const FilteredLexicon lex(lexicon, opts.delta_h);

  json report;
  report["schema_version"] = kSchemaVersion;
  report["params"] = {{"alpha", opts.alpha},
                      {"delta_h", opts.delta_h},
                      {"permutations", opts.permutations},
                      {"seed", opts.seed}};
  report["windows"] = json::array();

  for (const std::int64_t w : manifest_windows(manifest)) {
    const ReplyGraph g = load_graph(opts.out, w);
    const WindowScores ws = window_scores(opts.out, w, lex);
    const SimilarityNullResult r =
        similarity_null(g, ws.bags, opts.alpha, opts.permutations, opts.seed);

    {
      std::ostringstream csv;
      csv << "d_ij\n";
      for (const double d : edge_similarities(g, ws.bags, opts.alpha)) csv << d << '\n';
      write_atomic(fs::path(opts.out) / window_file("similarity", w, ".csv"), csv.str());
    }
    json wj;
    wj["index"] = w;
    wj["observed_mean"] = r.observed_mean;
    wj["null_mean"] = r.null_mean;
    wj["null_std"] = r.null_std;
    wj["null_means"] = r.null_means;
    wj["n_edges_scored"] = r.n_edges_scored;
    wj["n_users_qualifying"] = r.n_users_qualifying;
    wj["seed"] = r.seed;
    report["windows"].push_back(wj);
  }
  write_json_report(fs::path(opts.out) / "similarity.json", report);
  return 0;
}

int cmd_coverage(const BuildOpts& opts) {
  const WindowSpec spec = resolve_window(opts.window, opts.anchor);
  const InputFormat format = resolve_format(opts.format, opts.input);
  std::ifstream in(opts.input);
  if (!in) throw std::runtime_error("cannot open input: " + opts.input);
  fs::create_directories(opts.out);

  StreamCounters counters;
  const PartitionResult result = ingest_stream(in, format, spec, counters);

  json report;
  report["schema_version"] = kSchemaVersion;
  report["windows"] = json::array();
  for (const auto& w : result.windows) {
    json wj;
    wj["index"] = w.index;
    wj["n_records"] = w.n_records;
    if (const auto c = estimate_coverage(w)) {
      wj["observed"] = c->observed;
      wj["total_estimate"] = c->total_estimate;
      wj["percent"] = c->percent;
    } else {
      wj["observed"] = w.n_records;
      wj["total_estimate"] = nullptr;
      wj["percent"] = nullptr;
    }
    report["windows"].push_back(wj);
  }
  write_json_report(fs::path(opts.out) / "coverage.json", report);
  return 0;
}

int cmd_sweep(const AnalysisOpts& opts) {
  const json manifest = load_manifest(opts.out);
  const Lexicon lexicon = load_lexicon_checked(opts);
  if (opts.sweep_values.empty()) throw std::runtime_error("sweep: --values must be nonempty");

  const bool sweep_alpha = opts.sweep_parameter == "alpha";
  if (!sweep_alpha && opts.sweep_parameter != "delta_h")
    throw std::runtime_error("sweep: --parameter must be alpha or delta_h");

  json report;
  report["schema_version"] = kSchemaVersion;
  report["parameter"] = opts.sweep_parameter;
  report["values"] = opts.sweep_values;
  report["hops"] = opts.hops;
  report["windows"] = json::array();

  for (const std::int64_t w : manifest_windows(manifest)) {
    const ReplyGraph g = load_graph(opts.out, w);
    json rows = json::array();

    // reuse the built graph; alpha sweeps also reuse the scored bags
    std::optional<FilteredLexicon> fixed_lex;
    std::optional<WindowScores> fixed_scores;
    if (sweep_alpha) {
      fixed_lex.emplace(lexicon, opts.delta_h);
      fixed_scores = window_scores(opts.out, w, *fixed_lex);
    }

    for (const double value : opts.sweep_values) {
      const WindowScores* ws = nullptr;
      std::optional<FilteredLexicon> local_lex;
      std::optional<WindowScores> local_scores;
      std::uint64_t alpha = opts.alpha;
      if (sweep_alpha) {
        alpha = static_cast<std::uint64_t>(value);
        ws = &*fixed_scores;
      } else {
        local_lex.emplace(lexicon, value);
        local_scores = window_scores(opts.out, w, *local_lex);
        ws = &*local_scores;
      }

      std::uint64_t total_words = 0;
      for (const auto& bag : ws->bags) total_words += bag.total_count;

      json row;
      row["value"] = value;
      row["total_labmt_words"] = total_words;
      json hops = json::array();
      for (const int d : opts.hops) {
        const ScoredPairSet pairs = scored_pairs(g, ws->scores, d, alpha);
        hops.push_back(correlation_json(d, correlate(pairs), pairs.n_users_qualifying));
      }
      row["hops"] = hops;
      rows.push_back(row);
    }
    report["windows"].push_back({{"index", w}, {"rows", rows}});
  }
  write_json_report(fs::path(opts.out) / "sweep.json", report);
  return 0;
}

int cmd_export(const AnalysisOpts& opts) {
  const json manifest = load_manifest(opts.out);
  const bool gexf = opts.graph_format == "gexf";
  if (!gexf && opts.graph_format != "edge_csv")
    throw std::runtime_error("export: --format must be edge_csv or gexf");
  for (const std::int64_t w : manifest_windows(manifest)) {
    const ReplyGraph g = load_graph(opts.out, w);
    std::ostringstream out;
    if (gexf)
      write_gexf(g, out);
    else
      write_edge_csv(g, out);
    write_atomic(fs::path(opts.out) / window_file("graph", w, gexf ? ".gexf" : ".csv"),
                 out.str());
  }
  return 0;
}

void add_common_analysis_flags(CLI::App* cmd, AnalysisOpts& opts, bool with_lexicon) {
  cmd->add_option("--out", opts.out, "artifact/report directory")->required();
  if (with_lexicon) {
    cmd->add_option("--lexicon", opts.lexicon, "labMT-format lexicon TSV");
    cmd->add_option("--delta-h", opts.delta_h, "stop-word exclusion half-width")
        ->check(CLI::NonNegativeNumber);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reciprocal-reply network + hedonometer analysis toolkit"};
  app.require_subcommand(1);

  BuildOpts build_opts;
  AnalysisOpts opts;

  auto* build = app.add_subcommand("build", "ingest a message stream into window artifacts");
  build->add_option("--input", build_opts.input, "message stream (JSONL or TSV)")->required();
  build->add_option("--format", build_opts.format, "input format: auto|jsonl|tsv");
  build->add_option("--window", build_opts.window, "granularity: day|week|month");
  build->add_option("--anchor", build_opts.anchor, "anchor date YYYY-MM-DD");
  build->add_option("--out", build_opts.out, "output directory")->required();

  auto* stats = app.add_subcommand("stats", "network statistics per window");
  add_common_analysis_flags(stats, opts, false);

  auto* happiness = app.add_subcommand("happiness", "per-user happiness scores");
  add_common_analysis_flags(happiness, opts, true);

  auto* assort = app.add_subcommand("assort", "happiness assortativity at 1..3 links");
  add_common_analysis_flags(assort, opts, true);
  assort->add_option("--alpha", opts.alpha, "labMT word-count threshold per user")
      ->check(CLI::PositiveNumber);
  assort->add_option("--hops", opts.hops, "distances to evaluate")->delimiter(',');
  assort->add_flag("--dump-pairs", opts.dump_pairs, "write (h_u,h_v) CSV per distance");

  auto* nullmodel = app.add_subcommand("nullmodel", "permutation null for assortativity");
  add_common_analysis_flags(nullmodel, opts, true);
  nullmodel->add_option("--alpha", opts.alpha)->check(CLI::PositiveNumber);
  nullmodel->add_option("--hops", opts.hops)->delimiter(',');
  nullmodel->add_option("--permutations", opts.permutations)->check(CLI::PositiveNumber);
  nullmodel->add_option("--seed", opts.seed, "RNG seed")->required();

  auto* powerlaw = app.add_subcommand("powerlaw", "discrete power-law fit of the degree tail");
  add_common_analysis_flags(powerlaw, opts, false);
  powerlaw->add_option("--bootstrap", opts.bootstrap, "bootstrap replicas")
      ->check(CLI::PositiveNumber);
  powerlaw->add_option("--seed", opts.seed, "RNG seed")->required();

  auto* wordshift = app.add_subcommand("wordshift", "word-shift between degree groups");
  add_common_analysis_flags(wordshift, opts, true);
  wordshift->add_option("--split-degree", opts.split_degree, "degree split between groups")
      ->check(CLI::PositiveNumber);
  wordshift->add_option("--exclude-words", opts.exclude_words, "words to drop before the shift")
      ->delimiter(',');

  auto* similarity = app.add_subcommand("similarity", "word-bag similarity across edges");
  add_common_analysis_flags(similarity, opts, true);
  similarity->add_option("--alpha", opts.alpha)->check(CLI::PositiveNumber);
  similarity->add_option("--permutations", opts.permutations)->check(CLI::PositiveNumber);
  similarity->add_option("--seed", opts.seed, "RNG seed")->required();

  auto* coverage = app.add_subcommand("coverage", "sample coverage estimate per window");
  coverage->add_option("--input", build_opts.input)->required();
  coverage->add_option("--format", build_opts.format);
  coverage->add_option("--window", build_opts.window);
  coverage->add_option("--anchor", build_opts.anchor);
  coverage->add_option("--out", build_opts.out)->required();

  auto* sweep = app.add_subcommand("sweep", "rerun assortativity across parameter values");
  add_common_analysis_flags(sweep, opts, true);
  sweep->add_option("--parameter", opts.sweep_parameter, "alpha or delta_h")->required();
  sweep->add_option("--values", opts.sweep_values, "sweep values")->delimiter(',')->required();
  sweep->add_option("--alpha", opts.alpha)->check(CLI::PositiveNumber);
  sweep->add_option("--hops", opts.hops)->delimiter(',');

  auto* exportg = app.add_subcommand("export", "export per-window graphs");
  add_common_analysis_flags(exportg, opts, false);
  exportg->add_option("--format", opts.graph_format, "edge_csv or gexf");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(build_opts);
    if (stats->parsed()) return cmd_stats(opts);
    if (happiness->parsed()) return cmd_happiness(opts);
    if (assort->parsed()) return cmd_assort(opts);
    if (nullmodel->parsed()) return cmd_nullmodel(opts);
    if (powerlaw->parsed()) return cmd_powerlaw(opts);
    if (wordshift->parsed()) return cmd_wordshift(opts);
    if (similarity->parsed()) return cmd_similarity(opts);
    if (coverage->parsed()) return cmd_coverage(build_opts);
    if (sweep->parsed()) return cmd_sweep(opts);
    if (exportg->parsed()) return cmd_export(opts);
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
