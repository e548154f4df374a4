#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "termcut/bench.hpp"
#include "termcut/contraction.hpp"
#include "termcut/equal_size.hpp"
#include "termcut/error.hpp"
#include "termcut/metrics.hpp"
#include "termcut/report.hpp"
#include "termcut/tsecd.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace termcut;

namespace {

constexpr std::string_view kKarate = "@karate";

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::io_error, "sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Inputs

struct Input {
  LoadedGraph network;
  std::optional<GroundTruth> truth;
  json sources = json::object();
};

Input load_input(const std::string& graph_arg, const std::string& truth_arg) {
  Input in;
  if (graph_arg == kKarate) {
    Benchmark bench = karate_fixture();
    in.network = std::move(bench.network);
    std::ostringstream text;
    write_edge_list(text, in.network.graph, in.network.ids);
    in.sources["graph"] = {{"path", graph_arg}, {"sha256", sha256_hex(text.str())}};
    if (truth_arg == kKarate) {
      in.truth = std::move(bench.truth);
      in.sources["truth"] = {{"path", truth_arg}};
    }
  } else {
    const std::string text = read_file(graph_arg);
    std::istringstream stream(text);
    in.network = parse_edge_list(stream, graph_arg);
    in.sources["graph"] = {{"path", graph_arg}, {"sha256", sha256_hex(text)}};
  }
  if (!truth_arg.empty() && !in.truth) {
    if (truth_arg == kKarate) fail(ErrorCode::invalid_argument, "@karate truth needs the @karate graph");
    const std::string text = read_file(truth_arg);
    std::istringstream stream(text);
    in.truth = parse_ground_truth(stream, in.network.ids, truth_arg);
    in.sources["truth"] = {{"path", truth_arg}, {"sha256", sha256_hex(text)}};
  }
  return in;
}

NodeId node_of(const IdMap& ids, std::int64_t original) {
  const auto u = ids.find(original);
  if (!u) fail(ErrorCode::invalid_node, "node " + std::to_string(original) + " is not in the graph");
  return *u;
}

json original_ids(const IdMap& ids, const NodeSet& nodes) {
  json out = json::array();
  for (NodeId u : nodes) out.push_back(ids.at(u));
  return out;
}

// ---------------------------------------------------------------------------
// Outputs

// Everything that determines the output bytes goes into `resolved`; its hash
// is stamped on every file. Timing is recorded beside it and never hashed.
class Run {
 public:
  Run(std::string command, fs::path out_dir) : out_dir_(std::move(out_dir)), start_(std::chrono::steady_clock::now()) {
    resolved_["command"] = std::move(command);
    resolved_["version"] = TERMCUT_VERSION;
  }

  json& operator[](const char* key) { return resolved_[key]; }

  const std::string& hash() {
    if (hash_.empty()) hash_ = sha256_hex(resolved_.dump());
    return hash_;
  }

  void write(const std::string& name, const std::string& body, bool stamp = true) {
    fs::create_directories(out_dir_);
    const fs::path path = out_dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
    if (stamp) out << "# manifest " << hash() << '\n';
    out << body;
    if (!out) fail(ErrorCode::io_error, "write failed for " + path.string());
    files_.push_back(name);
  }

  void write_json(const std::string& name, json doc) {
    json out;
    out["manifest"] = hash();
    for (auto& [key, value] : doc.items()) out[key] = value;
    write(name, out.dump(2) + "\n", false);
  }

  void finish() {
    json manifest;
    manifest["hash"] = hash();
    manifest["run"] = resolved_;
    manifest["files"] = files_;
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start_;
    manifest["timing"] = {{"seconds", took.count()}};
    write("manifest.json", manifest.dump(2) + "\n", false);
    spdlog::info("wrote {} files to {} (manifest {})", files_.size() + 1, out_dir_.string(), hash());
  }

 private:
  json resolved_;
  fs::path out_dir_;
  std::chrono::steady_clock::time_point start_;
  std::string hash_;
  std::vector<std::string> files_;
};

void write_reports(Run& run, const LoadedGraph& net, const Partition& p, const QualityReport& report, json extra) {
  std::ostringstream part;
  write_partition(part, p, net.ids);
  run.write("partition.txt", part.str());

  std::ostringstream csv;
  write_report_csv(csv, report);
  run.write("report.csv", csv.str());

  json doc;
  doc["result"] = std::move(extra);
  doc["report"] = report_json(report);
  run.write_json("report.json", std::move(doc));
  run.finish();
}

QualityReport evaluate_with(const Input& in, const Partition& p) {
  return in.truth ? evaluate(in.network.graph, p, in.truth->partition) : evaluate(in.network.graph, p);
}

void print_summary(const QualityReport& report) {
  std::cout << "communities " << report.rows.size() << "\n";
  std::cout << "mean conductance " << format_cell(report[Metric::conductance].mean) << "\n";
  if (report.truth) std::cout << "misclassified " << report.truth->misclassified << "\n";
}

// ---------------------------------------------------------------------------
// Option parsing helpers

struct Common {
  std::string graph;
  std::string truth;
  int k = 2;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::size_t jobs = 1;
  std::string out_dir = ".";

  void add(CLI::App* app, bool with_k = true, bool with_seed = false) {
    app->add_option("--graph", graph, "edge-list file or @karate")->required();
    app->add_option("--truth", truth, "ground-truth community file (or @karate)");
    if (with_k) app->add_option("--k", k, "number of communities")->required();
    if (with_seed) seed_opt = app->add_option("--seed", seed, "master seed; drawn and recorded when absent");
    app->add_option("--jobs", jobs, "worker threads, 0 = all cores")->capture_default_str();
    app->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  }

  std::uint64_t resolve_seed() const {
    if (seed_opt && *seed_opt) return seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
};

struct TsecdFlags {
  int setting = 4;
  CLI::Option* setting_opt = nullptr;
  int p = 0;
  CLI::Option* p_opt = nullptr;
  int l = 0;
  CLI::Option* l_opt = nullptr;
  std::string pool = "degree";
  std::string cut = "pairwise";
  std::string aggregate = "mean";
  std::string overlap = "trim";

  void add(CLI::App* app, bool with_setting) {
    if (with_setting) {
      setting_opt = app->add_option("--setting", setting, "parameter preset 1..4")->check(CLI::Range(1, 4));
      p_opt = app->add_option("--p", p, "pool size")->excludes(setting_opt);
      l_opt = app->add_option("--l", l, "local-area size")->excludes(setting_opt);
    }
    app->add_option("--pool", pool, "degree | centrality[:H]")->capture_default_str();
    app->add_option("--cut", cut, "pairwise | isolating")
        ->check(CLI::IsMember({"pairwise", "isolating"}))
        ->capture_default_str();
    app->add_option("--aggregate", aggregate, "mean | max")->check(CLI::IsMember({"mean", "max"}))->capture_default_str();
    app->add_option("--overlap", overlap, "trim | skip (intersecting local areas)")
        ->check(CLI::IsMember({"trim", "skip"}))
        ->capture_default_str();
  }

  TsecdConfig base(std::size_t jobs) const {
    TsecdConfig cfg;
    if (pool == "degree") {
      cfg.pool_rule = PoolRule::degree;
    } else if (pool.rfind("centrality", 0) == 0) {
      cfg.pool_rule = PoolRule::centrality;
      const std::string rest = pool.substr(10);
      if (!rest.empty()) {
        if (rest[0] != ':') fail(ErrorCode::invalid_argument, "expected centrality:H, got " + pool);
        try {
          cfg.centrality_hops = std::stoi(rest.substr(1));
        } catch (const std::exception&) {
          fail(ErrorCode::invalid_argument, "bad hop count in " + pool);
        }
      }
    } else {
      fail(ErrorCode::invalid_argument, "unknown pool rule " + pool);
    }
    cfg.cut_rule = cut == "isolating" ? CutRule::isolating : CutRule::pairwise;
    cfg.aggregate = aggregate == "max" ? AggregateRule::max : AggregateRule::mean;
    cfg.overlap = overlap == "skip" ? OverlapRule::skip : OverlapRule::trim;
    cfg.jobs = jobs;
    return cfg;
  }
};

json config_json(const TsecdConfig& cfg) {
  return {{"k", cfg.k},
          {"p", cfg.pool_size},
          {"l", cfg.radius},
          {"pool", cfg.pool_rule == PoolRule::degree ? "degree" : "centrality"},
          {"centrality_hops", cfg.centrality_hops},
          {"cut", cfg.cut_rule == CutRule::pairwise ? "pairwise" : "isolating"},
          {"aggregate", cfg.aggregate == AggregateRule::mean ? "mean" : "max"},
          {"overlap", cfg.overlap == OverlapRule::trim ? "trim" : "skip"}};
}

// ---------------------------------------------------------------------------
// Commands

int cmd_tsecd(const Common& c, const TsecdFlags& f) {
  Input in = load_input(c.graph, c.truth);
  const WeightedGraph& g = in.network.graph;
  TsecdConfig cfg = f.base(c.jobs);
  if (*f.p_opt || *f.l_opt) {
    cfg = preset_config(Setting::four, g.node_count(), c.k, cfg);
    if (*f.p_opt) cfg.pool_size = f.p;
    if (*f.l_opt) cfg.radius = f.l;
  } else {
    cfg = preset_config(static_cast<Setting>(f.setting), g.node_count(), c.k, cfg);
  }

  Run run("detect tsecd", c.out_dir);
  run["inputs"] = in.sources;
  run["parameters"] = config_json(cfg);
  if (!*f.p_opt && !*f.l_opt) run["parameters"]["setting"] = f.setting;

  TsecdResult r = detect(g, cfg);
  QualityReport report = evaluate_with(in, r.partition);
  json extra = {{"algorithm", "tsecd"},
                {"score", r.score},
                {"cut_weight", r.cut.total_weight()},
                {"terminals", original_ids(in.network.ids, r.terminals)},
                {"candidates", r.diagnostics.candidates},
                {"skipped", r.diagnostics.skipped},
                {"trimmed", r.diagnostics.trimmed},
                {"discarded", r.diagnostics.discarded},
                {"evaluated", r.diagnostics.evaluated}};
  write_reports(run, in.network, r.partition, report, std::move(extra));
  print_summary(report);
  return 0;
}

struct NmbcdFlags {
  std::uint64_t runs = 0;
  CLI::Option* runs_opt = nullptr;
  double pbar = 0.0;
  CLI::Option* pbar_opt = nullptr;
  double c = 2.0;
  std::string predicate = "none";
  std::string selection = "uniform";
};

FeasibilityPredicate parse_predicate(const std::string& spec, const LoadedGraph& net) {
  if (spec == "none") return FeasibilityPredicate::always();
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "separate") {
      NodeSet nodes;
      std::stringstream ss(arg);
      std::string item;
      while (std::getline(ss, item, ',')) nodes.push_back(node_of(net.ids, std::stoll(item)));
      if (nodes.size() < 2) fail(ErrorCode::invalid_argument, "separate: needs at least two node ids");
      return FeasibilityPredicate::designated_separation(net.graph, std::move(nodes));
    }
    if (kind == "minsize") return FeasibilityPredicate::min_size(std::stoull(arg));
  } catch (const std::logic_error&) {
    fail(ErrorCode::invalid_argument, "cannot parse predicate '" + spec + "'");
  }
  fail(ErrorCode::invalid_argument, "unknown predicate '" + spec + "' (none, separate:<ids>, minsize:<t>)");
}

int cmd_nmbcd(const Common& c, const NmbcdFlags& f) {
  Input in = load_input(c.graph, c.truth);
  const WeightedGraph& g = in.network.graph;
  const FeasibilityPredicate pred = parse_predicate(f.predicate, in.network);
  RunBudget budget;
  if (*f.runs_opt) {
    budget = fixed_budget(f.runs);
  } else if (*f.pbar_opt) {
    budget = run_budget(f.pbar, f.c);
  } else {
    budget = default_budget(g.node_count(), c.k, f.c);
  }
  ContractionConfig cfg;
  cfg.k = c.k;
  cfg.seed = c.resolve_seed();
  cfg.selection = f.selection == "edge-weighted" ? PairSelection::edge_weighted : PairSelection::uniform;
  cfg.jobs = c.jobs;

  Run run("detect nmbcd", c.out_dir);
  run["inputs"] = in.sources;
  run["parameters"] = {{"k", cfg.k},
                       {"runs", budget.runs},
                       {"p_bar", budget.p_bar},
                       {"c", budget.c},
                       {"predicate", f.predicate},
                       {"selection", f.selection}};
  run["seed"] = cfg.seed;

  const auto r = detect_customized(g, cfg, pred, budget);
  if (!r) {
    fail(ErrorCode::no_feasible_candidate,
         "none of the " + std::to_string(budget.runs) + " runs satisfied predicate " + pred.name());
  }
  QualityReport report = evaluate_with(in, r->partition);
  json extra = {{"algorithm", "nmbcd"},
                {"cut_weight", r->cut_weight},
                {"winning_run", r->run},
                {"runs", r->runs},
                {"feasible_runs", r->feasible_runs},
                {"guarantee", budget.guarantee}};
  write_reports(run, in.network, r->partition, report, std::move(extra));
  print_summary(report);
  return 0;
}

struct EqualFlags {
  std::uint64_t iterations = 100;
  double target = 0.0;
  CLI::Option* target_opt = nullptr;
  bool allow_near_equal = false;
};

int cmd_equal(const Common& c, const EqualFlags& f) {
  Input in = load_input(c.graph, c.truth);
  EqualConfig cfg;
  cfg.k = c.k;
  cfg.iterations = f.iterations;
  if (*f.target_opt) cfg.target = f.target;
  cfg.seed = c.resolve_seed();
  cfg.allow_near_equal = f.allow_near_equal;
  cfg.jobs = c.jobs;

  Run run("detect equal", c.out_dir);
  run["inputs"] = in.sources;
  run["parameters"] = {{"k", cfg.k}, {"iterations", cfg.iterations}, {"allow_near_equal", cfg.allow_near_equal}};
  if (cfg.target) run["parameters"]["target"] = *cfg.target;
  run["seed"] = cfg.seed;

  const EqualResult r = detect_equal(in.network.graph, cfg);
  if (r.near_equal) spdlog::warn("n is not divisible by k: sizes differ by one and the 3-approximation does not apply");
  QualityReport report = evaluate_with(in, r.partition);
  json extra = {{"algorithm", "equal"},
                {"cut_weight", r.cut_weight},
                {"terminals", original_ids(in.network.ids, r.terminals)},
                {"winning_iteration", r.iteration},
                {"iterations_run", r.iterations_run},
                {"near_equal", r.near_equal},
                {"target_reached", r.target_reached}};
  write_reports(run, in.network, r.partition, report, std::move(extra));
  print_summary(report);
  return 0;
}

int cmd_metrics(const Common& c, const std::string& partition_path) {
  Input in = load_input(c.graph, c.truth);
  const std::string text = read_file(partition_path);
  std::istringstream stream(text);
  const Partition p = parse_ground_truth(stream, in.network.ids, partition_path).partition;
  in.sources["partition"] = {{"path", partition_path}, {"sha256", sha256_hex(text)}};

  Run run("metrics", c.out_dir);
  run["inputs"] = in.sources;
  QualityReport report = evaluate_with(in, p);
  std::ostringstream csv;
  write_report_csv(csv, report);
  run.write("report.csv", csv.str());
  run.write_json("report.json", {{"report", report_json(report)}});
  run.finish();
  print_summary(report);
  return 0;
}

int cmd_generate(const PlantedConfig& cfg, bool seed_given, const std::string& out_dir) {
  PlantedConfig resolved = cfg;
  if (!seed_given) {
    std::random_device rd;
    resolved.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  const Benchmark bench = generate_planted(resolved);
  Run run("generate", out_dir);
  run["parameters"] = {{"communities", resolved.communities},
                       {"size", resolved.community_size},
                       {"z_in", resolved.z_in},
                       {"z_out", resolved.z_out}};
  run["seed"] = resolved.seed;
  std::ostringstream net;
  write_edge_list(net, bench.network.graph, bench.network.ids);
  run.write("network.dat", net.str());
  std::ostringstream com;
  write_partition(com, bench.truth.partition, bench.network.ids);
  run.write("community.dat", com.str());
  run.finish();
  std::cout << "nodes " << bench.network.graph.node_count() << "\nedges " << bench.network.graph.edge_count() << "\n";
  return 0;
}

int cmd_sweep(const Common& c, const TsecdFlags& f, const std::vector<int>& settings) {
  Input in = load_input(c.graph, c.truth);
  const TsecdConfig base = f.base(c.jobs);
  std::vector<Setting> presets;
  for (int s : settings) {
    if (s < 1 || s > 4) fail(ErrorCode::invalid_argument, "settings must be in 1..4");
    presets.push_back(static_cast<Setting>(s));
  }

  Run run("sweep", c.out_dir);
  run["inputs"] = in.sources;
  run["parameters"] = config_json(base);
  run["parameters"]["k"] = c.k;
  run["parameters"]["settings"] = settings;

  const auto rows = detect_sweep(in.network.graph, presets, c.k, in.truth ? &in.truth->partition : nullptr, base);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  run.write("sweep.csv", csv.str());
  run.write_json("sweep.json", {{"rows", sweep_json(rows)}});
  run.finish();
  for (const SweepRow& row : rows) {
    std::cout << row.label << ' '
              << (row.report ? format_cell((*row.report)[Metric::conductance].mean) : std::string("infeasible"));
    if (row.misclassified) std::cout << " misclassified " << *row.misclassified;
    std::cout << '\n';
  }
  return 0;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("termcut");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("termcut: %l: %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("TERMINALCUT_LOG")) {
    const auto level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string_view(env) != "off") {
      spdlog::warn("unknown TERMINALCUT_LOG level '{}'", env);
    } else {
      spdlog::set_level(level);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Terminal-set-enhanced community detection"};
  app.set_version_flag("--version", std::string(TERMCUT_VERSION));
  app.require_subcommand(1);

  auto* detect_cmd = app.add_subcommand("detect", "detect communities");
  detect_cmd->require_subcommand(1);

  Common tsecd_common;
  TsecdFlags tsecd_flags;
  auto* tsecd_cmd = detect_cmd->add_subcommand("tsecd", "terminal-set-enhanced detection");
  tsecd_common.add(tsecd_cmd);
  tsecd_flags.add(tsecd_cmd, true);

  Common nmbcd_common;
  NmbcdFlags nmbcd_flags;
  auto* nmbcd_cmd = detect_cmd->add_subcommand("nmbcd", "random node merging, customized detection");
  nmbcd_common.add(nmbcd_cmd, true, true);
  nmbcd_flags.runs_opt = nmbcd_cmd->add_option("--runs", nmbcd_flags.runs, "number of runs");
  nmbcd_flags.pbar_opt =
      nmbcd_cmd->add_option("--pbar", nmbcd_flags.pbar, "per-run success lower bound")->excludes(nmbcd_flags.runs_opt);
  nmbcd_cmd->add_option("--c", nmbcd_flags.c, "confidence constant")->capture_default_str();
  nmbcd_cmd->add_option("--predicate", nmbcd_flags.predicate, "none | separate:<ids> | minsize:<t>")
      ->capture_default_str();
  nmbcd_cmd->add_option("--selection", nmbcd_flags.selection, "uniform | edge-weighted")
      ->check(CLI::IsMember({"uniform", "edge-weighted"}))
      ->capture_default_str();

  Common equal_common;
  EqualFlags equal_flags;
  auto* equal_cmd = detect_cmd->add_subcommand("equal", "equal-sized detection by min-star assignment");
  equal_common.add(equal_cmd, true, true);
  equal_cmd->add_option("--iterations", equal_flags.iterations, "terminal samples")->capture_default_str();
  equal_flags.target_opt = equal_cmd->add_option("--target", equal_flags.target, "stop at this cut weight");
  equal_cmd->add_flag("--allow-near-equal", equal_flags.allow_near_equal, "allow k not dividing n");

  Common metrics_common;
  std::string partition_path;
  auto* metrics_cmd = app.add_subcommand("metrics", "quality report for a given partition");
  metrics_common.add(metrics_cmd, false);
  metrics_cmd->add_option("--partition", partition_path, "partition file (node community)")->required();

  PlantedConfig planted;
  std::string generate_dir = ".";
  auto* generate_cmd = app.add_subcommand("generate", "planted-partition benchmark");
  generate_cmd->add_option("--communities", planted.communities)->capture_default_str();
  generate_cmd->add_option("--size", planted.community_size)->capture_default_str();
  generate_cmd->add_option("--z-in", planted.z_in)->capture_default_str();
  generate_cmd->add_option("--z-out", planted.z_out)->capture_default_str();
  auto* generate_seed = generate_cmd->add_option("--seed", planted.seed);
  generate_cmd->add_option("--out-dir", generate_dir)->capture_default_str();

  Common sweep_common;
  TsecdFlags sweep_flags;
  std::vector<int> settings = {1, 2, 3, 4};
  auto* sweep_cmd = app.add_subcommand("sweep", "compare TSECD parameter settings");
  sweep_common.add(sweep_cmd);
  sweep_flags.add(sweep_cmd, false);
  sweep_cmd->add_option("--settings", settings, "presets to run")->delimiter(',')->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*tsecd_cmd) return cmd_tsecd(tsecd_common, tsecd_flags);
    if (*nmbcd_cmd) return cmd_nmbcd(nmbcd_common, nmbcd_flags);
    if (*equal_cmd) return cmd_equal(equal_common, equal_flags);
    if (*metrics_cmd) return cmd_metrics(metrics_common, partition_path);
    if (*generate_cmd) return cmd_generate(planted, static_cast<bool>(*generate_seed), generate_dir);
    if (*sweep_cmd) return cmd_sweep(sweep_common, sweep_flags, settings);
  } catch (const Error& e) {
    std::cerr << "termcut: error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "termcut: unexpected failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
