#include "termcut/bench.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "termcut/error.hpp"

namespace termcut {

IdMap IdMap::identity(std::size_t n, std::int64_t first) {
  IdMap map;
  map.original.resize(n);
  for (std::size_t i = 0; i < n; ++i) map.original[i] = first + static_cast<std::int64_t>(i);
  return map;
}

std::optional<NodeId> IdMap::find(std::int64_t id) const {
  const auto it = std::lower_bound(original.begin(), original.end(), id);
  if (it == original.end() || *it != id) return std::nullopt;
  return static_cast<NodeId>(it - original.begin());
}

// ---------------------------------------------------------------------------
// Planted partition

double PlantedConfig::p_in() const {
  return community_size > 1 ? z_in / (community_size - 1) : 0.0;
}

double PlantedConfig::p_out() const {
  return communities > 1 ? z_out / (static_cast<double>(community_size) * (communities - 1)) : 0.0;
}

void PlantedConfig::validate() const {
  if (communities < 1 || community_size < 1) {
    fail(ErrorCode::invalid_argument, "planted config needs at least one community of size >= 1");
  }
  if (z_in < 0.0 || z_out < 0.0) fail(ErrorCode::invalid_argument, "expected degrees must be >= 0");
  if (p_in() > 1.0) {
    fail(ErrorCode::invalid_argument, "z_in=" + std::to_string(z_in) + " gives p_in > 1 for size " +
                                          std::to_string(community_size));
  }
  if (p_out() > 1.0) fail(ErrorCode::invalid_argument, "z_out gives p_out > 1");
}

Benchmark generate_planted(const PlantedConfig& cfg) {
  cfg.validate();
  const std::size_t n = static_cast<std::size_t>(cfg.communities) * static_cast<std::size_t>(cfg.community_size);
  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution intra(cfg.p_in());
  std::bernoulli_distribution inter(cfg.p_out());

  std::vector<int> block(n);
  for (std::size_t u = 0; u < n; ++u) block[u] = static_cast<int>(u / static_cast<std::size_t>(cfg.community_size));

  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const bool take = block[u] == block[v] ? intra(rng) : inter(rng);
      if (take) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), 1.0});
    }
  }

  Benchmark bench;
  bench.network.graph = WeightedGraph::from_edges(n, edges);
  bench.network.ids = IdMap::identity(n, 1);
  bench.truth.partition = Partition::from_labels(std::span<const int>(block));
  bench.truth.label = "planted(k=" + std::to_string(cfg.communities) + ",s=" +
                      std::to_string(cfg.community_size) + ",seed=" + std::to_string(cfg.seed) + ")";
  return bench;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

[[noreturn]] void parse_fail(std::string_view source, std::size_t line, const std::string& what) {
  fail(ErrorCode::parse_error, std::string(source) + ":" + std::to_string(line) + ": " + what);
}

std::int64_t parse_id(std::string_view tok, std::string_view source, std::size_t line) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 0) {
    parse_fail(source, line, "expected a nonnegative integer node id, got '" + std::string(tok) + "'");
  }
  return value;
}

double parse_weight(std::string_view tok, std::string_view source, std::size_t line) {
  // from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !(value >= 0.0)) {
    parse_fail(source, line, "expected a nonnegative weight, got '" + std::string(tok) + "'");
  }
  return value;
}

struct PairListing {
  std::int64_t first_u = 0;  // direction seen first
  double forward = 0.0;
  double backward = 0.0;
  int forward_count = 0;
  int backward_count = 0;
};

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open " + path.string());
  return in;
}

std::string format_weight(double w) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, ptr);
}

}  // namespace

LoadedGraph parse_edge_list(std::istream& in, std::string_view source) {
  std::map<std::pair<std::int64_t, std::int64_t>, PairListing> pairs;
  std::vector<std::int64_t> ids;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    const auto tokens = tokenize(text);
    if (tokens.empty()) continue;
    if (tokens.size() > 3) parse_fail(source, line_no, "expected 'u v [w]'");
    const std::int64_t u = parse_id(tokens[0], source, line_no);
    ids.push_back(u);
    if (tokens.size() == 1) continue;
    const std::int64_t v = parse_id(tokens[1], source, line_no);
    const double w = tokens.size() == 3 ? parse_weight(tokens[2], source, line_no) : 1.0;
    if (u == v) parse_fail(source, line_no, "self-loop on node " + std::to_string(u));
    ids.push_back(v);

    auto [it, inserted] = pairs.try_emplace({std::min(u, v), std::max(u, v)});
    PairListing& p = it->second;
    if (inserted) p.first_u = u;
    if (u == p.first_u) {
      p.forward += w;
      ++p.forward_count;
    } else {
      p.backward += w;
      ++p.backward_count;
    }
  }
  if (in.bad()) fail(ErrorCode::io_error, "read error in " + std::string(source));

  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  LoadedGraph loaded;
  loaded.ids.original = std::move(ids);
  std::size_t repeated = 0;
  std::size_t asymmetric = 0;
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [key, p] : pairs) {
    if (p.forward_count > 1 || p.backward_count > 1) ++repeated;
    if (p.backward_count > 0 && p.backward != p.forward) ++asymmetric;
    edges.push_back({*loaded.ids.find(key.first), *loaded.ids.find(key.second), p.forward});
  }
  if (repeated > 0) {
    loaded.warnings.push_back(std::to_string(repeated) +
                              " node pairs listed more than once in the same direction; weights summed");
  }
  if (asymmetric > 0) {
    loaded.warnings.push_back(std::to_string(asymmetric) +
                              " node pairs listed in both directions with different weights; first direction kept");
  }
  for (const auto& w : loaded.warnings) spdlog::warn("{}: {}", source, w);
  loaded.graph = WeightedGraph::from_edges(loaded.ids.original.size(), edges);
  return loaded;
}

LoadedGraph load_graph(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const WeightedGraph& g, const IdMap& ids) {
  std::vector<char> touched(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    touched[static_cast<std::size_t>(e.u)] = touched[static_cast<std::size_t>(e.v)] = 1;
    out << ids.at(e.u) << ' ' << ids.at(e.v);
    if (e.weight != 1.0) out << ' ' << format_weight(e.weight);
    out << '\n';
  }
  for (std::size_t u = 0; u < touched.size(); ++u) {
    if (!touched[u]) out << ids.at(static_cast<NodeId>(u)) << '\n';
  }
}

GroundTruth parse_ground_truth(std::istream& in, const IdMap& ids, std::string_view source) {
  const std::size_t n = ids.original.size();
  std::vector<std::int64_t> labels(n, 0);
  std::vector<char> seen(n, 0);
  std::size_t overlapping = 0;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    const auto tokens = tokenize(text);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) parse_fail(source, line_no, "expected 'node community'");
    const std::int64_t id = parse_id(tokens[0], source, line_no);
    const auto node = ids.find(id);
    if (!node) parse_fail(source, line_no, "node " + std::to_string(id) + " is not in the graph");
    const auto label = parse_id(tokens[1], source, line_no);
    if (tokens.size() > 2) ++overlapping;
    auto& flag = seen[static_cast<std::size_t>(*node)];
    if (flag) parse_fail(source, line_no, "node " + std::to_string(id) + " labelled twice");
    flag = 1;
    labels[static_cast<std::size_t>(*node)] = label;
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (!seen[u]) {
      fail(ErrorCode::universe_mismatch,
           std::string(source) + ": node " + std::to_string(ids.original[u]) + " has no community label");
    }
  }
  if (overlapping > 0) {
    spdlog::warn("{}: {} nodes list several communities; only the first is used", source, overlapping);
  }
  return {Partition::from_labels(std::span<const std::int64_t>(labels)), std::string(source)};
}

GroundTruth load_ground_truth(const std::filesystem::path& path, const IdMap& ids) {
  auto in = open_input(path);
  return parse_ground_truth(in, ids, path.string());
}

void write_partition(std::ostream& out, const Partition& p, const IdMap& ids) {
  for (std::size_t u = 0; u < p.node_count(); ++u) {
    const auto node = static_cast<NodeId>(u);
    out << ids.at(node) << ' ' << p.community_of(node) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Zachary karate club

namespace {

// Public Zachary (1977) network, 1-based ids, one line per node's higher neighbors.
constexpr std::string_view kKarateEdges = R"(1 2
1 3
1 4
1 5
1 6
1 7
1 8
1 9
1 11
1 12
1 13
1 14
1 18
1 20
1 22
1 32
2 3
2 4
2 8
2 14
2 18
2 20
2 22
2 31
3 4
3 8
3 9
3 10
3 14
3 28
3 29
3 33
4 8
4 13
4 14
5 7
5 11
6 7
6 11
6 17
7 17
9 31
9 33
9 34
10 34
14 34
15 33
15 34
16 33
16 34
19 33
19 34
20 34
21 33
21 34
23 33
23 34
24 26
24 28
24 30
24 33
24 34
25 26
25 28
25 32
26 32
27 30
27 34
28 34
29 32
29 34
30 33
30 34
31 33
31 34
32 33
32 34
33 34
)";

// Members of the instructor's faction after the split; everyone else followed the officers.
constexpr std::int64_t kInstructorFaction[] = {1, 2, 3, 4, 5, 6, 7, 8, 11, 12, 13, 14, 17, 18, 20, 22};

}  // namespace

Benchmark karate_fixture() {
  std::istringstream in{std::string(kKarateEdges)};
  Benchmark bench;
  bench.network = parse_edge_list(in, "karate");
  std::vector<int> labels(bench.network.graph.node_count(), 1);
  for (std::int64_t id : kInstructorFaction) labels[static_cast<std::size_t>(*bench.network.ids.find(id))] = 0;
  bench.truth = {Partition::from_labels(std::span<const int>(labels)), "karate-factions"};
  return bench;
}

}  // namespace termcut
