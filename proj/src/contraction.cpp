#include "termcut/contraction.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "termcut/error.hpp"
#include "termcut/parallel.hpp"

namespace termcut {

ContractionState::ContractionState(const WeightedGraph& g)
    : parent_(g.node_count()), slot_(g.node_count()), active_(g.node_count()), adj_(g.node_count()) {
  for (std::size_t u = 0; u < parent_.size(); ++u) {
    parent_[u] = active_[u] = static_cast<NodeId>(u);
    slot_[u] = u;
  }
  for (const Edge& e : g.edges()) {
    if (e.weight == 0.0) continue;
    adj_[static_cast<std::size_t>(e.u)][e.v] += e.weight;
    adj_[static_cast<std::size_t>(e.v)][e.u] += e.weight;
  }
}

NodeId ContractionState::find(NodeId u) {
  auto i = static_cast<std::size_t>(u);
  while (parent_[i] != static_cast<NodeId>(i)) {
    const auto up = static_cast<std::size_t>(parent_[i]);
    parent_[i] = parent_[up];
    i = up;
  }
  return static_cast<NodeId>(i);
}

void ContractionState::merge(NodeId a, NodeId b) {
  a = find(a);
  b = find(b);
  if (a == b) fail(ErrorCode::invalid_argument, "cannot merge a supernode with itself");
  auto& adj_a = adj_[static_cast<std::size_t>(a)];
  auto& adj_b = adj_[static_cast<std::size_t>(b)];
  if (adj_a.size() < adj_b.size()) std::swap(a, b);
  const auto keep = static_cast<std::size_t>(a);
  const auto gone = static_cast<std::size_t>(b);

  adj_[keep].erase(b);
  for (const auto& [x, w] : adj_[gone]) {
    if (x == a) continue;
    auto& other = adj_[static_cast<std::size_t>(x)];
    other.erase(b);
    other[a] += w;
    adj_[keep][x] += w;
  }
  adj_[gone].clear();
  parent_[gone] = a;

  const std::size_t pos = slot_[gone];
  active_[pos] = active_.back();
  slot_[static_cast<std::size_t>(active_[pos])] = pos;
  active_.pop_back();
}

double ContractionState::inter_weight(NodeId a, NodeId b) {
  a = find(a);
  b = find(b);
  if (a == b) return 0.0;
  const auto& m = adj_[static_cast<std::size_t>(a)];
  const auto it = m.find(b);
  return it == m.end() ? 0.0 : it->second;
}

const std::unordered_map<NodeId, double>& ContractionState::inter_edges(NodeId rep) const {
  return adj_.at(static_cast<std::size_t>(rep));
}

Partition ContractionState::partition() {
  std::vector<int> labels(parent_.size());
  for (std::size_t u = 0; u < labels.size(); ++u) labels[u] = find(static_cast<NodeId>(u));
  return Partition::from_labels(std::span<const int>(labels));
}

namespace {

std::pair<NodeId, NodeId> uniform_pair(const ContractionState& st, std::mt19937_64& rng) {
  const auto& act = st.active_nodes();
  std::uniform_int_distribution<std::size_t> first(0, act.size() - 1);
  std::uniform_int_distribution<std::size_t> second(0, act.size() - 2);
  const std::size_t i = first(rng);
  std::size_t j = second(rng);
  if (j >= i) ++j;
  return {act[i], act[j]};
}

std::optional<std::pair<NodeId, NodeId>> weighted_pair(const ContractionState& st, std::mt19937_64& rng) {
  double total = 0.0;
  for (NodeId a : st.active_nodes()) {
    for (const auto& [b, w] : st.inter_edges(a)) total += w;
  }
  if (!(total > 0.0)) return std::nullopt;
  double r = std::uniform_real_distribution<double>(0.0, total)(rng);
  std::optional<std::pair<NodeId, NodeId>> last;
  for (NodeId a : st.active_nodes()) {
    for (const auto& [b, w] : st.inter_edges(a)) {
      last = {a, b};
      if (r < w) return last;
      r -= w;
    }
  }
  return last;
}

}  // namespace

Partition single_run(const WeightedGraph& g, int k, std::uint64_t seed, PairSelection sel) {
  const std::size_t n = g.node_count();
  if (k < 1) fail(ErrorCode::invalid_argument, "k must be >= 1");
  if (static_cast<std::size_t>(k) > n) {
    fail(ErrorCode::invalid_argument, "k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  ContractionState st(g);
  while (st.active() > static_cast<std::size_t>(k)) {
    std::optional<std::pair<NodeId, NodeId>> pick;
    if (sel == PairSelection::edge_weighted) pick = weighted_pair(st, rng);
    if (!pick) pick = uniform_pair(st, rng);
    st.merge(pick->first, pick->second);
  }
  return st.partition();
}

Rational success_bound(std::int64_t n, std::int64_t k) {
  if (k < 2 || k > n) {
    fail(ErrorCode::invalid_argument,
         "success bound needs 2 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  const auto un = static_cast<unsigned>(n);
  const auto uk = static_cast<unsigned>(k);
  return Rational(BigInt(k), binomial(un, uk - 1) * binomial(un - 1, uk - 1));
}

RunBudget run_budget(double p_bar, double c) {
  if (!(p_bar > 0.0 && p_bar <= 1.0)) {
    fail(ErrorCode::invalid_argument, "p_bar must lie in (0, 1], got " + std::to_string(p_bar));
  }
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorCode::invalid_argument, "c must be a positive number");
  const double raw = -c * std::log(p_bar) / (2.0 * p_bar);
  if (!(raw < 9.0e18)) {
    fail(ErrorCode::invalid_argument, "run budget for p_bar=" + std::to_string(p_bar) + " overflows");
  }
  RunBudget b;
  b.p_bar = p_bar;
  b.c = c;
  b.runs = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(raw)));
  b.guarantee = 1.0 - std::pow(p_bar, c / 2.0);
  return b;
}

RunBudget fixed_budget(std::uint64_t runs) {
  if (runs == 0) fail(ErrorCode::invalid_argument, "run count must be >= 1");
  RunBudget b;
  b.p_bar = 0.0;
  b.c = 0.0;
  b.runs = runs;
  b.guarantee = 0.0;
  return b;
}

RunBudget default_budget(std::size_t n, int k, double c) {
  const double p = to_double(success_bound(static_cast<std::int64_t>(n), k));
  if (!(p > 0.0)) fail(ErrorCode::invalid_argument, "success bound underflows for n=" + std::to_string(n));
  RunBudget b = run_budget(p, c);
  spdlog::warn("no p_bar given: using the success bound {:.3g}, which needs {} runs (grows like (n/k)^(2(k-1)))",
               p, b.runs);
  return b;
}

FeasibilityPredicate FeasibilityPredicate::always() {
  return {"always", [](const Partition&) { return true; }};
}

FeasibilityPredicate FeasibilityPredicate::designated_separation(const WeightedGraph& g, NodeSet nodes) {
  for (NodeId u : nodes) {
    if (!g.contains(u)) fail(ErrorCode::invalid_node, "designated node " + std::to_string(u) + " not in graph");
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return {"separate", [nodes = std::move(nodes)](const Partition& p) {
            std::set<int> seen;
            for (NodeId u : nodes) {
              if (!seen.insert(p.community_of(u)).second) return false;
            }
            return true;
          }};
}

FeasibilityPredicate FeasibilityPredicate::min_size(std::size_t threshold) {
  return {"min-size=" + std::to_string(threshold), [threshold](const Partition& p) {
            const auto sizes = p.sizes();
            return std::all_of(sizes.begin(), sizes.end(), [threshold](std::size_t s) { return s >= threshold; });
          }};
}

std::optional<CustomizedResult> detect_customized(const WeightedGraph& g, const ContractionConfig& cfg,
                                                  const FeasibilityPredicate& pred, const RunBudget& budget) {
  if (cfg.k < 1 || static_cast<std::size_t>(cfg.k) > g.node_count()) {
    fail(ErrorCode::invalid_argument, "k must satisfy 1 <= k <= n");
  }
  if (budget.runs == 0) fail(ErrorCode::invalid_argument, "run count must be >= 1");

  struct Best {
    std::optional<CustomizedResult> result;
    std::uint64_t feasible = 0;
  };
  const std::size_t workers = resolve_jobs(cfg.jobs);
  std::vector<Best> best(workers);
  run_workers(workers, [&](std::size_t w, std::size_t count) {
    for (std::uint64_t i = w; i < budget.runs; i += count) {
      Partition p = single_run(g, cfg.k, derive_seed(cfg.seed, i), cfg.selection);
      if (!pred(p)) continue;
      ++best[w].feasible;
      const double weight = crossing_weight(g, p);
      auto& cur = best[w].result;
      if (!cur || weight < cur->cut_weight) cur = CustomizedResult{std::move(p), weight, i, 0, 0};
    }
  });

  std::optional<CustomizedResult> out;
  std::uint64_t feasible = 0;
  for (auto& b : best) {
    feasible += b.feasible;
    if (!b.result) continue;
    if (!out || b.result->cut_weight < out->cut_weight ||
        (b.result->cut_weight == out->cut_weight && b.result->run < out->run)) {
      out = std::move(b.result);
    }
  }
  if (out) {
    out->runs = budget.runs;
    out->feasible_runs = feasible;
  }
  return out;
}

}  // namespace termcut
