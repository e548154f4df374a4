#include "termcut/equal_size.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <random>

#include "termcut/error.hpp"
#include "termcut/parallel.hpp"
#include "termcut/random.hpp"

namespace termcut {

ShiftedCompleteGraph::ShiftedCompleteGraph(const WeightedGraph& base) : base_(&base) {
  if (base.edge_count() == 0) fail(ErrorCode::invalid_argument, "weight shift needs a graph with at least one edge");
  w_star_ = base.max_weight();
}

double ShiftedCompleteGraph::weight(NodeId u, NodeId v) const {
  if (u == v) return 0.0;
  return base_->weight(u, v) + w_star_;
}

bool ShiftedCompleteGraph::satisfies_triangle_inequality() const {
  const auto n = static_cast<NodeId>(node_count());
  std::vector<double> w(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) w[static_cast<std::size_t>(u * n + v)] = weight(u, v);
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      for (NodeId x = 0; x < n; ++x) {
        if (x == u || x == v) continue;
        if (w[static_cast<std::size_t>(u * n + v)] >
            w[static_cast<std::size_t>(u * n + x)] + w[static_cast<std::size_t>(x * n + v)]) {
          return false;
        }
      }
    }
  }
  return true;
}

double ShiftedCompleteGraph::cut_weight(const Partition& p) const {
  const double n = static_cast<double>(p.node_count());
  double same = 0.0;
  for (std::size_t s : p.sizes()) same += static_cast<double>(s) * static_cast<double>(s);
  const double crossing_pairs = (n * n - same) / 2.0;
  return crossing_weight(*base_, p) + w_star_ * crossing_pairs;
}

namespace {

// Successive shortest paths with Dijkstra on reduced costs.
class MinCostFlow {
 public:
  explicit MinCostFlow(std::size_t n) : head_(n, -1) {}

  void add(int from, int to, int cap, double cost) {
    arcs_.push_back({to, head_[static_cast<std::size_t>(from)], cap, cost});
    head_[static_cast<std::size_t>(from)] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[static_cast<std::size_t>(to)], 0, -cost});
    head_[static_cast<std::size_t>(to)] = static_cast<int>(arcs_.size()) - 1;
  }

  // Initial costs must be nonnegative.
  std::pair<int, double> run(int s, int t, int want) {
    const std::size_t n = head_.size();
    std::vector<double> potential(n, 0.0);
    std::vector<double> dist(n);
    std::vector<int> via(n);
    int flow = 0;
    double cost = 0.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    while (flow < want) {
      std::fill(dist.begin(), dist.end(), inf);
      std::fill(via.begin(), via.end(), -1);
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      dist[static_cast<std::size_t>(s)] = 0.0;
      heap.emplace(0.0, s);
      while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (int a = head_[static_cast<std::size_t>(u)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
          const Arc& arc = arcs_[static_cast<std::size_t>(a)];
          if (arc.cap <= 0) continue;
          const double reduced = std::max(
              0.0, arc.cost + potential[static_cast<std::size_t>(u)] - potential[static_cast<std::size_t>(arc.to)]);
          const double nd = d + reduced;
          if (nd < dist[static_cast<std::size_t>(arc.to)]) {
            dist[static_cast<std::size_t>(arc.to)] = nd;
            via[static_cast<std::size_t>(arc.to)] = a;
            heap.emplace(nd, arc.to);
          }
        }
      }
      if (dist[static_cast<std::size_t>(t)] == inf) break;
      for (std::size_t v = 0; v < n; ++v) {
        if (dist[v] < inf) potential[v] += dist[v];
      }
      int push = want - flow;
      for (int v = t; v != s;) {
        const Arc& arc = arcs_[static_cast<std::size_t>(via[static_cast<std::size_t>(v)])];
        push = std::min(push, arc.cap);
        v = arcs_[static_cast<std::size_t>(via[static_cast<std::size_t>(v)] ^ 1)].to;
      }
      for (int v = t; v != s;) {
        const int a = via[static_cast<std::size_t>(v)];
        arcs_[static_cast<std::size_t>(a)].cap -= push;
        arcs_[static_cast<std::size_t>(a ^ 1)].cap += push;
        cost += push * arcs_[static_cast<std::size_t>(a)].cost;
        v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
      }
      flow += push;
    }
    return {flow, cost};
  }

  int residual(int arc) const { return arcs_[static_cast<std::size_t>(arc)].cap; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }

 private:
  struct Arc {
    int to;
    int next;
    int cap;
    double cost;
  };
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

std::vector<int> row_capacities(std::size_t n, std::size_t k, bool allow_near_equal) {
  if (n % k != 0 && !allow_near_equal) {
    fail(ErrorCode::size_error, "n=" + std::to_string(n) + " is not divisible by k=" + std::to_string(k) +
                                    "; enable near-equal mode to allow sizes differing by one");
  }
  const std::size_t q = n / k;
  const std::size_t r = n % k;
  std::vector<int> cap(k);
  for (std::size_t i = 0; i < k; ++i) cap[i] = static_cast<int>(i < r ? q : q - 1);
  return cap;
}

}  // namespace

StarAssignment min_star_solve(const ShiftedCompleteGraph& sg, const NodeSet& terminals, bool allow_near_equal) {
  const std::size_t n = sg.node_count();
  const std::size_t k = terminals.size();
  if (k == 0) fail(ErrorCode::invalid_terminals, "need at least one terminal");
  std::vector<char> is_terminal(n, 0);
  for (NodeId v : terminals) {
    if (!sg.base().contains(v)) fail(ErrorCode::invalid_node, "terminal " + std::to_string(v) + " not in graph");
    if (is_terminal[static_cast<std::size_t>(v)]) fail(ErrorCode::invalid_terminals, "terminals must be distinct");
    is_terminal[static_cast<std::size_t>(v)] = 1;
  }

  StarAssignment x;
  x.terminals = terminals;
  x.capacity = row_capacities(n, k, allow_near_equal);
  for (std::size_t u = 0; u < n; ++u) {
    if (!is_terminal[u]) x.others.push_back(static_cast<NodeId>(u));
  }
  const std::size_t m = x.others.size();
  x.owner.assign(m, -1);
  if (m == 0) return x;

  const double scale = static_cast<double>(n) / static_cast<double>(k);
  const int source = 0;
  const int sink = static_cast<int>(k + m + 1);
  MinCostFlow mcf(k + m + 2);
  for (std::size_t i = 0; i < k; ++i) mcf.add(source, static_cast<int>(1 + i), x.capacity[i], 0.0);
  std::vector<int> arc_of(k * m);
  for (std::size_t j = 0; j < m; ++j) {
    double to_all = 0.0;
    for (NodeId v : terminals) to_all += sg.weight(v, x.others[j]);
    for (std::size_t i = 0; i < k; ++i) {
      const double c = scale * std::max(0.0, to_all - sg.weight(terminals[i], x.others[j]));
      arc_of[i * m + j] = mcf.arc_count();
      mcf.add(static_cast<int>(1 + i), static_cast<int>(1 + k + j), 1, c);
    }
  }
  for (std::size_t j = 0; j < m; ++j) mcf.add(static_cast<int>(1 + k + j), sink, 1, 0.0);

  const auto [flow, cost] = mcf.run(source, sink, static_cast<int>(m));
  if (static_cast<std::size_t>(flow) != m) {
    fail(ErrorCode::incomplete_assignment, "transportation problem left non-terminals unassigned");
  }
  x.objective = cost;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (mcf.residual(arc_of[i * m + j]) == 0) x.owner[j] = static_cast<int>(i);
    }
  }
  return x;
}

Partition assignment_to_partition(const StarAssignment& x) {
  if (x.owner.size() != x.others.size()) fail(ErrorCode::incomplete_assignment, "owner list does not match non-terminals");
  const std::size_t n = x.terminals.size() + x.others.size();
  std::vector<int> labels(n, -1);
  auto place = [&](NodeId u, int label) {
    if (u < 0 || static_cast<std::size_t>(u) >= n || labels[static_cast<std::size_t>(u)] != -1) {
      fail(ErrorCode::universe_mismatch, "terminals and non-terminals must cover 0..n-1 exactly once");
    }
    labels[static_cast<std::size_t>(u)] = label;
  };
  for (std::size_t i = 0; i < x.terminals.size(); ++i) place(x.terminals[i], static_cast<int>(i));
  for (std::size_t j = 0; j < x.others.size(); ++j) {
    if (x.owner[j] < 0 || static_cast<std::size_t>(x.owner[j]) >= x.terminals.size()) {
      fail(ErrorCode::incomplete_assignment, "node " + std::to_string(x.others[j]) + " has no terminal");
    }
    place(x.others[j], x.owner[j]);
  }
  return Partition::from_labels(std::span<const int>(labels));
}

std::uint64_t equal_cut_edge_count(std::uint64_t n, std::uint64_t k) {
  if (k == 0 || n % k != 0) {
    fail(ErrorCode::size_error, "n=" + std::to_string(n) + " is not divisible by k=" + std::to_string(k));
  }
  return n * (n - n / k) / 2;
}

Rational sample_probability(std::uint64_t n, std::uint64_t k) {
  if (k == 0 || k > n || n % k != 0) {
    fail(ErrorCode::size_error, "n=" + std::to_string(n) + " is not divisible by k=" + std::to_string(k));
  }
  const BigInt q = n / k;
  return Rational(boost::multiprecision::pow(q, static_cast<unsigned>(k)),
                  binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)));
}

NodeSet sample_terminals(std::size_t n, int k, std::uint64_t seed) {
  if (k < 1 || static_cast<std::size_t>(k) > n) fail(ErrorCode::invalid_argument, "need 1 <= k <= n");
  std::mt19937_64 rng(seed);
  NodeSet pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<NodeId>(i);
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

EqualResult detect_equal(const WeightedGraph& g, const EqualConfig& cfg) {
  const std::size_t n = g.node_count();
  if (cfg.k < 1 || static_cast<std::size_t>(cfg.k) > n) {
    fail(ErrorCode::invalid_argument, "k must satisfy 1 <= k <= n");
  }
  if (cfg.iterations == 0) fail(ErrorCode::invalid_argument, "iteration budget must be >= 1");
  const auto k = static_cast<std::size_t>(cfg.k);
  row_capacities(n, k, cfg.allow_near_equal);

  EqualResult best;
  best.near_equal = n % k != 0;
  if (k == n) {
    best.partition = Partition::singletons(n);
    best.cut_weight = g.total_weight();
    for (std::size_t u = 0; u < n; ++u) best.terminals.push_back(static_cast<NodeId>(u));
    best.target_reached = cfg.target && best.cut_weight <= *cfg.target;
    return best;
  }

  const ShiftedCompleteGraph sg(g);
  const std::size_t workers = resolve_jobs(cfg.jobs);
  constexpr std::uint64_t batch_size = 256;
  struct Sample {
    Partition partition;
    NodeSet terminals;
    double cut = 0.0;
  };
  std::vector<Sample> batch;
  bool have = false;

  for (std::uint64_t start = 0; start < cfg.iterations; start += batch_size) {
    const std::uint64_t count = std::min(batch_size, cfg.iterations - start);
    batch.assign(count, {});
    run_workers(std::min<std::size_t>(workers, count), [&](std::size_t w, std::size_t stride) {
      for (std::uint64_t i = w; i < count; i += stride) {
        Sample& s = batch[i];
        s.terminals = sample_terminals(n, cfg.k, derive_seed(cfg.seed, start + i));
        s.partition = assignment_to_partition(min_star_solve(sg, s.terminals, cfg.allow_near_equal));
        s.cut = crossing_weight(g, s.partition);
      }
    });
    for (std::uint64_t i = 0; i < count; ++i) {
      Sample& s = batch[i];
      best.iterations_run = start + i + 1;
      if (!have || s.cut < best.cut_weight) {
        have = true;
        best.partition = std::move(s.partition);
        best.terminals = std::move(s.terminals);
        best.cut_weight = s.cut;
        best.iteration = start + i;
      }
      if (cfg.target && best.cut_weight <= *cfg.target) {
        best.target_reached = true;
        return best;
      }
    }
  }
  return best;
}

}  // namespace termcut
