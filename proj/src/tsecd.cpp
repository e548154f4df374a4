#include "termcut/tsecd.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <string>

#include "termcut/error.hpp"
#include "termcut/maxflow.hpp"
#include "termcut/parallel.hpp"
#include "termcut/terminal_cut.hpp"

namespace termcut {

void TsecdConfig::validate(std::size_t node_count) const {
  if (k < 2) fail(ErrorCode::invalid_argument, "k must be >= 2");
  if (pool_size < k) fail(ErrorCode::invalid_argument, "pool size p must be >= k");
  if (static_cast<std::size_t>(pool_size) > node_count) {
    fail(ErrorCode::invalid_argument, "pool size p=" + std::to_string(pool_size) + " exceeds n=" +
                                          std::to_string(node_count));
  }
  if (radius < 0) fail(ErrorCode::invalid_argument, "local-area radius l must be >= 0");
  if (pool_rule == PoolRule::centrality && centrality_hops < 1) {
    fail(ErrorCode::invalid_argument, "centrality hops h must be >= 1");
  }
}

std::string setting_name(Setting s) { return "setting" + std::to_string(static_cast<int>(s)); }

TsecdConfig preset_config(Setting s, std::size_t node_count, int k, TsecdConfig base) {
  if (k < 1) fail(ErrorCode::invalid_argument, "k must be positive");
  const auto n = static_cast<long long>(node_count);
  long long p = 10LL * k;
  long long l = 0;
  switch (s) {
    case Setting::one: l = n / k; break;
    case Setting::two: l = n / (8LL * k); break;
    case Setting::three: p = 2LL * k; l = n / (2LL * k); break;
    case Setting::four: l = n / (2LL * k); break;
    default: fail(ErrorCode::invalid_argument, "unknown setting " + std::to_string(static_cast<int>(s)));
  }
  base.k = k;
  base.pool_size = static_cast<int>(std::min(p, n));
  base.radius = static_cast<int>(l);
  return base;
}

NodeSet select_pool(const WeightedGraph& g, const TsecdConfig& cfg) {
  const std::size_t n = g.node_count();
  if (cfg.pool_size < 0 || static_cast<std::size_t>(cfg.pool_size) > n) {
    fail(ErrorCode::invalid_argument, "pool size p=" + std::to_string(cfg.pool_size) + " exceeds n=" +
                                          std::to_string(n));
  }
  std::vector<double> score(n);
  for (std::size_t u = 0; u < n; ++u) {
    const auto node = static_cast<NodeId>(u);
    score[u] = cfg.pool_rule == PoolRule::degree ? g.degree(node) : centrality(g, node, cfg.centrality_hops);
  }
  NodeSet order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&score](NodeId a, NodeId b) {
    return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
  });
  order.resize(static_cast<std::size_t>(cfg.pool_size));
  return order;
}

namespace {

bool intersects(const NodeSet& a, const NodeSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

NodeSet without(const NodeSet& a, const NodeSet& b, NodeId keep) {
  NodeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.insert(std::lower_bound(out.begin(), out.end(), keep), keep);
  return out;
}

// (A \ B) + a and (B \ A) + b; disjoint because the centers differ.
std::pair<NodeSet, NodeSet> trim_pair(const LocalArea& a, const LocalArea& b) {
  return {without(a.members, b.members, a.center), without(b.members, a.members, b.center)};
}

// Drops every node shared by two areas of the candidate, keeping the centers.
std::vector<NodeSet> trim_groups(const std::vector<LocalArea>& areas, const std::vector<std::size_t>& idx) {
  std::vector<NodeSet> groups;
  for (std::size_t a : idx) {
    NodeSet g = areas[a].members;
    for (std::size_t b : idx) {
      if (b != a) g = without(g, areas[b].members, areas[a].center);
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

struct Candidate {
  double score = 0.0;
  NodeSet terminals;
  CutSet cut;
  Partition partition;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score < b.score;
  return a.terminals < b.terminals;
}

// Pairwise minimum cuts between local areas depend only on the pair, so they
// are computed once per pool pair and shared by every candidate.
class PairCuts {
 public:
  PairCuts(const WeightedGraph& g, const std::vector<LocalArea>& areas, OverlapRule rule, std::size_t workers)
      : size_(areas.size()), overlap_(size_ * size_, 0), cuts_(size_ * size_) {
    std::vector<std::pair<std::size_t, std::size_t>> work;
    for (std::size_t i = 0; i < size_; ++i) {
      for (std::size_t j = i + 1; j < size_; ++j) {
        if (intersects(areas[i].members, areas[j].members)) {
          overlap_[i * size_ + j] = overlap_[j * size_ + i] = 1;
          if (rule == OverlapRule::skip) continue;
        }
        work.emplace_back(i, j);
      }
    }
    run_workers(workers, [&](std::size_t w, std::size_t count) {
      for (std::size_t t = w; t < work.size(); t += count) {
        const auto [i, j] = work[t];
        if (overlap_[i * size_ + j]) {
          const auto [a, b] = trim_pair(areas[i], areas[j]);
          cuts_[i * size_ + j] = min_cut_st(g, a, b);
        } else {
          cuts_[i * size_ + j] = min_cut_st(g, areas[i].members, areas[j].members);
        }
      }
    });
  }

  bool overlap(std::size_t i, std::size_t j) const { return overlap_[i * size_ + j] != 0; }
  const CutSet& cut(std::size_t i, std::size_t j) const {
    return i < j ? cuts_[i * size_ + j] : cuts_[j * size_ + i];
  }

 private:
  std::size_t size_;
  std::vector<char> overlap_;
  std::vector<CutSet> cuts_;
};

}  // namespace

TsecdResult detect(const WeightedGraph& g, const TsecdConfig& cfg) {
  cfg.validate(g.node_count());
  if (!is_connected(g)) {
    fail(ErrorCode::disconnected_graph,
         "graph is disconnected; run detection on each connected component separately");
  }

  const NodeSet pool = select_pool(g, cfg);
  std::vector<LocalArea> areas;
  areas.reserve(pool.size());
  for (NodeId u : pool) areas.push_back(local_area(g, u, cfg.radius));

  const std::size_t workers = resolve_jobs(cfg.jobs);
  std::optional<PairCuts> pair_cuts;
  if (cfg.cut_rule == CutRule::pairwise) pair_cuts.emplace(g, areas, cfg.overlap, workers);

  const auto k = static_cast<std::size_t>(cfg.k);
  struct WorkerState {
    std::optional<Candidate> best;
    TsecdDiagnostics diag;
  };
  std::vector<WorkerState> states(workers);

  run_workers(workers, [&](std::size_t w, std::size_t count) {
    WorkerState& state = states[w];
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::uint64_t counter = 0;
    do {
      if (counter++ % count != w) continue;
      ++state.diag.candidates;

      bool overlapping = false;
      for (std::size_t a = 0; a < k && !overlapping; ++a) {
        for (std::size_t b = a + 1; b < k && !overlapping; ++b) {
          overlapping = pair_cuts ? pair_cuts->overlap(idx[a], idx[b])
                                  : intersects(areas[idx[a]].members, areas[idx[b]].members);
        }
      }
      if (overlapping && cfg.overlap == OverlapRule::skip) {
        ++state.diag.skipped;
        continue;
      }
      if (overlapping) ++state.diag.trimmed;

      CutSet cut;
      if (pair_cuts) {
        std::vector<CutSet> parts;
        for (std::size_t a = 0; a < k; ++a) {
          for (std::size_t b = a + 1; b < k; ++b) parts.push_back(pair_cuts->cut(idx[a], idx[b]));
        }
        cut = CutSet::unite(g, parts);
      } else {
        std::vector<NodeSet> groups;
        for (std::size_t i : idx) groups.push_back(areas[i].members);
        if (overlapping) groups = trim_groups(areas, idx);
        cut = isolating_kcut(g, TerminalSpec::make(g, std::move(groups)));
      }

      std::optional<RepairedCut> repaired;
      try {
        repaired = repair_to_k_parts(g, cut, cfg.k);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::cannot_reach_k) throw;
        ++state.diag.discarded;
        continue;
      }
      ++state.diag.evaluated;

      Candidate cand;
      cand.score = cfg.aggregate == AggregateRule::mean ? mean_conductance(g, repaired->partition)
                                                        : max_conductance(g, repaired->partition);
      for (std::size_t i : idx) cand.terminals.push_back(pool[i]);
      std::sort(cand.terminals.begin(), cand.terminals.end());
      if (!state.best || better(cand, *state.best)) {
        cand.cut = std::move(repaired->cut);
        cand.partition = std::move(repaired->partition);
        state.best = std::move(cand);
      }
    } while (next_combination(idx, pool.size()));
  });

  TsecdDiagnostics diag;
  std::optional<Candidate> best;
  for (auto& state : states) {
    diag.candidates += state.diag.candidates;
    diag.skipped += state.diag.skipped;
    diag.trimmed += state.diag.trimmed;
    diag.discarded += state.diag.discarded;
    diag.evaluated += state.diag.evaluated;
    if (state.best && (!best || better(*state.best, *best))) best = std::move(state.best);
  }
  if (!best) {
    fail(ErrorCode::no_feasible_candidate,
         "no feasible candidate: " + std::to_string(diag.skipped) + " of " + std::to_string(diag.candidates) +
             " candidates had intersecting local areas, " + std::to_string(diag.discarded) +
             " could not reach k parts");
  }

  TsecdResult result;
  result.report = evaluate(g, best->partition);
  result.partition = std::move(best->partition);
  result.cut = std::move(best->cut);
  result.score = best->score;
  result.terminals = std::move(best->terminals);
  result.diagnostics = diag;
  return result;
}

std::vector<SweepRow> detect_sweep(const WeightedGraph& g, std::span<const Setting> presets, int k,
                                   const Partition* truth, const TsecdConfig& base) {
  std::vector<SweepRow> rows;
  for (Setting s : presets) {
    SweepRow row;
    row.label = setting_name(s);
    row.config = preset_config(s, g.node_count(), k, base);
    try {
      TsecdResult result = detect(g, *row.config);
      row.report = truth ? evaluate(g, result.partition, *truth) : std::move(result.report);
      if (truth) row.misclassified = row.report->truth->misclassified;
      row.partition = std::move(result.partition);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_feasible_candidate) throw;
      row.failure = e.what();
    }
    rows.push_back(std::move(row));
  }
  if (truth) {
    SweepRow row;
    row.label = "truth";
    row.report = evaluate(g, *truth);
    row.misclassified = 0;
    row.partition = *truth;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace termcut
