// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gdistill/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gdistill/error.hpp"

namespace gdistill {

void PprConfig::Validate() const {
  if (!(beta > 0.0 && beta < 1.0)) throw Error("beta must lie in (0, 1), got " + std::to_string(beta));
  if (!(tolerance > 0.0)) throw Error("PPR tolerance must be positive");
  if (max_iters < 1) throw Error("PPR iteration cap must be at least 1");
}

void SparsifyConfig::Validate() const {
  ppr.Validate();
  if (!(min_prune_frac >= 0.0 && min_prune_frac <= 1.0)) throw Error("min prune fraction must lie in [0, 1]");
  if (min_prune_count < 1) throw Error("min prune count must be at least 1");
  if (max_iters < 1) throw Error("sparsify iteration cap must be at least 1");
}

std::size_t SparsifyConfig::PruneThreshold(std::size_t num_nodes) const {
  const auto relative = static_cast<std::size_t>(std::ceil(min_prune_frac * static_cast<double>(num_nodes)));
  return std::max(min_prune_count, relative);
}

PprScores Ppr(const DistilledGraph& sub, const PprConfig& cfg, const Executor& executor) {
  cfg.Validate();
  const Graph& g = sub.graph;
  const std::size_t n = g.num_nodes();
  const std::size_t roots = sub.num_roots();
  if (roots == 0) throw Error("PPR requires at least one root");

  std::vector<double> teleport(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (sub.root_flags[i]) teleport[i] = 1.0 / static_cast<double>(roots);
  }
  std::vector<double> inv_degree(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    if (g.degree(v) > 0) inv_degree[v] = 1.0 / static_cast<double>(g.degree(v));
  }

  PprScores out;
  std::vector<double> current(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  const double walk = 1.0 - cfg.beta;
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    double dangling = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (g.degree(v) == 0) dangling += current[v];
    }
    const double restart = cfg.beta + walk * dangling;
    executor.ParallelFor(0, n, [&](std::size_t i) {
      double sum = 0.0;
      for (NodeId u : g.neighbors(static_cast<NodeId>(i))) sum += current[u] * inv_degree[u];
      next[i] = walk * sum + restart * teleport[i];
    });
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - current[i]);
    current.swap(next);
    out.iterations = it + 1;
    if (change < cfg.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.scores = std::move(current);
  return out;
}

std::vector<std::size_t> OrderByScore(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

std::size_t KneeIndex(std::span<const double> sorted_desc) {
  if (sorted_desc.size() < 3) throw Error("knee detection needs at least three scores");
  std::vector<double> curvature(sorted_desc.size() - 2);
  for (std::size_t i = 1; i + 1 < sorted_desc.size(); ++i) {
    if (sorted_desc[i] > sorted_desc[i - 1]) throw Error("scores are not sorted in descending order");
    curvature[i - 1] = std::abs(sorted_desc[i + 1] + sorted_desc[i - 1] - 2.0 * sorted_desc[i]);
  }
  if (sorted_desc.back() > sorted_desc[sorted_desc.size() - 2]) {
    throw Error("scores are not sorted in descending order");
  }
  const double best = *std::max_element(curvature.begin(), curvature.end());
  const double slack = kKneeTieTolerance * std::abs(sorted_desc.front());
  for (std::size_t i = 0; i < curvature.size(); ++i) {
    if (curvature[i] >= best - slack) return i + 1;
  }
  return 1;
}

SparsifyResult PruneAndEnrich(const Graph& g, ExemplarSelection sel, const RevKnnIndex& idx,
                              int depth, std::uint64_t budget_bytes, const SparsifyConfig& cfg,
                              const Executor& executor) {
  cfg.Validate();
  if (sel.roots.empty()) throw Error("sparsification needs a nonempty selection");
  if (sel.members.empty()) throw Error("selection carries no member set");

  const std::size_t n = g.num_nodes();
  std::vector<std::uint8_t> blocked(n, 0);
  std::vector<std::uint8_t> excluded(n, 0);
  for (NodeId r : sel.roots) excluded[r] = 1;

  SparsifyResult result;
  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    auto sub = InducedSubgraph(g, sel.members, sel.roots);
    const std::size_t count = sub.graph.num_nodes();
    if (count < 3) break;

    auto ppr = Ppr(sub, cfg.ppr, executor);
    auto order = OrderByScore(ppr.scores);
    std::vector<double> sorted(count);
    for (std::size_t i = 0; i < count; ++i) sorted[i] = ppr.scores[order[i]];
    const std::size_t knee = KneeIndex(sorted);
    const double knee_value = sorted[knee];

    std::vector<NodeId> below;
    for (std::size_t i = 0; i < count; ++i) {
      if (!sub.root_flags[i] && ppr.scores[i] < knee_value) below.push_back(sub.origin_ids[i]);
    }

    SparsifyIteration entry{iter, count, knee, knee_value, below.size(), 0, sel.bytes_used, ppr.iterations};
    if (below.size() < cfg.PruneThreshold(count)) {
      entry.pruned = 0;
      result.log.push_back(entry);
      break;
    }

    for (NodeId v : below) {
      blocked[v] = 1;
      excluded[v] = 1;
    }
    result.pruned.insert(result.pruned.end(), below.begin(), below.end());
    std::vector<NodeId> kept;
    kept.reserve(sel.members.size() - below.size());
    for (NodeId v : sel.members) {
      if (!blocked[v]) kept.push_back(v);
    }

    BallCostModel cost(g, depth, kept, blocked);
    sel.bytes_used = cost.BytesUsed();
    entry.refilled = ExtendSelection(sel, idx, cost, budget_bytes, excluded);
    for (NodeId r : sel.roots) excluded[r] = 1;
    sel.members = cost.Members();
    entry.bytes_used = sel.bytes_used;
    result.log.push_back(entry);
    if (entry.refilled == 0) break;
  }

  std::sort(result.pruned.begin(), result.pruned.end());
  result.graph = InducedSubgraph(g, sel.members, sel.roots);
  result.selection = std::move(sel);
  return result;
}

}  // namespace gdistill
