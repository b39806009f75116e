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

#include "gdistill/coverage.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <string>

#include "gdistill/error.hpp"

namespace gdistill {

double ExemplarSelection::coverage_value() const {
  return sample_size == 0 ? 0.0 : static_cast<double>(num_covered) / static_cast<double>(sample_size);
}

std::vector<NodeId> ExemplarSelection::CoveredSamples() const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < covered.size(); ++v) {
    if (covered[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

ExemplarSelection ExemplarSelection::Empty(const RevKnnIndex& idx) {
  ExemplarSelection sel;
  sel.covered.assign(idx.num_nodes(), 0);
  sel.sample_size = idx.sample_size();
  return sel;
}

BallCostModel::BallCostModel(const Graph& g, int depth, std::span<const NodeId> initial_members,
                             std::vector<std::uint8_t> blocked)
    : graph_(&g),
      depth_(depth),
      searcher_(g),
      member_(g.num_nodes(), 0),
      blocked_(std::move(blocked)),
      is_fresh_(g.num_nodes(), 0) {
  if (!blocked_.empty() && blocked_.size() != g.num_nodes()) throw Error("blocked flags length mismatch");
  std::vector<NodeId> unique;
  for (NodeId v : initial_members) {
    if (v >= g.num_nodes()) throw Error("member id out of range");
    if (!member_[v]) {
      member_[v] = 1;
      unique.push_back(v);
    }
  }
  std::size_t slots = 0;
  for (NodeId v : unique) {
    for (NodeId u : g.neighbors(v)) slots += member_[u];
  }
  used_ = ByteSize(unique.size(), slots, g.feature_dim(), g.has_labels());
}

std::uint64_t BallCostModel::Evaluate(NodeId root) {
  auto ball = searcher_.Ball(root, depth_, blocked_);
  ball_.assign(ball.begin(), ball.end());
  fresh_.clear();
  for (NodeId v : ball_) {
    if (!member_[v]) {
      fresh_.push_back(v);
      is_fresh_[v] = 1;
    }
  }
  std::uint64_t slots = 0;
  for (NodeId v : fresh_) {
    for (NodeId u : graph_->neighbors(v)) {
      if (is_fresh_[u]) {
        slots += 1;
      } else if (member_[u]) {
        slots += 2;
      }
    }
  }
  for (NodeId v : fresh_) is_fresh_[v] = 0;
  return fresh_.size() * NodeBytes(graph_->feature_dim(), graph_->has_labels()) + slots * kIdBytes;
}

std::uint64_t BallCostModel::IncrementalCost(NodeId root) { return Evaluate(root); }

// Fresh-node bytes and slot counts only grow with the fresh set, so the cost
// of {root} plus its unblocked neighbors bounds the full ball from below.
// Only slots incident to root are counted.
std::uint64_t BallCostModel::LowerBound(NodeId root) {
  if (depth_ == 0) return Evaluate(root);
  auto is_blocked = [&](NodeId v) { return !blocked_.empty() && blocked_[v]; };
  if (is_blocked(root)) return 0;
  const bool root_fresh = !member_[root];
  std::uint64_t nodes = root_fresh ? 1 : 0;
  std::uint64_t slots = 0;
  for (NodeId u : graph_->neighbors(root)) {
    if (u == root) {
      slots += root_fresh ? 1 : 0;
      continue;
    }
    if (is_blocked(u)) continue;
    if (!member_[u]) {
      ++nodes;
      slots += 2;
    } else if (root_fresh) {
      slots += 2;
    }
  }
  return nodes * NodeBytes(graph_->feature_dim(), graph_->has_labels()) + slots * kIdBytes;
}

void BallCostModel::Commit(NodeId root) {
  used_ += Evaluate(root);
  for (NodeId v : fresh_) member_[v] = 1;
}

std::vector<NodeId> BallCostModel::Members() const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < member_.size(); ++v) {
    if (member_[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

namespace {

std::size_t UncoveredCount(const ExemplarSelection& sel, const RevKnnIndex& idx, NodeId v) {
  std::size_t count = 0;
  for (NodeId s : idx.rev_list(v)) count += sel.covered[s] ? 0 : 1;
  return count;
}

struct Candidate {
  std::size_t gain;
  NodeId id;
  std::size_t round;
};

// Higher gain first, then smaller id.
struct CandidateOrder {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.id > b.id;
  }
};

}  // namespace

double MarginalGain(const ExemplarSelection& sel, const RevKnnIndex& idx, NodeId v) {
  if (v >= idx.num_nodes()) throw Error("node id out of range");
  if (std::find(sel.roots.begin(), sel.roots.end(), v) != sel.roots.end()) {
    throw Error("node " + std::to_string(v) + " is already a root");
  }
  if (sel.sample_size == 0) return 0.0;
  return static_cast<double>(UncoveredCount(sel, idx, v)) / static_cast<double>(sel.sample_size);
}

std::size_t ExtendSelection(ExemplarSelection& sel, const RevKnnIndex& idx, CostModel& cost,
                            std::uint64_t budget_bytes, std::span<const std::uint8_t> excluded) {
  const std::size_t n = idx.num_nodes();
  if (!excluded.empty() && excluded.size() != n) throw Error("excluded flags length mismatch");
  if (sel.covered.size() != n) throw Error("selection does not match the index");

  std::vector<std::uint8_t> is_root(n, 0);
  for (NodeId r : sel.roots) is_root[r] = 1;

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> queue;
  for (NodeId v = 0; v < n; ++v) {
    if (is_root[v] || (!excluded.empty() && excluded[v])) continue;
    if (auto gain = UncoveredCount(sel, idx, v); gain > 0) queue.push({gain, v, 0});
  }

  std::size_t round = 0;
  std::size_t added = 0;
  std::vector<Candidate> deferred;
  while (!queue.empty()) {
    deferred.clear();
    bool picked = false;
    while (!queue.empty()) {
      Candidate top = queue.top();
      queue.pop();
      if (top.round != round) {
        // Gains only shrink, so a zero gain is final.
        top.gain = UncoveredCount(sel, idx, top.id);
        top.round = round;
        if (top.gain > 0) queue.push(top);
        continue;
      }
      if (sel.bytes_used + cost.LowerBound(top.id) > budget_bytes ||
          sel.bytes_used + cost.IncrementalCost(top.id) > budget_bytes) {
        deferred.push_back(top);
        continue;
      }
      cost.Commit(top.id);
      sel.bytes_used = cost.BytesUsed();
      sel.roots.push_back(top.id);
      is_root[top.id] = 1;
      for (NodeId s : idx.rev_list(top.id)) {
        if (!sel.covered[s]) {
          sel.covered[s] = 1;
          ++sel.num_covered;
        }
      }
      sel.trace.push_back({top.id,
                           static_cast<double>(top.gain) / static_cast<double>(sel.sample_size),
                           sel.bytes_used});
      ++added;
      picked = true;
      break;
    }
    if (!picked) break;
    ++round;
    for (const auto& c : deferred) queue.push(c);
  }
  return added;
}

ExemplarSelection GreedySelect(const Graph& g, const RevKnnIndex& idx, int depth,
                               std::uint64_t budget_bytes, std::span<const NodeId> excluded) {
  if (idx.num_nodes() != g.num_nodes()) throw Error("index does not match the graph");
  std::vector<std::uint8_t> flags;
  if (!excluded.empty()) {
    flags.assign(g.num_nodes(), 0);
    for (NodeId v : excluded) {
      if (v >= g.num_nodes()) throw Error("excluded id out of range");
      flags[v] = 1;
    }
  }
  auto sel = ExemplarSelection::Empty(idx);
  BallCostModel cost(g, depth);
  ExtendSelection(sel, idx, cost, budget_bytes, flags);
  sel.members = cost.Members();
  return sel;
}

ExemplarSelection BruteForceOptimal(const RevKnnIndex& idx, std::span<const std::uint64_t> costs,
                                    std::uint64_t budget_bytes) {
  const std::size_t n = idx.num_nodes();
  if (n > kMaxBruteForceCandidates) {
    throw Error("brute force supports at most " + std::to_string(kMaxBruteForceCandidates) +
                " candidates, got " + std::to_string(n));
  }
  if (costs.size() != n) throw Error("cost vector length mismatch");

  // Samples as bit positions.
  const auto samples = idx.sample_ids();
  const std::size_t words = (samples.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> bits(n, std::vector<std::uint64_t>(words, 0));
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId s : idx.rev_list(v)) {
      auto pos = static_cast<std::size_t>(std::lower_bound(samples.begin(), samples.end(), s) - samples.begin());
      bits[v][pos / 64] |= std::uint64_t{1} << (pos % 64);
    }
  }

  auto ids_of = [n](std::uint32_t mask) {
    std::vector<NodeId> ids;
    for (NodeId v = 0; v < n; ++v) {
      if (mask >> v & 1u) ids.push_back(v);
    }
    return ids;
  };

  std::uint32_t best_mask = 0;
  std::size_t best_cover = 0;
  std::vector<std::uint64_t> acc(words);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    std::uint64_t total = 0;
    std::fill(acc.begin(), acc.end(), 0);
    for (NodeId v = 0; v < n; ++v) {
      if (!(mask >> v & 1u)) continue;
      total += costs[v];
      for (std::size_t w = 0; w < words; ++w) acc[w] |= bits[v][w];
    }
    if (total > budget_bytes) continue;
    std::size_t cover = 0;
    for (auto word : acc) cover += static_cast<std::size_t>(std::popcount(word));
    bool better = cover > best_cover;
    if (!better && cover == best_cover && best_mask != 0) {
      const int pc = std::popcount(mask);
      const int best_pc = std::popcount(best_mask);
      better = pc < best_pc || (pc == best_pc && ids_of(mask) < ids_of(best_mask));
    }
    if (better) {
      best_mask = mask;
      best_cover = cover;
    }
  }

  auto sel = ExemplarSelection::Empty(idx);
  // An all-zero optimum is represented by the empty selection.
  if (best_cover == 0) return sel;
  sel.roots = ids_of(best_mask);
  for (NodeId v : sel.roots) {
    sel.bytes_used += costs[v];
    for (NodeId s : idx.rev_list(v)) {
      if (!sel.covered[s]) {
        sel.covered[s] = 1;
        ++sel.num_covered;
      }
    }
  }
  return sel;
}

}  // namespace gdistill
