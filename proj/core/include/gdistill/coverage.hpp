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

// Budgeted coverage maximization over reverse k-NN sets.
//
// The value of a root set A is |union of rev_list(v) for v in A| / z, which
// is monotone and submodular. Roots are picked greedily by marginal gain
// using stale upper bounds (CELF): a popped candidate whose bound is out of
// date is re-scored and pushed back, and the first up-to-date candidate at
// the top of the queue is the true argmax.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gdistill/graph.hpp"
#include "gdistill/rev_knn.hpp"

namespace gdistill {

struct SelectionStep {
  NodeId root;
  // Marginal coverage gain at the time of selection.
  double gain;
  std::uint64_t bytes_used;
};

struct ExemplarSelection {
  // In selection order.
  std::vector<NodeId> roots;
  // Per node id: 1 when that sample is covered.
  std::vector<std::uint8_t> covered;
  std::size_t num_covered = 0;
  // Sample size z of the index the selection was built against.
  std::size_t sample_size = 0;
  std::uint64_t bytes_used = 0;
  // Distilled node set for ball-based costs, ascending. Empty for fixed costs.
  std::vector<NodeId> members;
  std::vector<SelectionStep> trace;

  // |covered| / z.
  double coverage_value() const;
  std::vector<NodeId> CoveredSamples() const;

  static ExemplarSelection Empty(const RevKnnIndex& idx);
};

// Byte cost of adding a root, given everything committed so far.
class CostModel {
 public:
  virtual ~CostModel() = default;
  virtual std::uint64_t IncrementalCost(NodeId root) = 0;
  // Any value not above IncrementalCost(root). Used to skip candidates that
  // cannot fit without paying for an exact evaluation.
  virtual std::uint64_t LowerBound(NodeId root) { return IncrementalCost(root); }
  virtual void Commit(NodeId root) = 0;
  virtual std::uint64_t BytesUsed() const = 0;
};

// Additive per-root costs.
class FixedCostModel final : public CostModel {
 public:
  explicit FixedCostModel(std::vector<std::uint64_t> costs) : costs_(std::move(costs)) {}

  std::uint64_t IncrementalCost(NodeId root) override { return costs_.at(root); }
  void Commit(NodeId root) override { used_ += costs_.at(root); }
  std::uint64_t BytesUsed() const override { return used_; }

 private:
  std::vector<std::uint64_t> costs_;
  std::uint64_t used_ = 0;
};

// Cost of growing the induced subgraph over the union of roots' L-hop
// balls: the new ball nodes plus every edge slot they induce. Blocked nodes
// never join the subgraph and are not traversed.
class BallCostModel final : public CostModel {
 public:
  BallCostModel(const Graph& g, int depth, std::span<const NodeId> initial_members = {},
                std::vector<std::uint8_t> blocked = {});

  std::uint64_t IncrementalCost(NodeId root) override;
  // Cost of the 1-hop part of the ball only.
  std::uint64_t LowerBound(NodeId root) override;
  void Commit(NodeId root) override;
  std::uint64_t BytesUsed() const override { return used_; }

  // Ascending.
  std::vector<NodeId> Members() const;
  std::span<const NodeId> LastBall() const { return ball_; }

 private:
  // Computes the new nodes of root's ball into fresh_ and their byte cost.
  std::uint64_t Evaluate(NodeId root);

  const Graph* graph_;
  int depth_;
  BallSearcher searcher_;
  std::vector<std::uint8_t> member_;
  std::vector<std::uint8_t> blocked_;
  std::vector<std::uint8_t> is_fresh_;
  std::vector<NodeId> ball_;
  std::vector<NodeId> fresh_;
  std::uint64_t used_ = 0;
};

// |rev_list(v) \ covered| / z. Throws Error if v is already a root.
double MarginalGain(const ExemplarSelection& sel, const RevKnnIndex& idx, NodeId v);

// Adds roots to `sel` greedily until no candidate with positive gain fits
// in budget_bytes. Candidates flagged in `excluded` (one flag per node, or
// empty) and existing roots are never picked. Infeasible candidates are
// skipped rather than ending the search. Ties go to the smaller id. Returns
// the number of roots added.
std::size_t ExtendSelection(ExemplarSelection& sel, const RevKnnIndex& idx, CostModel& cost,
                            std::uint64_t budget_bytes, std::span<const std::uint8_t> excluded = {});

// Lazy greedy from scratch under ball costs on g.
ExemplarSelection GreedySelect(const Graph& g, const RevKnnIndex& idx, int depth,
                               std::uint64_t budget_bytes, std::span<const NodeId> excluded = {});

// Exhaustive optimum under additive costs; every node of idx is a candidate.
// Ties prefer fewer roots, then the lexicographically smaller sorted id list.
// Throws Error for more than 20 candidates.
ExemplarSelection BruteForceOptimal(const RevKnnIndex& idx, std::span<const std::uint64_t> costs,
                                    std::uint64_t budget_bytes);

inline constexpr std::size_t kMaxBruteForceCandidates = 20;

}  // namespace gdistill
