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

// Personalized-PageRank pruning of ego nodes and budget refill.
//
// Scores come from the power iteration
//
//   pi_t = (1 - beta) * A * pi_{t-1} + beta * e
//
// where A is the column-stochastic random-walk matrix of the distilled
// graph, e spreads teleport mass uniformly over exemplar roots, and pi_0 is
// uniform. Ego nodes scoring below the knee of the descending score curve
// are removed; the freed bytes are refilled with new exemplars.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gdistill/coverage.hpp"
#include "gdistill/graph.hpp"
#include "gdistill/parallel.hpp"
#include "gdistill/rev_knn.hpp"

namespace gdistill {

struct PprConfig {
  // Teleport probability.
  double beta = 0.15;
  // Stop once the L1 change between iterates drops below this.
  double tolerance = 1e-9;
  std::size_t max_iters = 1000;

  void Validate() const;
};

struct PprScores {
  std::vector<double> scores;
  std::size_t iterations = 0;
  bool converged = false;
};

// Throws Error when sub has no root. Out-degree-0 nodes send their mass to e.
PprScores Ppr(const DistilledGraph& sub, const PprConfig& cfg,
              const Executor& executor = Executor::Serial());

// Node indices ordered by descending score, ties by ascending index.
std::vector<std::size_t> OrderByScore(std::span<const double> scores);

// Interior index i of a descending sequence maximizing
// |s[i+1] + s[i-1] - 2 s[i]|. Values within kKneeTieTolerance * s[0] of the
// maximum count as ties and go to the smaller index. Throws Error for fewer
// than three values.
std::size_t KneeIndex(std::span<const double> sorted_desc);

inline constexpr double kKneeTieTolerance = 1e-12;

struct SparsifyConfig {
  PprConfig ppr;
  // Stop when fewer than max(min_prune_count, ceil(min_prune_frac * nodes))
  // nodes fall below the knee.
  double min_prune_frac = 0.01;
  std::size_t min_prune_count = 1;
  std::size_t max_iters = 20;

  void Validate() const;
  std::size_t PruneThreshold(std::size_t num_nodes) const;
};

struct SparsifyIteration {
  std::size_t iteration;
  std::size_t nodes;
  std::size_t knee_index;
  double knee_value;
  std::size_t pruned;
  std::size_t refilled;
  std::uint64_t bytes_used;
  std::size_t ppr_iterations;
};

struct SparsifyResult {
  DistilledGraph graph;
  ExemplarSelection selection;
  // Source ids removed by pruning, ascending.
  std::vector<NodeId> pruned;
  std::vector<SparsifyIteration> log;
};

// Alternates PPR pruning and greedy refill starting from `sel`, which must
// be a nonempty ball-cost selection on g (members populated). Roots are
// never pruned, pruned nodes never come back, and the returned graph stays
// within budget_bytes.
SparsifyResult PruneAndEnrich(const Graph& g, ExemplarSelection sel, const RevKnnIndex& idx,
                              int depth, std::uint64_t budget_bytes, const SparsifyConfig& cfg,
                              const Executor& executor = Executor::Serial());

}  // namespace gdistill
