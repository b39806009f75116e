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

// End-to-end distillation: embed -> reverse k-NN -> greedy -> prune/refill.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdistill/coverage.hpp"
#include "gdistill/graph.hpp"
#include "gdistill/parallel.hpp"
#include "gdistill/rev_knn.hpp"
#include "gdistill/sparsify.hpp"
#include "gdistill/synthetic.hpp"
#include "gdistill/wl_embed.hpp"

namespace gdistill {

struct DistillConfig {
  int depth = 2;
  // Exactly one of these must be set. The fraction is taken of the input
  // graph's byte size.
  std::optional<std::uint64_t> budget_bytes;
  std::optional<double> budget_frac;
  SampleConfig sample;
  SparsifyConfig sparsify;
  std::size_t threads = 1;
  // Distill only nodes whose train flag is set.
  bool train_mask_only = false;
  bool normalize_rows = false;

  void Validate() const;
  std::uint64_t ResolveBudget(const Graph& g) const;
};

struct StageTime {
  std::string stage;
  double seconds;
};

struct RunReport {
  // embed, revknn, greedy, sparsify, then total.
  std::vector<StageTime> stages;
  std::uint64_t budget_bytes = 0;
  std::uint64_t source_bytes = 0;
  std::uint64_t bytes_used = 0;
  std::size_t sample_size = 0;
  double coverage = 0.0;
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  std::size_t num_roots = 0;
  // True when the whole (filtered) graph fit and was emitted unchanged.
  bool whole_graph = false;
  std::vector<SelectionStep> selection_trace;
  std::vector<SparsifyIteration> sparsify_log;

  double StageSeconds(const std::string& stage) const;
};

struct DistillResult {
  // Provenance refers to ids of the input graph.
  DistilledGraph graph;
  ExemplarSelection selection;
  WlEmbeddingTable embeddings;
  RevKnnIndex index;
  RunReport report;
};

// Throws InfeasibleBudget when no exemplar ball fits, Error on invalid
// configuration.
DistillResult Distill(const Graph& g, const DistillConfig& cfg);

struct ProbeRow {
  std::size_t num_nodes;
  std::size_t num_edges;
  // Per stage, best of the repeats.
  std::vector<StageTime> stages;
};

// Distills synthetic graphs of each size generated from `graph_template`
// with the node count replaced. Keep avg_degree set for fixed-degree
// scaling. Sizes must be increasing, at least three.
std::vector<ProbeRow> ScalingProbe(const std::vector<std::size_t>& sizes,
                                   const SyntheticParams& graph_template,
                                   const DistillConfig& cfg, std::size_t repeats = 1);

// Least-squares fit y = a + b x; returns {slope, r_squared}.
std::pair<double, double> LinearFit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gdistill
