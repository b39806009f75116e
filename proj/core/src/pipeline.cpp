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

#include "gdistill/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gdistill/error.hpp"

namespace gdistill {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t SmallestFeasibleBudget(const Graph& g, const RevKnnIndex& idx, int depth) {
  BallCostModel cost(g, depth);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (!idx.rev_list(v).empty()) best = std::min(best, cost.IncrementalCost(v));
  }
  return best;
}

}  // namespace

void DistillConfig::Validate() const {
  if (depth < 0) throw Error("layer count must be nonnegative");
  if (budget_bytes.has_value() == budget_frac.has_value()) {
    throw Error("exactly one of budget bytes and budget fraction must be set");
  }
  if (budget_frac && !(*budget_frac > 0.0 && *budget_frac <= 1.0)) {
    throw Error("budget fraction must lie in (0, 1]");
  }
  sample.Validate();
  sparsify.Validate();
}

std::uint64_t DistillConfig::ResolveBudget(const Graph& g) const {
  if (budget_bytes) return *budget_bytes;
  return static_cast<std::uint64_t>(std::floor(*budget_frac * static_cast<double>(ByteSize(g))));
}

double RunReport::StageSeconds(const std::string& stage) const {
  for (const auto& s : stages) {
    if (s.stage == stage) return s.seconds;
  }
  throw Error("no stage named " + stage);
}

DistillResult Distill(const Graph& input, const DistillConfig& cfg) {
  cfg.Validate();
  const auto total_start = Clock::now();
  const Executor executor(cfg.threads);

  DistillResult result;
  RunReport& report = result.report;
  report.source_bytes = ByteSize(input);
  report.budget_bytes = cfg.ResolveBudget(input);

  // Optional train-mask restriction; `origin` maps working ids to input ids.
  std::optional<DistilledGraph> filtered;
  if (cfg.train_mask_only) {
    if (!input.train_mask()) throw Error("train-mask-only distillation needs a train mask");
    std::vector<NodeId> train;
    for (NodeId v = 0; v < input.num_nodes(); ++v) {
      if ((*input.train_mask())[v]) train.push_back(v);
    }
    if (train.empty()) throw Error("train mask selects no nodes");
    filtered = InducedSubgraph(input, train);
  }
  const Graph& g = filtered ? filtered->graph : input;

  auto start = Clock::now();
  result.embeddings = WlEmbed(g, WlOptions{cfg.depth, cfg.normalize_rows}, executor);
  report.stages.push_back({"embed", SecondsSince(start)});

  start = Clock::now();
  result.index = BuildRevKnn(result.embeddings, cfg.sample, executor);
  report.stages.push_back({"revknn", SecondsSince(start)});
  report.sample_size = result.index.sample_size();

  start = Clock::now();
  auto selection = GreedySelect(g, result.index, cfg.depth, report.budget_bytes);
  report.stages.push_back({"greedy", SecondsSince(start)});
  if (selection.roots.empty()) {
    throw InfeasibleBudget(report.budget_bytes, SmallestFeasibleBudget(g, result.index, cfg.depth));
  }
  report.selection_trace = selection.trace;

  start = Clock::now();
  DistilledGraph distilled;
  if (ByteSize(g) <= report.budget_bytes) {
    // Everything fits: no budget pressure, nothing to prune.
    std::vector<NodeId> all(g.num_nodes());
    std::iota(all.begin(), all.end(), NodeId{0});
    distilled = InducedSubgraph(g, all, selection.roots);
    report.whole_graph = true;
    result.selection = std::move(selection);
  } else {
    auto sparse = PruneAndEnrich(g, std::move(selection), result.index, cfg.depth,
                                 report.budget_bytes, cfg.sparsify, executor);
    distilled = std::move(sparse.graph);
    report.sparsify_log = std::move(sparse.log);
    result.selection = std::move(sparse.selection);
    report.selection_trace = result.selection.trace;
  }
  report.stages.push_back({"sparsify", SecondsSince(start)});

  if (filtered) {
    for (auto& id : distilled.origin_ids) id = filtered->origin_ids[id];
  }
  report.bytes_used = ByteSize(distilled);
  if (report.bytes_used > report.budget_bytes) {
    throw std::logic_error("distilled graph exceeds the byte budget");
  }
  report.coverage = result.selection.coverage_value();
  report.num_nodes = distilled.graph.num_nodes();
  report.num_edges = distilled.graph.num_edges();
  report.num_roots = distilled.num_roots();
  result.graph = std::move(distilled);
  report.stages.push_back({"total", SecondsSince(total_start)});
  return result;
}

std::vector<ProbeRow> ScalingProbe(const std::vector<std::size_t>& sizes,
                                   const SyntheticParams& graph_template,
                                   const DistillConfig& cfg, std::size_t repeats) {
  if (sizes.size() < 3) throw Error("scaling probe needs at least three sizes");
  if (!std::is_sorted(sizes.begin(), sizes.end()) ||
      std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end()) {
    throw Error("scaling probe sizes must be strictly increasing");
  }
  if (repeats < 1) throw Error("scaling probe needs at least one repeat");

  std::vector<ProbeRow> rows;
  for (std::size_t n : sizes) {
    SyntheticParams params = graph_template;
    params.num_nodes = n;
    const Graph g = GenerateSynthetic(params);
    ProbeRow row{n, g.num_edges(), {}};
    for (std::size_t r = 0; r < repeats; ++r) {
      const auto report = Distill(g, cfg).report;
      if (row.stages.empty()) {
        row.stages = report.stages;
        continue;
      }
      for (std::size_t s = 0; s < row.stages.size(); ++s) {
        row.stages[s].seconds = std::min(row.stages[s].seconds, report.stages[s].seconds);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::pair<double, double> LinearFit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("linear fit needs matching samples");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error("linear fit needs distinct x values");
  const double slope = sxy / sxx;
  const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return {slope, r2};
}

}  // namespace gdistill
