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

#include "gdistill/rev_knn.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <utility>

#include "gdistill/error.hpp"
#include "gdistill/random.hpp"

namespace gdistill {

void SampleConfig::Validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) throw Error("theta must lie in (0, 1], got " + std::to_string(theta));
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0, 1), got " + std::to_string(delta));
  if (k < 1) throw Error("k must be at least 1");
}

std::size_t SampleSize(double theta, double delta) {
  SampleConfig{theta, delta, 1, 0}.Validate();
  return static_cast<std::size_t>(std::ceil(std::log(2.0 / delta) * (2.0 + theta) / (theta * theta)));
}

RevKnnIndex RevKnnIndex::FromLists(std::vector<NodeId> sample_ids,
                                   std::vector<std::vector<NodeId>> rev_lists, std::size_t k) {
  std::sort(sample_ids.begin(), sample_ids.end());
  if (std::adjacent_find(sample_ids.begin(), sample_ids.end()) != sample_ids.end()) {
    throw Error("duplicate sample id");
  }
  for (auto& list : rev_lists) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw Error("duplicate entry in reverse list");
    }
    for (NodeId s : list) {
      if (!std::binary_search(sample_ids.begin(), sample_ids.end(), s)) {
        throw Error("reverse list entry " + std::to_string(s) + " is not a sample");
      }
    }
  }
  RevKnnIndex idx;
  idx.k_ = k;
  idx.sample_ids_ = std::move(sample_ids);
  idx.rev_lists_ = std::move(rev_lists);
  return idx;
}

double RevKnnIndex::RepresentativePower(NodeId v) const {
  if (v >= rev_lists_.size()) throw Error("node id out of range");
  if (sample_ids_.empty()) return 0.0;
  return static_cast<double>(rev_lists_[v].size()) / static_cast<double>(sample_ids_.size());
}

std::vector<NodeId> KNearest(const WlEmbeddingTable& table, NodeId query, std::size_t k) {
  // Max-heap on (squared distance, id): top is the worst of the current best k.
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry> heap;
  const auto q = table.row(query);
  const auto n = static_cast<NodeId>(table.num_nodes());
  for (NodeId u = 0; u < n; ++u) {
    if (u == query) continue;
    Entry e{SquaredDistance(q, table.row(u)), u};
    if (heap.size() < k) {
      heap.push(e);
    } else if (e < heap.top()) {
      heap.pop();
      heap.push(e);
    }
  }
  std::vector<NodeId> out(heap.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = heap.top().second;
    heap.pop();
  }
  return out;
}

RevKnnIndex BuildRevKnn(const WlEmbeddingTable& table, const SampleConfig& cfg,
                        const Executor& executor) {
  cfg.Validate();
  const std::size_t n = table.num_nodes();
  if (cfg.k >= n) {
    throw Error("k = " + std::to_string(cfg.k) + " must be smaller than the node count " +
                std::to_string(n));
  }
  const std::size_t z = std::min(SampleSize(cfg.theta, cfg.delta), n);

  Rng rng(cfg.seed);
  auto samples = rng.SampleWithoutReplacement(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(z));
  std::sort(samples.begin(), samples.end());

  std::vector<std::vector<NodeId>> knn(z);
  executor.ParallelFor(0, z, [&](std::size_t i) { knn[i] = KNearest(table, samples[i], cfg.k); });

  RevKnnIndex idx;
  idx.k_ = cfg.k;
  idx.rev_lists_.resize(n);
  for (std::size_t i = 0; i < z; ++i) {
    for (NodeId u : knn[i]) idx.rev_lists_[u].push_back(samples[i]);
  }
  idx.sample_ids_.assign(samples.begin(), samples.end());
  return idx;
}

}  // namespace gdistill
