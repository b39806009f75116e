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

// Sampled reverse k-nearest-neighbor sets.
//
// The representative power of a node is the fraction of nodes that list it
// among their k nearest neighbors in embedding space. Computing k-NN for
// every node is quadratic, so only z sampled nodes are queried and the
// fraction is taken over the sample. With
//
//   z >= ln(2 / delta) * (2 + theta) / theta^2
//
// the estimate is within theta of the exact value with probability at
// least 1 - delta, independently of the graph size.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gdistill/graph.hpp"
#include "gdistill/parallel.hpp"
#include "gdistill/wl_embed.hpp"

namespace gdistill {

struct SampleConfig {
  double theta = 0.15;
  double delta = 0.1;
  std::size_t k = 5;
  std::uint64_t seed = 0;

  // Throws Error unless 0 < theta <= 1, 0 < delta < 1 and k >= 1.
  void Validate() const;
};

// Smallest sample size meeting the error bound; not capped.
std::size_t SampleSize(double theta, double delta);

class RevKnnIndex {
 public:
  RevKnnIndex() = default;

  // Adopts explicit reverse lists, mainly for building coverage instances.
  // Every listed id must be one of sample_ids. Lists are sorted.
  static RevKnnIndex FromLists(std::vector<NodeId> sample_ids,
                               std::vector<std::vector<NodeId>> rev_lists, std::size_t k = 0);

  std::size_t num_nodes() const { return rev_lists_.size(); }
  std::size_t sample_size() const { return sample_ids_.size(); }
  std::size_t k() const { return k_; }
  // Ascending.
  std::span<const NodeId> sample_ids() const { return sample_ids_; }
  // Sample ids whose k-NN contains v, ascending.
  std::span<const NodeId> rev_list(NodeId v) const { return rev_lists_[v]; }

  // |rev_list(v)| / z, in [0, 1].
  double RepresentativePower(NodeId v) const;

  bool operator==(const RevKnnIndex&) const = default;

 private:
  friend RevKnnIndex BuildRevKnn(const WlEmbeddingTable&, const SampleConfig&, const Executor&);

  std::size_t k_ = 0;
  std::vector<NodeId> sample_ids_;
  std::vector<std::vector<NodeId>> rev_lists_;
};

// Samples z = min(SampleSize(theta, delta), n) nodes uniformly without
// replacement and computes each sample's exact k-NN over all nodes,
// excluding the sample itself, breaking distance ties by smaller id.
// Throws Error when k >= n.
RevKnnIndex BuildRevKnn(const WlEmbeddingTable& table, const SampleConfig& cfg,
                        const Executor& executor = Executor::Serial());

// The k nearest nodes to `query` by (distance, id), excluding query.
std::vector<NodeId> KNearest(const WlEmbeddingTable& table, NodeId query, std::size_t k);

}  // namespace gdistill
