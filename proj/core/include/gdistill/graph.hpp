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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gdistill {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Label value meaning "unlabeled" in files and label vectors.
inline constexpr std::int32_t kNoLabel = -1;

// Immutable undirected node-attributed graph in CSR form.
//
// Every undirected edge {u, v} with u != v occupies two directed slots, a
// self-loop occupies one. Neighbor slices are strictly increasing. Features
// are stored row-major as 4-byte reals.
class Graph {
 public:
  Graph() = default;

  // Builds from an undirected edge list. Each unordered pair may appear at
  // most once in either orientation. Throws Error on out-of-range ids,
  // duplicate edges, a feature matrix of the wrong shape, non-finite
  // features, or mismatched label / mask lengths.
  //
  // A label vector containing only kNoLabel is dropped.
  static Graph FromEdges(std::size_t num_nodes, std::size_t feature_dim,
                         std::vector<float> features, std::span<const Edge> edges,
                         std::optional<std::vector<std::int32_t>> labels = std::nullopt,
                         std::optional<std::vector<std::uint8_t>> train_mask = std::nullopt);

  // Adopts prebuilt CSR arrays after validating every invariant.
  static Graph FromCsr(std::size_t feature_dim, std::vector<std::uint64_t> offsets,
                       std::vector<NodeId> targets, std::vector<float> features,
                       std::optional<std::vector<std::int32_t>> labels = std::nullopt,
                       std::optional<std::vector<std::uint8_t>> train_mask = std::nullopt);

  std::size_t num_nodes() const { return num_nodes_; }
  // Directed edge slots.
  std::size_t num_edges() const { return targets_.size(); }
  std::size_t feature_dim() const { return feature_dim_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  std::span<const float> features(NodeId v) const {
    return {features_.data() + std::size_t{v} * feature_dim_, feature_dim_};
  }
  std::span<const float> feature_matrix() const { return features_; }
  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::span<const NodeId> targets() const { return targets_; }

  bool has_labels() const { return labels_.has_value(); }
  const std::optional<std::vector<std::int32_t>>& labels() const { return labels_; }
  const std::optional<std::vector<std::uint8_t>>& train_mask() const { return train_mask_; }

  // Undirected edges with u <= v, in CSR order.
  std::vector<Edge> UndirectedEdges() const;

  bool operator==(const Graph&) const = default;

 private:
  void Validate() const;

  std::size_t num_nodes_ = 0;
  std::size_t feature_dim_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<float> features_;
  std::optional<std::vector<std::int32_t>> labels_;
  std::optional<std::vector<std::uint8_t>> train_mask_;
};

// Induced subgraph with provenance back to the source graph.
struct DistilledGraph {
  Graph graph;
  // origin_ids[i] is the source id of distilled node i; ascending.
  std::vector<NodeId> origin_ids;
  // 1 for exemplar roots, 0 for ego nodes.
  std::vector<std::uint8_t> root_flags;

  std::size_t num_roots() const;
  bool operator==(const DistilledGraph&) const = default;
};

// Subgraph on node_ids keeping every source edge whose endpoints are both
// selected. Duplicate ids are ignored. Nodes listed in roots (which must be
// a subset of node_ids) get their root flag set. Throws Error on an empty
// set or an invalid id.
DistilledGraph InducedSubgraph(const Graph& g, std::span<const NodeId> node_ids,
                               std::span<const NodeId> roots = {});

// Nodes within `depth` hops of root, including root, in ascending order.
std::vector<NodeId> LHopNeighborhood(const Graph& g, NodeId root, int depth);

// Reusable BFS workspace for repeated ball queries on one graph.
class BallSearcher {
 public:
  explicit BallSearcher(const Graph& g);

  // Same contract as LHopNeighborhood but the result is in BFS order and
  // stays valid until the next call. When `blocked` is nonempty it holds one
  // flag per node; flagged nodes are neither reported nor traversed (a
  // blocked root yields an empty ball).
  std::span<const NodeId> Ball(NodeId root, int depth, std::span<const std::uint8_t> blocked = {});

 private:
  const Graph* graph_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> ball_;
};

// Byte accounting used for every budget check:
//   nodes * (F * 4 + 8) + directed_edge_slots * 8 + (labels ? nodes * 4 : 0)
inline constexpr std::uint64_t kFeatureBytes = 4;
inline constexpr std::uint64_t kIdBytes = 8;
inline constexpr std::uint64_t kLabelBytes = 4;

constexpr std::uint64_t NodeBytes(std::size_t feature_dim, bool has_labels) {
  return feature_dim * kFeatureBytes + kIdBytes + (has_labels ? kLabelBytes : 0);
}

constexpr std::uint64_t ByteSize(std::size_t num_nodes, std::size_t edge_slots,
                                 std::size_t feature_dim, bool has_labels) {
  return num_nodes * NodeBytes(feature_dim, has_labels) + edge_slots * kIdBytes;
}

std::uint64_t ByteSize(const Graph& g);
std::uint64_t ByteSize(const DistilledGraph& d);

}  // namespace gdistill
