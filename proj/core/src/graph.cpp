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

#include "gdistill/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gdistill/error.hpp"

namespace gdistill {

namespace {

void DropEmptyLabels(std::optional<std::vector<std::int32_t>>& labels) {
  if (labels && std::all_of(labels->begin(), labels->end(),
                            [](std::int32_t l) { return l == kNoLabel; })) {
    labels.reset();
  }
}

}  // namespace

Graph Graph::FromEdges(std::size_t num_nodes, std::size_t feature_dim,
                       std::vector<float> features, std::span<const Edge> edges,
                       std::optional<std::vector<std::int32_t>> labels,
                       std::optional<std::vector<std::uint8_t>> train_mask) {
  if (num_nodes >= std::numeric_limits<NodeId>::max()) {
    throw Error("too many nodes: " + std::to_string(num_nodes));
  }
  std::vector<std::uint64_t> offsets(num_nodes + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= num_nodes || v >= num_nodes) {
      throw Error("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                  ") references an unknown node");
    }
    ++offsets[u + 1];
    if (u != v) ++offsets[v + 1];
  }
  for (std::size_t i = 0; i < num_nodes; ++i) offsets[i + 1] += offsets[i];

  std::vector<NodeId> targets(offsets.back());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : edges) {
    targets[cursor[u]++] = v;
    if (u != v) targets[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < num_nodes; ++v) {
    auto first = targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
    auto last = targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw Error("duplicate edge (" + std::to_string(v) + ", " + std::to_string(*dup) + ")");
    }
  }
  return FromCsr(feature_dim, std::move(offsets), std::move(targets), std::move(features),
                 std::move(labels), std::move(train_mask));
}

Graph Graph::FromCsr(std::size_t feature_dim, std::vector<std::uint64_t> offsets,
                     std::vector<NodeId> targets, std::vector<float> features,
                     std::optional<std::vector<std::int32_t>> labels,
                     std::optional<std::vector<std::uint8_t>> train_mask) {
  Graph g;
  if (offsets.empty()) throw Error("CSR offsets must hold at least one entry");
  g.num_nodes_ = offsets.size() - 1;
  g.feature_dim_ = feature_dim;
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(targets);
  g.features_ = std::move(features);
  DropEmptyLabels(labels);
  g.labels_ = std::move(labels);
  g.train_mask_ = std::move(train_mask);
  g.Validate();
  return g;
}

void Graph::Validate() const {
  if (feature_dim_ == 0) throw Error("feature dimension must be at least 1");
  if (offsets_.front() != 0 || offsets_.back() != targets_.size()) {
    throw Error("CSR offsets do not span the target array");
  }
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    if (offsets_[v] > offsets_[v + 1]) throw Error("CSR offsets decrease at node " + std::to_string(v));
    auto nbrs = neighbors(static_cast<NodeId>(v));
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] >= num_nodes_) throw Error("CSR target out of range at node " + std::to_string(v));
      if (i > 0 && nbrs[i - 1] >= nbrs[i]) {
        throw Error("neighbor slice of node " + std::to_string(v) + " is not strictly increasing");
      }
    }
  }
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    for (NodeId u : neighbors(static_cast<NodeId>(v))) {
      if (!has_edge(u, static_cast<NodeId>(v))) {
        throw Error("edge (" + std::to_string(v) + ", " + std::to_string(u) + ") has no reverse");
      }
    }
  }
  if (features_.size() != num_nodes_ * feature_dim_) {
    throw Error("feature matrix has " + std::to_string(features_.size()) + " entries, expected " +
                std::to_string(num_nodes_ * feature_dim_));
  }
  if (!std::all_of(features_.begin(), features_.end(), [](float x) { return std::isfinite(x); })) {
    throw Error("features contain NaN or Inf");
  }
  if (labels_ && labels_->size() != num_nodes_) throw Error("label vector length mismatch");
  if (train_mask_ && train_mask_->size() != num_nodes_) throw Error("train mask length mismatch");
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::UndirectedEdges() const {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < num_nodes_; ++u) {
    for (NodeId v : neighbors(u)) {
      if (u <= v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

std::size_t DistilledGraph::num_roots() const {
  return static_cast<std::size_t>(std::count(root_flags.begin(), root_flags.end(), std::uint8_t{1}));
}

DistilledGraph InducedSubgraph(const Graph& g, std::span<const NodeId> node_ids,
                               std::span<const NodeId> roots) {
  if (node_ids.empty()) throw Error("induced subgraph requires a nonempty node set");
  std::vector<NodeId> origin(node_ids.begin(), node_ids.end());
  std::sort(origin.begin(), origin.end());
  origin.erase(std::unique(origin.begin(), origin.end()), origin.end());
  if (origin.back() >= g.num_nodes()) {
    throw Error("node id " + std::to_string(origin.back()) + " out of range");
  }

  constexpr NodeId kAbsent = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> remap(g.num_nodes(), kAbsent);
  for (std::size_t i = 0; i < origin.size(); ++i) remap[origin[i]] = static_cast<NodeId>(i);

  const std::size_t f = g.feature_dim();
  std::vector<std::uint64_t> offsets(origin.size() + 1, 0);
  std::vector<NodeId> targets;
  std::vector<float> features;
  features.reserve(origin.size() * f);
  for (std::size_t i = 0; i < origin.size(); ++i) {
    // Source slices are sorted and remap is monotone, so output stays sorted.
    for (NodeId u : g.neighbors(origin[i])) {
      if (remap[u] != kAbsent) targets.push_back(remap[u]);
    }
    offsets[i + 1] = targets.size();
    auto row = g.features(origin[i]);
    features.insert(features.end(), row.begin(), row.end());
  }

  std::optional<std::vector<std::int32_t>> labels;
  if (g.labels()) {
    labels.emplace();
    for (NodeId v : origin) labels->push_back((*g.labels())[v]);
  }
  std::optional<std::vector<std::uint8_t>> mask;
  if (g.train_mask()) {
    mask.emplace();
    for (NodeId v : origin) mask->push_back((*g.train_mask())[v]);
  }

  DistilledGraph out;
  out.graph = Graph::FromCsr(f, std::move(offsets), std::move(targets), std::move(features),
                             std::move(labels), std::move(mask));
  out.root_flags.assign(origin.size(), 0);
  for (NodeId r : roots) {
    if (r >= g.num_nodes() || remap[r] == kAbsent) {
      throw Error("root " + std::to_string(r) + " is not part of the induced node set");
    }
    out.root_flags[remap[r]] = 1;
  }
  out.origin_ids = std::move(origin);
  return out;
}

BallSearcher::BallSearcher(const Graph& g) : graph_(&g), stamp_(g.num_nodes(), 0) {}

std::span<const NodeId> BallSearcher::Ball(NodeId root, int depth,
                                           std::span<const std::uint8_t> blocked) {
  if (root >= graph_->num_nodes()) throw Error("root " + std::to_string(root) + " out of range");
  if (depth < 0) throw Error("depth must be nonnegative");
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  ball_.clear();
  const bool filter = !blocked.empty();
  if (filter && blocked[root]) return ball_;
  ball_.push_back(root);
  stamp_[root] = epoch_;
  std::size_t frontier_begin = 0;
  for (int hop = 0; hop < depth; ++hop) {
    const std::size_t frontier_end = ball_.size();
    if (frontier_begin == frontier_end) break;
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (NodeId u : graph_->neighbors(ball_[i])) {
        if (stamp_[u] != epoch_ && !(filter && blocked[u])) {
          stamp_[u] = epoch_;
          ball_.push_back(u);
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return ball_;
}

std::vector<NodeId> LHopNeighborhood(const Graph& g, NodeId root, int depth) {
  BallSearcher searcher(g);
  auto ball = searcher.Ball(root, depth);
  std::vector<NodeId> out(ball.begin(), ball.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t ByteSize(const Graph& g) {
  return ByteSize(g.num_nodes(), g.num_edges(), g.feature_dim(), g.has_labels());
}

std::uint64_t ByteSize(const DistilledGraph& d) { return ByteSize(d.graph); }

}  // namespace gdistill
