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

// Continuous Weisfeiler-Lehman kernel embeddings.
//
// Each layer replaces a node's vector with the mean of its previous vector
// and the mean of its neighbors' previous vectors:
//
//   a^l(v) = 1/2 * (a^{l-1}(v) + 1/deg(v) * sum_{u in N(v)} a^{l-1}(u))
//
// with a^0(v) = x_v. After L layers a_v depends only on the depth-L
// computation tree rooted at v, so the L2 distance between two rows is used
// as a distance between computation trees. Isolated nodes keep their
// previous vector unchanged.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gdistill/graph.hpp"
#include "gdistill/parallel.hpp"

namespace gdistill {

class WlEmbeddingTable {
 public:
  WlEmbeddingTable() = default;
  WlEmbeddingTable(std::size_t num_nodes, std::size_t dim, int depth, std::vector<double> values);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t dim() const { return dim_; }
  int depth() const { return depth_; }

  std::span<const double> row(NodeId v) const {
    return {values_.data() + std::size_t{v} * dim_, dim_};
  }
  std::span<const double> values() const { return values_; }

  bool operator==(const WlEmbeddingTable&) const = default;

 private:
  std::size_t num_nodes_ = 0;
  std::size_t dim_ = 0;
  int depth_ = 0;
  std::vector<double> values_;
};

struct WlOptions {
  int depth = 2;
  // Scale each feature row to unit L2 norm before the first layer.
  bool normalize_rows = false;
};

WlEmbeddingTable WlEmbed(const Graph& g, const WlOptions& options,
                         const Executor& executor = Executor::Serial());

inline WlEmbeddingTable WlEmbed(const Graph& g, int depth,
                                const Executor& executor = Executor::Serial()) {
  return WlEmbed(g, WlOptions{depth, false}, executor);
}

// Euclidean distance between rows u and v.
double TreeDistance(const WlEmbeddingTable& table, NodeId u, NodeId v);

// Squared Euclidean distance between two equal-length vectors.
inline double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace gdistill
