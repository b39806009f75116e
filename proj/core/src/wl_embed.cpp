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

#include "gdistill/wl_embed.hpp"

#include <cmath>
#include <string>

#include "gdistill/error.hpp"

namespace gdistill {

WlEmbeddingTable::WlEmbeddingTable(std::size_t num_nodes, std::size_t dim, int depth,
                                   std::vector<double> values)
    : num_nodes_(num_nodes), dim_(dim), depth_(depth), values_(std::move(values)) {
  if (values_.size() != num_nodes_ * dim_) throw Error("embedding table shape mismatch");
  if (depth_ < 0) throw Error("embedding depth must be nonnegative");
}

WlEmbeddingTable WlEmbed(const Graph& g, const WlOptions& options, const Executor& executor) {
  if (options.depth < 0) throw Error("WL depth must be nonnegative, got " + std::to_string(options.depth));
  const std::size_t n = g.num_nodes();
  const std::size_t f = g.feature_dim();

  std::vector<double> current(n * f);
  auto features = g.feature_matrix();
  for (std::size_t i = 0; i < current.size(); ++i) current[i] = features[i];
  if (options.normalize_rows) {
    for (std::size_t v = 0; v < n; ++v) {
      double norm = 0.0;
      for (std::size_t j = 0; j < f; ++j) norm += current[v * f + j] * current[v * f + j];
      norm = std::sqrt(norm);
      if (norm > 0.0) {
        for (std::size_t j = 0; j < f; ++j) current[v * f + j] /= norm;
      }
    }
  }

  std::vector<double> next(n * f);
  for (int layer = 0; layer < options.depth; ++layer) {
    executor.ParallelFor(0, n, [&](std::size_t v) {
      const double* self = current.data() + v * f;
      double* out = next.data() + v * f;
      const auto nbrs = g.neighbors(static_cast<NodeId>(v));
      if (nbrs.empty()) {
        std::copy(self, self + f, out);
        return;
      }
      std::fill(out, out + f, 0.0);
      for (NodeId u : nbrs) {
        const double* other = current.data() + std::size_t{u} * f;
        for (std::size_t j = 0; j < f; ++j) out[j] += other[j];
      }
      const double inv_deg = 1.0 / static_cast<double>(nbrs.size());
      for (std::size_t j = 0; j < f; ++j) out[j] = 0.5 * (self[j] + out[j] * inv_deg);
    });
    current.swap(next);
  }
  return WlEmbeddingTable(n, f, options.depth, std::move(current));
}

double TreeDistance(const WlEmbeddingTable& table, NodeId u, NodeId v) {
  if (u >= table.num_nodes() || v >= table.num_nodes()) throw Error("node id out of range");
  return std::sqrt(SquaredDistance(table.row(u), table.row(v)));
}

}  // namespace gdistill
