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
#include <string>
#include <string_view>

#include "gdistill/graph.hpp"

namespace gdistill {

enum class GraphKind { kErdosRenyi, kBarabasiAlbert, kPlantedClusters };

GraphKind ParseGraphKind(std::string_view name);
std::string_view GraphKindName(GraphKind kind);

struct SyntheticParams {
  GraphKind kind = GraphKind::kErdosRenyi;
  std::size_t num_nodes = 100;
  std::size_t feature_dim = 8;
  std::uint64_t seed = 0;

  // Erdos-Renyi edge probability. Ignored when avg_degree is set.
  double p = 0.05;
  // Expected degree; sets p = avg_degree / (n - 1) for Erdos-Renyi and the
  // intra/inter split for planted clusters.
  std::optional<double> avg_degree;

  // Barabasi-Albert edges per new node.
  std::size_t m = 2;

  // Planted clusters: label = cluster id, features drawn around a per-cluster
  // center at distance `separation` from the origin with unit noise.
  std::size_t clusters = 3;
  double p_in = 0.1;
  double p_out = 0.005;
  double separation = 4.0;

  void Validate() const;
};

// Reproducible for a fixed parameter set; features are standard normal
// except for planted clusters.
Graph GenerateSynthetic(const SyntheticParams& params);

}  // namespace gdistill
