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

#include "gdistill/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "gdistill/error.hpp"
#include "gdistill/random.hpp"

namespace gdistill {

namespace {

// Visits each unordered pair {i, j}, i < j < count, independently with
// probability p using geometric skips (Batagelj-Brandes).
void ForEachRandomPair(std::size_t count, double p, Rng& rng,
                       const std::function<void(std::size_t, std::size_t)>& visit) {
  if (count < 2 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::size_t i = 1; i < count; ++i) {
      for (std::size_t j = 0; j < i; ++j) visit(j, i);
    }
    return;
  }
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto n = static_cast<std::int64_t>(count);
  while (v < n) {
    const double r = rng.Uniform();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) visit(static_cast<std::size_t>(w), static_cast<std::size_t>(v));
  }
}

std::vector<float> GaussianFeatures(std::size_t n, std::size_t f, Rng& rng) {
  std::vector<float> x(n * f);
  for (auto& value : x) value = static_cast<float>(rng.Normal());
  return x;
}

Graph ErdosRenyi(const SyntheticParams& params, Rng& rng) {
  const std::size_t n = params.num_nodes;
  const double p = params.avg_degree ? *params.avg_degree / static_cast<double>(n - 1) : params.p;
  std::vector<Edge> edges;
  ForEachRandomPair(n, p, rng, [&](std::size_t i, std::size_t j) {
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  });
  auto features = GaussianFeatures(n, params.feature_dim, rng);
  return Graph::FromEdges(n, params.feature_dim, std::move(features), edges);
}

Graph BarabasiAlbert(const SyntheticParams& params, Rng& rng) {
  const std::size_t n = params.num_nodes;
  const std::size_t m = params.m;
  std::vector<Edge> edges;
  // Every edge endpoint, so uniform picks are degree-proportional.
  std::vector<NodeId> endpoints;
  const std::size_t seed_size = std::min(n, m + 1);
  for (std::size_t i = 1; i < seed_size; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      edges.emplace_back(static_cast<NodeId>(j), static_cast<NodeId>(i));
      endpoints.push_back(static_cast<NodeId>(i));
      endpoints.push_back(static_cast<NodeId>(j));
    }
  }
  std::vector<NodeId> targets;
  for (std::size_t v = seed_size; v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const NodeId t = endpoints[rng.UniformInt(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    std::sort(targets.begin(), targets.end());
    for (NodeId t : targets) {
      edges.emplace_back(t, static_cast<NodeId>(v));
      endpoints.push_back(t);
      endpoints.push_back(static_cast<NodeId>(v));
    }
  }
  auto features = GaussianFeatures(n, params.feature_dim, rng);
  return Graph::FromEdges(n, params.feature_dim, std::move(features), edges);
}

Graph PlantedClusters(const SyntheticParams& params, Rng& rng) {
  const std::size_t n = params.num_nodes;
  const std::size_t c = params.clusters;
  const std::size_t f = params.feature_dim;

  std::vector<std::int32_t> labels(n);
  std::vector<std::vector<NodeId>> members(c);
  for (std::size_t v = 0; v < n; ++v) {
    labels[v] = static_cast<std::int32_t>(v % c);
    members[v % c].push_back(static_cast<NodeId>(v));
  }

  double p_in = params.p_in;
  double p_out = params.p_out;
  if (params.avg_degree) {
    // Keep the intra/inter ratio and rescale to the requested mean degree.
    const double cluster_size = static_cast<double>(n) / static_cast<double>(c);
    const double expected = p_in * (cluster_size - 1.0) + p_out * (static_cast<double>(n) - cluster_size);
    if (expected > 0.0) {
      p_in = std::min(1.0, p_in * *params.avg_degree / expected);
      p_out = std::min(1.0, p_out * *params.avg_degree / expected);
    }
  }

  std::vector<Edge> edges;
  for (const auto& group : members) {
    ForEachRandomPair(group.size(), p_in, rng, [&](std::size_t i, std::size_t j) {
      edges.emplace_back(group[i], group[j]);
    });
  }
  ForEachRandomPair(n, p_out, rng, [&](std::size_t i, std::size_t j) {
    if (labels[i] != labels[j]) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  });

  // Cluster centers: random directions scaled to `separation`.
  std::vector<double> centers(c * f);
  for (std::size_t k = 0; k < c; ++k) {
    double norm = 0.0;
    for (std::size_t j = 0; j < f; ++j) {
      centers[k * f + j] = rng.Normal();
      norm += centers[k * f + j] * centers[k * f + j];
    }
    norm = std::sqrt(norm);
    for (std::size_t j = 0; j < f; ++j) {
      centers[k * f + j] = norm > 0.0 ? centers[k * f + j] * params.separation / norm : 0.0;
    }
  }
  std::vector<float> features(n * f);
  for (std::size_t v = 0; v < n; ++v) {
    const auto k = static_cast<std::size_t>(labels[v]);
    for (std::size_t j = 0; j < f; ++j) {
      features[v * f + j] = static_cast<float>(centers[k * f + j] + rng.Normal());
    }
  }
  return Graph::FromEdges(n, f, std::move(features), edges, std::move(labels));
}

}  // namespace

GraphKind ParseGraphKind(std::string_view name) {
  if (name == "erdos-renyi") return GraphKind::kErdosRenyi;
  if (name == "barabasi-albert") return GraphKind::kBarabasiAlbert;
  if (name == "planted-clusters") return GraphKind::kPlantedClusters;
  throw Error("unknown graph kind '" + std::string(name) + "'");
}

std::string_view GraphKindName(GraphKind kind) {
  switch (kind) {
    case GraphKind::kErdosRenyi:
      return "erdos-renyi";
    case GraphKind::kBarabasiAlbert:
      return "barabasi-albert";
    case GraphKind::kPlantedClusters:
      return "planted-clusters";
  }
  return "unknown";
}

void SyntheticParams::Validate() const {
  if (num_nodes < 2) throw Error("synthetic graphs need at least 2 nodes");
  if (feature_dim < 1) throw Error("feature dimension must be at least 1");
  auto probability = [](double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) throw Error(std::string(name) + " must lie in [0, 1]");
  };
  probability(p, "p");
  probability(p_in, "p_in");
  probability(p_out, "p_out");
  if (avg_degree && !(*avg_degree >= 0.0 && *avg_degree <= static_cast<double>(num_nodes - 1))) {
    throw Error("average degree must lie in [0, n - 1]");
  }
  if (kind == GraphKind::kBarabasiAlbert && (m < 1 || m >= num_nodes)) {
    throw Error("Barabasi-Albert m must lie in [1, n)");
  }
  if (kind == GraphKind::kPlantedClusters && (clusters < 1 || clusters > num_nodes)) {
    throw Error("cluster count must lie in [1, n]");
  }
  if (!(separation >= 0.0) || !std::isfinite(separation)) throw Error("separation must be finite and nonnegative");
}

Graph GenerateSynthetic(const SyntheticParams& params) {
  params.Validate();
  Rng rng(params.seed);
  switch (params.kind) {
    case GraphKind::kErdosRenyi:
      return ErdosRenyi(params, rng);
    case GraphKind::kBarabasiAlbert:
      return BarabasiAlbert(params, rng);
    case GraphKind::kPlantedClusters:
      return PlantedClusters(params, rng);
  }
  throw Error("unknown graph kind");
}

}  // namespace gdistill
