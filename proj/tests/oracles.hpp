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

// Reference implementations used only by tests. Each one takes the slow,
// obvious route and shares no code path with the library routine it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gdistill/coverage.hpp"
#include "gdistill/graph.hpp"
#include "gdistill/random.hpp"
#include "gdistill/rev_knn.hpp"

namespace gdistill::testing {

// Dense adjacency matrix with 1 per directed slot.
inline std::vector<std::vector<double>> DenseAdjacency(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& [u, v] : g.UndirectedEdges()) {
    a[u][v] = 1.0;
    a[v][u] = 1.0;
  }
  return a;
}

// Dense power iteration for pi = (1 - beta) A pi + beta e with A the
// column-normalized adjacency; zero columns send mass to e.
inline std::vector<double> DensePpr(const Graph& g, const std::vector<std::uint8_t>& roots,
                                    double beta, int iterations) {
  const std::size_t n = g.num_nodes();
  auto adj = DenseAdjacency(g);
  std::vector<double> col_sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) col_sum[j] += adj[i][j];
  }
  double root_count = 0;
  for (auto r : roots) root_count += r;
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = roots[i] ? 1.0 / root_count : 0.0;

  std::vector<double> pi(n, 1.0 / static_cast<double>(n)), next(n);
  for (int it = 0; it < iterations; ++it) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (col_sum[j] == 0.0) dangling += pi[j];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (col_sum[j] > 0.0) s += adj[i][j] / col_sum[j] * pi[j];
      }
      next[i] = (1.0 - beta) * (s + dangling * e[i]) + beta * e[i];
    }
    pi.swap(next);
  }
  return pi;
}

// Every interior second difference, then the first index within
// `tolerance * s[0]` of the largest.
inline std::size_t ExhaustiveKnee(const std::vector<double>& s, double tolerance) {
  std::vector<double> diffs;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    diffs.push_back(std::fabs(s[i + 1] + s[i - 1] - 2.0 * s[i]));
  }
  double best = diffs[0];
  for (double d : diffs) best = std::max(best, d);
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i] >= best - tolerance * std::fabs(s[0])) return i + 1;
  }
  return 1;
}

// Exact representative power over all n nodes: for every query node, sort
// all others by (distance, id) and credit the first k.
inline std::vector<double> ExactRepresentativePower(const std::vector<std::vector<double>>& points,
                                                    std::size_t k) {
  const std::size_t n = points.size();
  std::vector<double> counts(n, 0.0);
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t q = 0; q < n; ++q) {
    order.clear();
    for (std::size_t u = 0; u < n; ++u) {
      if (u == q) continue;
      double d = 0.0;
      for (std::size_t j = 0; j < points[q].size(); ++j) {
        d += (points[q][j] - points[u][j]) * (points[q][j] - points[u][j]);
      }
      order.emplace_back(d, u);
    }
    std::sort(order.begin(), order.end());
    for (std::size_t i = 0; i < k; ++i) counts[order[i].second] += 1.0;
  }
  for (auto& c : counts) c /= static_cast<double>(n);
  return counts;
}

inline std::size_t UnionSize(const RevKnnIndex& idx, const std::vector<NodeId>& roots) {
  std::set<NodeId> covered;
  for (NodeId r : roots) {
    for (NodeId s : idx.rev_list(r)) covered.insert(s);
  }
  return covered.size();
}

// Plain greedy: every step scores all candidates from scratch.
inline std::vector<NodeId> NaiveGreedy(const RevKnnIndex& idx, const std::vector<std::uint64_t>& costs,
                                       std::uint64_t budget) {
  std::vector<NodeId> roots;
  std::uint64_t used = 0;
  const std::size_t n = idx.num_nodes();
  while (true) {
    const std::size_t base = UnionSize(idx, roots);
    std::size_t best_gain = 0;
    NodeId best = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (std::find(roots.begin(), roots.end(), v) != roots.end()) continue;
      if (used + costs[v] > budget) continue;
      auto with = roots;
      with.push_back(v);
      const std::size_t gain = UnionSize(idx, with) - base;
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    if (best_gain == 0) return roots;
    roots.push_back(best);
    used += costs[best];
  }
}

// Random reverse lists over samples {0..z-1} for n candidates.
inline RevKnnIndex RandomCoverageInstance(Rng& rng, std::size_t n, std::size_t z, double density) {
  std::vector<NodeId> samples(z);
  for (std::size_t i = 0; i < z; ++i) samples[i] = static_cast<NodeId>(i);
  std::vector<std::vector<NodeId>> lists(std::max(n, z));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t s = 0; s < z; ++s) {
      if (rng.Uniform() < density) lists[v].push_back(static_cast<NodeId>(s));
    }
  }
  lists.resize(std::max(n, z));
  return RevKnnIndex::FromLists(samples, lists);
}

// Byte size recomputed from emitted TSV files by plain text scanning:
// nodes * (F * 4 + 8) + edge slots * 8 + 4 per node if any label != -1.
// A self-loop line is one slot, any other edge line two.
inline std::uint64_t AccountEmittedBytes(const std::filesystem::path& dir) {
  std::ifstream nodes(dir / "nodes.tsv");
  std::string line;
  std::uint64_t node_count = 0;
  std::uint64_t feature_dim = 0;
  bool labeled = false;
  while (std::getline(nodes, line)) {
    if (line.empty()) continue;
    ++node_count;
    std::istringstream fields(line);
    std::string id, label, feats;
    std::getline(fields, id, '\t');
    std::getline(fields, label, '\t');
    std::getline(fields, feats, '\t');
    if (label != "-1") labeled = true;
    feature_dim = static_cast<std::uint64_t>(std::count(feats.begin(), feats.end(), ',')) + 1;
  }
  std::ifstream edges(dir / "edges.tsv");
  std::uint64_t slots = 0;
  while (std::getline(edges, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    slots += line.substr(0, tab) == line.substr(tab + 1) ? 1 : 2;
  }
  return node_count * (feature_dim * 4 + 8) + slots * 8 + (labeled ? node_count * 4 : 0);
}

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// A graph whose every node carries the same one-hot feature width.
inline Graph MakeGraph(std::size_t n, const std::vector<Edge>& edges, std::size_t f = 1,
                       std::vector<float> features = {}) {
  if (features.empty()) features.assign(n * f, 1.0f);
  return Graph::FromEdges(n, f, std::move(features), edges);
}

}  // namespace gdistill::testing
