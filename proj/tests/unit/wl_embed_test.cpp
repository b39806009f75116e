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

#include <doctest.h>

#include <cmath>

#include "gdistill/random.hpp"
#include "gdistill/synthetic.hpp"
#include "gdistill/wl_embed.hpp"
#include "oracles.hpp"
#include "wl_fixtures.hpp"

using namespace gdistill;

TEST_CASE("depth zero reproduces the feature matrix") {
  SyntheticParams params;
  params.num_nodes = 50;
  params.seed = 4;
  auto g = GenerateSynthetic(params);
  auto t = WlEmbed(g, 0);
  REQUIRE(t.values().size() == g.feature_matrix().size());
  for (std::size_t i = 0; i < t.values().size(); ++i) CHECK(t.values()[i] == double{g.feature_matrix()[i]});
}

TEST_CASE("identical connected features are a fixed point") {
  auto g = Graph::FromEdges(2, 2, {0.25f, -1.0f, 0.25f, -1.0f}, std::vector<Edge>{{0, 1}});
  auto t = WlEmbed(g, 1);
  CHECK(t.row(0)[0] == 0.25);
  CHECK(t.row(1)[1] == -1.0);
}

TEST_CASE("one layer matches the averaging rule by hand") {
  // Path 0-1-2 with scalar features 0, 3, 9.
  auto g = Graph::FromEdges(3, 1, {0.0f, 3.0f, 9.0f}, std::vector<Edge>{{0, 1}, {1, 2}});
  auto t = WlEmbed(g, 1);
  CHECK(t.row(0)[0] == doctest::Approx(0.5 * (0.0 + 3.0)));
  CHECK(t.row(1)[0] == doctest::Approx(0.5 * (3.0 + 4.5)));
  CHECK(t.row(2)[0] == doctest::Approx(0.5 * (9.0 + 3.0)));
}

TEST_CASE("isolated nodes keep their features unshrunk") {
  auto g = Graph::FromEdges(3, 1, {2.0f, 4.0f, 8.0f}, std::vector<Edge>{{0, 1}});
  auto t = WlEmbed(g, 5);
  CHECK(t.row(2)[0] == 8.0);
}

TEST_CASE("isomorphic computation trees get identical embeddings") {
  SUBCASE("colored six-cycle vs colored triangles") {
    auto fx = gdistill::testing::CycleVsTrianglesFixture();
    auto t = WlEmbed(fx.graph, 2);
    CHECK(TreeDistance(t, fx.first, fx.second) <= 1e-9);
    // Different colors, different trees.
    CHECK(TreeDistance(t, fx.first, fx.distinct) > 1e-3);
  }
  SUBCASE("leaves of a perfect binary tree") {
    // Nodes 0..14 in heap order; leaves are 7..14. Features encode depth.
    std::vector<Edge> edges;
    for (NodeId v = 1; v < 15; ++v) edges.emplace_back((v - 1) / 2, v);
    std::vector<float> feats(15);
    for (NodeId v = 0; v < 15; ++v) feats[v] = static_cast<float>(std::floor(std::log2(v + 1.0)));
    auto g = Graph::FromEdges(15, 1, feats, edges);
    for (int depth : {1, 2, 3}) {
      auto t = WlEmbed(g, depth);
      for (NodeId leaf = 8; leaf < 15; ++leaf) CHECK(TreeDistance(t, 7, leaf) <= 1e-9);
    }
  }
}

TEST_CASE("embeddings are equivariant under node relabeling") {
  SyntheticParams params;
  params.kind = GraphKind::kBarabasiAlbert;
  params.num_nodes = 80;
  params.m = 3;
  params.seed = 21;
  auto g = GenerateSynthetic(params);
  auto base = WlEmbed(g, 2);
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    auto perm = gdistill::testing::RandomPermutation(rng, g.num_nodes());
    auto pg = gdistill::testing::Relabel(g, perm);
    auto pt = WlEmbed(pg, 2);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      for (std::size_t j = 0; j < g.feature_dim(); ++j) {
        CHECK(std::fabs(pt.row(perm[v])[j] - base.row(v)[j]) <= 1e-9);
      }
    }
  }
}

TEST_CASE("each coordinate stays within the range over the L-hop ball") {
  SyntheticParams params;
  params.num_nodes = 120;
  params.avg_degree = 3.0;
  params.seed = 8;
  auto g = GenerateSynthetic(params);
  for (int depth : {1, 2, 3}) {
    auto t = WlEmbed(g, depth);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      auto ball = LHopNeighborhood(g, v, depth);
      for (std::size_t j = 0; j < g.feature_dim(); ++j) {
        double lo = 1e300, hi = -1e300;
        for (NodeId u : ball) {
          lo = std::min(lo, double{g.features(u)[j]});
          hi = std::max(hi, double{g.features(u)[j]});
        }
        CHECK(t.row(v)[j] >= lo - 1e-12);
        CHECK(t.row(v)[j] <= hi + 1e-12);
      }
    }
  }
}

TEST_CASE("tree distance") {
  WlEmbeddingTable t(2, 2, 0, {0.0, 0.0, 3.0, 4.0});
  CHECK(TreeDistance(t, 0, 1) == 5.0);
  CHECK(TreeDistance(t, 1, 1) == 0.0);

  SUBCASE("metric axioms on random triples") {
    SyntheticParams params;
    params.num_nodes = 60;
    params.seed = 2;
    auto g = GenerateSynthetic(params);
    auto e = WlEmbed(g, 2);
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
      auto a = static_cast<NodeId>(rng.UniformInt(60));
      auto b = static_cast<NodeId>(rng.UniformInt(60));
      auto c = static_cast<NodeId>(rng.UniformInt(60));
      CHECK(TreeDistance(e, a, b) >= 0.0);
      CHECK(TreeDistance(e, a, b) == TreeDistance(e, b, a));
      CHECK(TreeDistance(e, a, c) <= TreeDistance(e, a, b) + TreeDistance(e, b, c) + 1e-12);
    }
  }
}

TEST_CASE("parallel and serial embeddings agree exactly") {
  SyntheticParams params;
  params.num_nodes = 2000;
  params.avg_degree = 6.0;
  params.seed = 13;
  auto g = GenerateSynthetic(params);
  Executor four(4);
  CHECK(WlEmbed(g, 3, four) == WlEmbed(g, 3));
}

TEST_CASE("row normalization") {
  auto g = Graph::FromEdges(2, 2, {3.0f, 4.0f, 0.0f, 0.0f}, std::vector<Edge>{});
  auto t = WlEmbed(g, WlOptions{0, true});
  CHECK(t.row(0)[0] == doctest::Approx(0.6));
  CHECK(t.row(1)[1] == 0.0);
  CHECK_THROWS(WlEmbed(g, -1));
}
