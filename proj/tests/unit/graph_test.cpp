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

#include <filesystem>
#include <fstream>
#include <numeric>

#include "gdistill/error.hpp"
#include "gdistill/graph.hpp"
#include "gdistill/graph_io.hpp"
#include "gdistill/random.hpp"
#include "gdistill/synthetic.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace gdistill;
using gdistill::testing::MakeGraph;

namespace {

fs::path ScratchDir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("gdistill_graph_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("load_graph: two nodes, one edge, stored in both directions") {
  auto dir = ScratchDir("two");
  WriteText(dir / "nodes.tsv", "0\t-1\t1.5,2\n1\t-1\t1.5,2\n");
  WriteText(dir / "edges.tsv", "0\t1\n");
  auto g = LoadGraph(dir / "nodes.tsv", dir / "edges.tsv");
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 2);
  CHECK(g.feature_dim() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_labels());
}

TEST_CASE("load_graph: empty edge file gives empty neighbor slices") {
  auto dir = ScratchDir("edgeless");
  WriteText(dir / "nodes.tsv", "0\t0\t1\n1\t1\t2\n2\t0\t3\n");
  WriteText(dir / "edges.tsv", "");
  auto g = LoadGraph(dir / "nodes.tsv", dir / "edges.tsv");
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 0);
  for (NodeId v = 0; v < 3; ++v) CHECK(g.neighbors(v).empty());
  REQUIRE(g.labels());
  CHECK((*g.labels())[1] == 1);
}

TEST_CASE("load_graph: errors name the offending line") {
  auto dir = ScratchDir("errors");
  WriteText(dir / "edges.tsv", "");

  SUBCASE("feature dimension mismatch") {
    WriteText(dir / "nodes.tsv", "0\t-1\t1,2,3\n1\t-1\t1,2,3,4\n");
    try {
      LoadGraph(dir / "nodes.tsv", dir / "edges.tsv");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("malformed line") {
    WriteText(dir / "nodes.tsv", "0\t-1\t1\n1 -1 2\n");
    try {
      LoadGraph(dir / "nodes.tsv", dir / "edges.tsv");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("non-contiguous ids") {
    WriteText(dir / "nodes.tsv", "0\t-1\t1\n2\t-1\t2\n");
    CHECK_THROWS_AS(LoadGraph(dir / "nodes.tsv", dir / "edges.tsv"), ParseError);
  }
  SUBCASE("edge to unknown node") {
    WriteText(dir / "nodes.tsv", "0\t-1\t1\n1\t-1\t2\n");
    WriteText(dir / "edges.tsv", "0\t1\n1\t7\n");
    try {
      LoadGraph(dir / "nodes.tsv", dir / "edges.tsv");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("duplicate edge in either orientation") {
    WriteText(dir / "nodes.tsv", "0\t-1\t1\n1\t-1\t2\n");
    WriteText(dir / "edges.tsv", "0\t1\n1\t0\n");
    CHECK_THROWS_AS(LoadGraph(dir / "nodes.tsv", dir / "edges.tsv"), ParseError);
  }
  SUBCASE("non-finite feature") {
    WriteText(dir / "nodes.tsv", "0\t-1\tnan\n");
    CHECK_THROWS_AS(LoadGraph(dir / "nodes.tsv", dir / "edges.tsv"), ParseError);
  }
}

TEST_CASE("load_graph: self-loop stored once") {
  auto dir = ScratchDir("selfloop");
  WriteText(dir / "nodes.tsv", "0\t-1\t1\n1\t-1\t2\n");
  WriteText(dir / "edges.tsv", "0\t0\n0\t1\n");
  auto g = LoadGraph(dir / "nodes.tsv", dir / "edges.tsv");
  CHECK(g.num_edges() == 3);
  CHECK(g.degree(0) == 2);
  CHECK(g.has_edge(0, 0));
}

TEST_CASE("write then load reproduces the graph bit-exactly") {
  Rng rng(11);
  for (auto kind : {GraphKind::kErdosRenyi, GraphKind::kPlantedClusters}) {
    SyntheticParams params;
    params.kind = kind;
    params.num_nodes = 200;
    params.feature_dim = 5;
    params.seed = rng.Next();
    params.avg_degree = 4.0;
    auto g = GenerateSynthetic(params);
    auto dir = ScratchDir("roundtrip");
    WriteGraph(g, dir / "nodes.tsv", dir / "edges.tsv");
    CHECK(LoadGraph(dir / "nodes.tsv", dir / "edges.tsv") == g);
  }
  // Awkward float values and a train mask column.
  std::vector<float> feats{0.1f, -3.4028235e38f, 1.17549435e-38f, 7.0f / 3.0f};
  auto g = Graph::FromEdges(4, 1, feats, std::vector<Edge>{{0, 1}, {2, 2}}, std::vector<std::int32_t>{0, -1, 2, 1},
                            std::vector<std::uint8_t>{1, 0, 1, 0});
  auto dir = ScratchDir("roundtrip_mask");
  WriteGraph(g, dir / "nodes.tsv", dir / "edges.tsv");
  CHECK(LoadGraph(dir / "nodes.tsv", dir / "edges.tsv") == g);
}

TEST_CASE("induced_subgraph examples") {
  SUBCASE("non-adjacent pair on a path") {
    auto g = MakeGraph(3, {{0, 1}, {1, 2}});
    std::vector<NodeId> ids{0, 2};
    auto d = InducedSubgraph(g, ids);
    CHECK(d.graph.num_nodes() == 2);
    CHECK(d.graph.num_edges() == 0);
    CHECK(d.origin_ids == std::vector<NodeId>{0, 2});
  }
  SUBCASE("full set is identity") {
    auto g = MakeGraph(3, {{0, 1}, {1, 2}, {0, 2}});
    std::vector<NodeId> ids{2, 0, 1};
    auto d = InducedSubgraph(g, ids);
    CHECK(d.graph == g);
    CHECK(d.origin_ids == std::vector<NodeId>{0, 1, 2});
  }
  SUBCASE("star keeps only edges with both endpoints selected") {
    std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
    auto g = MakeGraph(5, star);
    std::vector<NodeId> ids{0, 1, 2};
    auto d = InducedSubgraph(g, ids);
    // Oracle: enumerate source edges and keep the ones inside the set.
    std::vector<Edge> expected;
    for (auto [u, v] : star) {
      if (u <= 2 && v <= 2) expected.emplace_back(u, v);
    }
    CHECK(d.graph.num_nodes() == 3);
    CHECK(d.graph.UndirectedEdges() == expected);
  }
  SUBCASE("empty set rejected") {
    auto g = MakeGraph(2, {{0, 1}});
    CHECK_THROWS_AS(InducedSubgraph(g, std::vector<NodeId>{}), Error);
  }
}

TEST_CASE("induced_subgraph: retained edges exist in the source") {
  SyntheticParams params;
  params.num_nodes = 300;
  params.avg_degree = 6.0;
  params.seed = 5;
  auto g = GenerateSynthetic(params);
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto ids = rng.SampleWithoutReplacement(300, 1 + static_cast<std::uint32_t>(rng.UniformInt(299)));
    std::vector<NodeId> nodes(ids.begin(), ids.end());
    auto d = InducedSubgraph(g, nodes);
    for (auto [u, v] : d.graph.UndirectedEdges()) CHECK(g.has_edge(d.origin_ids[u], d.origin_ids[v]));
    // and nothing between selected nodes was dropped
    std::size_t expected_slots = 0;
    for (NodeId a : d.origin_ids) {
      for (NodeId b : d.origin_ids) expected_slots += g.has_edge(a, b) ? 1 : 0;
    }
    CHECK(d.graph.num_edges() == expected_slots);
    CHECK(ByteSize(d) < ByteSize(g));
  }
}

TEST_CASE("l_hop_neighborhood") {
  auto path = MakeGraph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(LHopNeighborhood(path, 2, 0) == std::vector<NodeId>{2});
  CHECK(LHopNeighborhood(path, 0, 2) == std::vector<NodeId>{0, 1, 2});
  CHECK(LHopNeighborhood(path, 0, 3) == std::vector<NodeId>{0, 1, 2, 3});
  CHECK_THROWS_AS(LHopNeighborhood(path, 9, 1), Error);

  SUBCASE("monotone in depth and saturates at the component") {
    SyntheticParams params;
    params.num_nodes = 150;
    params.avg_degree = 2.0;
    params.seed = 3;
    auto g = GenerateSynthetic(params);
    for (NodeId root : {0u, 17u, 149u}) {
      std::vector<NodeId> prev;
      for (int depth = 0; depth <= 150; ++depth) {
        auto ball = LHopNeighborhood(g, root, depth);
        CHECK(std::includes(ball.begin(), ball.end(), prev.begin(), prev.end()));
        prev = ball;
      }
      // Component by exhaustive closure.
      std::vector<std::uint8_t> seen(g.num_nodes(), 0);
      seen[root] = 1;
      bool changed = true;
      while (changed) {
        changed = false;
        for (auto [u, v] : g.UndirectedEdges()) {
          if (seen[u] != seen[v]) {
            seen[u] = seen[v] = 1;
            changed = true;
          }
        }
      }
      std::vector<NodeId> component;
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (seen[v]) component.push_back(v);
      }
      CHECK(prev == component);
    }
  }
}

TEST_CASE("byte_size formula") {
  auto single = Graph::FromEdges(1, 1, {0.0f}, std::vector<Edge>{});
  CHECK(ByteSize(single) == 12);
  auto pair = Graph::FromEdges(2, 2, {1, 2, 3, 4}, std::vector<Edge>{{0, 1}}, std::vector<std::int32_t>{0, 1});
  CHECK(ByteSize(pair) == 56);
}

TEST_CASE("graph construction rejects invariant violations") {
  CHECK_THROWS_AS(Graph::FromEdges(2, 1, {1.0f}, std::vector<Edge>{}), Error);
  CHECK_THROWS_AS(Graph::FromEdges(2, 1, {1.0f, std::nanf("")}, std::vector<Edge>{}), Error);
  CHECK_THROWS_AS(Graph::FromCsr(1, {0, 1, 1}, {1}, {1.0f, 2.0f}), Error);  // missing reverse
  CHECK_THROWS_AS(Graph::FromCsr(1, {0, 2, 2}, {0, 0}, {1.0f, 2.0f}), Error);  // duplicate slot
}

TEST_CASE("distilled output round trip with provenance") {
  auto g = MakeGraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  std::vector<NodeId> ids{1, 2, 4};
  std::vector<NodeId> roots{2};
  auto d = InducedSubgraph(g, ids, roots);
  auto dir = ScratchDir("distilled");
  WriteDistilled(d, dir);
  CHECK(LoadDistilled(dir) == d);
  CHECK(gdistill::testing::ReadFile(dir / "provenance.tsv") == "0\t1\t0\n1\t2\t1\n2\t4\t0\n");
}
