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

//
//  gdistill: command-line front end.
//
//    gdistill distill --nodes N.tsv --edges E.tsv --budget-frac 0.01 --out DIR
//    gdistill gen --kind planted-clusters --n 1000 --seed 1 --out DIR
//    gdistill probe --sizes 1000,2000,4000
//
//  Exit codes: 0 success, 1 I/O or validation error, 2 infeasible budget.
//

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gdistill/error.hpp"
#include "gdistill/graph_io.hpp"
#include "gdistill/pipeline.hpp"
#include "gdistill/synthetic.hpp"

namespace fs = std::filesystem;
using namespace gdistill;

namespace {

constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct DistillArgs {
  std::string nodes;
  std::string edges;
  std::string out;
  std::optional<double> budget_frac;
  std::optional<std::uint64_t> budget_bytes;
  std::string report;
  std::string dump_embeddings;
  std::string dump_revknn;
  bool quiet = false;
};

struct GenArgs {
  std::string kind = "erdos-renyi";
  std::string out;
  SyntheticParams params;
  double avg_degree = -1.0;
};

struct ProbeArgs {
  std::vector<std::size_t> sizes{1000, 2000, 4000};
  std::string kind = "erdos-renyi";
  SyntheticParams params;
  double avg_degree = 8.0;
  std::size_t repeats = 1;
};

void AddSharedDistillFlags(CLI::App* cmd, DistillConfig& cfg) {
  cmd->add_option("--layers", cfg.depth, "WL depth / exemplar ball radius L")->check(CLI::NonNegativeNumber);
  cmd->add_option("--k", cfg.sample.k, "neighbors per reverse k-NN query");
  cmd->add_option("--theta", cfg.sample.theta, "sampling error bound");
  cmd->add_option("--delta", cfg.sample.delta, "sampling failure probability");
  cmd->add_option("--seed", cfg.sample.seed, "sampling seed");
  cmd->add_option("--beta", cfg.sparsify.ppr.beta, "PPR teleport probability");
  cmd->add_option("--ppr-tol", cfg.sparsify.ppr.tolerance, "PPR L1 convergence tolerance");
  cmd->add_option("--min-prune-frac", cfg.sparsify.min_prune_frac,
                  "stop pruning when fewer than this fraction of nodes fall below the knee");
  cmd->add_option("--max-sparsify-iters", cfg.sparsify.max_iters, "prune/refill iteration cap");
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  cmd->add_flag("--normalize-features", cfg.normalize_rows, "L2-normalize feature rows before embedding");
}

void WriteRevKnn(const fs::path& path, const RevKnnIndex& idx) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  for (NodeId v = 0; v < idx.num_nodes(); ++v) {
    out << v << '\t';
    auto list = idx.rev_list(v);
    for (std::size_t i = 0; i < list.size(); ++i) out << (i ? "," : "") << list[i];
    out << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

std::string StageTsv(const std::vector<StageTime>& stages) {
  std::ostringstream out;
  for (const auto& s : stages) out << s.stage << '\t' << FormatReal(s.seconds) << '\n';
  return out.str();
}

int RunDistill(const DistillArgs& args, DistillConfig cfg) {
  cfg.budget_bytes = args.budget_bytes;
  cfg.budget_frac = args.budget_frac;
  const Graph g = LoadGraph(args.nodes, args.edges);
  if (!args.quiet) {
    std::cerr << "loaded " << g.num_nodes() << " nodes, " << g.num_edges() << " edge slots, F="
              << g.feature_dim() << ", " << ByteSize(g) << " bytes\n";
  }

  DistillResult result;
  try {
    result = Distill(g, cfg);
  } catch (const InfeasibleBudget& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  }
  const RunReport& report = result.report;

  if (!args.quiet) {
    std::size_t step = 0;
    for (const auto& s : report.selection_trace) {
      std::cerr << "select step=" << step++ << " root=" << s.root << " gain=" << FormatReal(s.gain)
                << " bytes_used=" << s.bytes_used << '\n';
    }
    for (const auto& it : report.sparsify_log) {
      std::cerr << "sparsify iter=" << it.iteration << " nodes=" << it.nodes << " knee_index=" << it.knee_index
                << " knee_value=" << FormatReal(it.knee_value) << " pruned=" << it.pruned
                << " refilled=" << it.refilled << " bytes_used=" << it.bytes_used << '\n';
    }
    std::cerr << "distilled " << report.num_nodes << " nodes (" << report.num_roots << " roots), "
              << report.num_edges << " edge slots, " << report.bytes_used << " / " << report.budget_bytes
              << " budget bytes, coverage " << FormatReal(report.coverage) << " over z=" << report.sample_size
              << (report.whole_graph ? " (whole graph fits)" : "") << '\n';
  }

  WriteDistilled(result.graph, args.out);
  if (!args.dump_embeddings.empty()) {
    WriteMatrixTsv(args.dump_embeddings, result.embeddings.values(), result.embeddings.dim());
  }
  if (!args.dump_revknn.empty()) WriteRevKnn(args.dump_revknn, result.index);

  const std::string tsv = StageTsv(report.stages);
  if (args.report.empty()) {
    std::cout << tsv;
  } else {
    std::ofstream out(args.report);
    if (!out) throw Error("cannot open " + args.report + " for writing");
    out << tsv;
  }
  return 0;
}

int RunGen(GenArgs args) {
  args.params.kind = ParseGraphKind(args.kind);
  if (args.avg_degree >= 0.0) args.params.avg_degree = args.avg_degree;
  const Graph g = GenerateSynthetic(args.params);
  fs::create_directories(args.out);
  WriteGraph(g, fs::path(args.out) / "nodes.tsv", fs::path(args.out) / "edges.tsv");
  std::cerr << "wrote " << g.num_nodes() << " nodes, " << g.UndirectedEdges().size() << " edges to "
            << args.out << '\n';
  return 0;
}

int RunProbe(ProbeArgs args, DistillConfig cfg) {
  if (!cfg.budget_bytes && !cfg.budget_frac) cfg.budget_frac = 0.01;
  args.params.kind = ParseGraphKind(args.kind);
  args.params.avg_degree = args.avg_degree;
  const auto rows = ScalingProbe(args.sizes, args.params, cfg, args.repeats);

  std::cout << "n\tedges";
  for (const auto& s : rows.front().stages) std::cout << '\t' << s.stage;
  std::cout << '\n';
  for (const auto& row : rows) {
    std::cout << row.num_nodes << '\t' << row.num_edges;
    for (const auto& s : row.stages) std::cout << '\t' << FormatReal(s.seconds);
    std::cout << '\n';
  }
  std::vector<double> x;
  for (const auto& row : rows) x.push_back(static_cast<double>(row.num_nodes));
  for (std::size_t s = 0; s < rows.front().stages.size(); ++s) {
    std::vector<double> y;
    for (const auto& row : rows) y.push_back(row.stages[s].seconds);
    auto [slope, r2] = LinearFit(x, y);
    std::cerr << rows.front().stages[s].stage << ": slope=" << FormatReal(slope) << " s/node, R^2="
              << FormatReal(r2) << '\n';
  }
  const double ratio = rows.back().stages.back().seconds / rows.front().stages.back().seconds;
  std::cerr << "total time ratio n=" << rows.back().num_nodes << " vs n=" << rows.front().num_nodes << ": "
            << FormatReal(ratio) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Byte-budgeted graph distillation via computation-tree coverage"};
  app.require_subcommand(1);

  DistillConfig distill_cfg;
  DistillArgs distill_args;
  auto* distill = app.add_subcommand("distill", "distill a graph into a budgeted induced subgraph");
  distill->add_option("--nodes", distill_args.nodes, "nodes.tsv")->required()->check(CLI::ExistingFile);
  distill->add_option("--edges", distill_args.edges, "edges.tsv")->required()->check(CLI::ExistingFile);
  distill->add_option("--out", distill_args.out, "output directory")->required();
  auto* frac = distill->add_option("--budget-frac", distill_args.budget_frac,
                                   "budget as a fraction of the input byte size");
  auto* bytes = distill->add_option("--budget-bytes", distill_args.budget_bytes, "budget in bytes");
  frac->excludes(bytes);
  bytes->excludes(frac);
  distill->add_flag("--train-mask-only", distill_cfg.train_mask_only, "distill only train-flagged nodes");
  distill->add_option("--dump-embeddings", distill_args.dump_embeddings, "write WL embeddings TSV");
  distill->add_option("--dump-revknn", distill_args.dump_revknn, "write reverse k-NN lists TSV");
  distill->add_option("--report", distill_args.report, "write stage timings TSV here instead of stdout");
  distill->add_flag("--quiet", distill_args.quiet, "suppress the human-readable log");
  AddSharedDistillFlags(distill, distill_cfg);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a synthetic graph");
  gen->add_option("--kind", gen_args.kind, "erdos-renyi | barabasi-albert | planted-clusters");
  gen->add_option("--n", gen_args.params.num_nodes, "node count")->required();
  gen->add_option("--seed", gen_args.params.seed, "generator seed");
  gen->add_option("--out", gen_args.out, "output directory")->required();
  gen->add_option("--features", gen_args.params.feature_dim, "feature dimension");
  gen->add_option("--p", gen_args.params.p, "Erdos-Renyi edge probability");
  gen->add_option("--avg-degree", gen_args.avg_degree, "expected degree (overrides --p)");
  gen->add_option("--m", gen_args.params.m, "Barabasi-Albert edges per node");
  gen->add_option("--clusters", gen_args.params.clusters, "planted cluster count");
  gen->add_option("--p-in", gen_args.params.p_in, "intra-cluster edge probability");
  gen->add_option("--p-out", gen_args.params.p_out, "inter-cluster edge probability");
  gen->add_option("--separation", gen_args.params.separation, "cluster center norm");

  DistillConfig probe_cfg;
  ProbeArgs probe_args;
  auto* probe = app.add_subcommand("probe", "time distillation across graph sizes");
  probe->add_option("--sizes", probe_args.sizes, "increasing node counts")->delimiter(',');
  probe->add_option("--kind", probe_args.kind, "synthetic graph kind");
  probe->add_option("--avg-degree", probe_args.avg_degree, "fixed expected degree");
  probe->add_option("--features", probe_args.params.feature_dim, "feature dimension");
  probe->add_option("--graph-seed", probe_args.params.seed, "generator seed");
  probe->add_option("--repeats", probe_args.repeats, "runs per size; the fastest is kept");
  probe->add_option("--budget-frac", probe_cfg.budget_frac, "budget fraction (default 0.01)");
  AddSharedDistillFlags(probe, probe_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*distill) {
      if (!distill_args.budget_frac && !distill_args.budget_bytes) {
        std::cerr << "error: one of --budget-frac or --budget-bytes is required\n";
        return kExitError;
      }
      return RunDistill(distill_args, distill_cfg);
    }
    if (*gen) return RunGen(gen_args);
    if (*probe) return RunProbe(probe_args, probe_cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
