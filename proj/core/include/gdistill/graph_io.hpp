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

// TSV interchange format.
//
//   nodes.tsv       id<TAB>label<TAB>f1,f2,...,fF[<TAB>train(0|1)]
//   edges.tsv       u<TAB>v             one undirected edge per line
//   provenance.tsv  distilled_id<TAB>origin_id<TAB>is_root(0|1)
//
// Label -1 means unlabeled. The train column is optional and must be present
// on every line or on none. Blank lines and lines starting with '#' are
// skipped. Reals are written with 9 significant digits, which round-trips
// 4-byte floats exactly.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gdistill/graph.hpp"

namespace gdistill {

// Throws ParseError (with the offending line) on malformed content and Error
// when a file cannot be opened.
Graph LoadGraph(const std::filesystem::path& nodes_path, const std::filesystem::path& edges_path);

void WriteGraph(const Graph& g, const std::filesystem::path& nodes_path,
                const std::filesystem::path& edges_path);

// Writes nodes.tsv, edges.tsv and provenance.tsv into dir (created if needed).
void WriteDistilled(const DistilledGraph& d, const std::filesystem::path& dir);

// Reads a distillation output directory back.
DistilledGraph LoadDistilled(const std::filesystem::path& dir);

// node_id<TAB>v1,...,vF for each row of a row-major matrix.
void WriteMatrixTsv(const std::filesystem::path& path, std::span<const double> values,
                    std::size_t cols);

// Shortest decimal text with 9 significant digits.
std::string FormatReal(double x);

}  // namespace gdistill
