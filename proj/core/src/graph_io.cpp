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

#include "gdistill/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <string_view>

#include "gdistill/error.hpp"

namespace gdistill {

namespace {

namespace fs = std::filesystem;

// Splits on a single delimiter; empty fields are kept.
std::vector<std::string_view> Split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
std::optional<T> ParseNumber(std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

// Line reader that tracks 1-based line numbers and skips blanks/comments.
class LineReader {
 public:
  explicit LineReader(const fs::path& path) : path_(path), in_(path) {
    if (!in_) throw Error("cannot open " + path.string());
  }

  bool Next(std::string_view& line) {
    while (std::getline(in_, buffer_)) {
      ++line_no_;
      if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
      if (buffer_.empty() || buffer_.front() == '#') continue;
      line = buffer_;
      return true;
    }
    return false;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(path_.string(), line_no_, what);
  }

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::ifstream in_;
  std::string buffer_;
  std::size_t line_no_ = 0;
};

std::ofstream OpenForWrite(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

void CloseChecked(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw Error("write failed for " + path.string());
}

void AppendReal(std::string& out, double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 9);
  out.append(buf, ptr);
}

void AppendInt(std::string& out, std::int64_t x) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  out.append(buf, ptr);
}

void WriteNodes(const Graph& g, const fs::path& path) {
  std::string text;
  const bool has_mask = g.train_mask().has_value();
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    AppendInt(text, v);
    text += '\t';
    AppendInt(text, g.labels() ? (*g.labels())[v] : kNoLabel);
    text += '\t';
    auto row = g.features(v);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) text += ',';
      AppendReal(text, row[j]);
    }
    if (has_mask) {
      text += '\t';
      text += (*g.train_mask())[v] ? '1' : '0';
    }
    text += '\n';
  }
  auto out = OpenForWrite(path);
  out << text;
  CloseChecked(out, path);
}

void WriteEdges(const Graph& g, const fs::path& path) {
  std::string text;
  for (const auto& [u, v] : g.UndirectedEdges()) {
    AppendInt(text, u);
    text += '\t';
    AppendInt(text, v);
    text += '\n';
  }
  auto out = OpenForWrite(path);
  out << text;
  CloseChecked(out, path);
}

}  // namespace

std::string FormatReal(double x) {
  std::string s;
  AppendReal(s, x);
  return s;
}

Graph LoadGraph(const fs::path& nodes_path, const fs::path& edges_path) {
  struct Row {
    std::int32_t label;
    std::vector<float> features;
    std::optional<std::uint8_t> train;
    std::size_t line;
  };
  std::vector<std::optional<Row>> rows;
  std::size_t feature_dim = 0;
  std::optional<bool> has_train_column;
  std::size_t line_index = 0;

  LineReader nodes(nodes_path);
  std::string_view line;
  while (nodes.Next(line)) {
    ++line_index;
    auto fields = Split(line, '\t');
    if (fields.size() != 3 && fields.size() != 4) {
      nodes.Fail("expected 3 or 4 tab-separated fields, found " + std::to_string(fields.size()));
    }
    auto id = ParseNumber<std::uint64_t>(fields[0]);
    if (!id) nodes.Fail("invalid node id '" + std::string(fields[0]) + "'");
    auto label = ParseNumber<std::int32_t>(fields[1]);
    if (!label || *label < kNoLabel) nodes.Fail("invalid label '" + std::string(fields[1]) + "'");

    Row row{*label, {}, std::nullopt, line_index};
    for (auto token : Split(fields[2], ',')) {
      auto x = ParseNumber<float>(token);
      if (!x || !std::isfinite(*x)) nodes.Fail("invalid feature value '" + std::string(token) + "'");
      row.features.push_back(*x);
    }
    if (feature_dim == 0) {
      feature_dim = row.features.size();
    } else if (row.features.size() != feature_dim) {
      nodes.Fail("feature dimension " + std::to_string(row.features.size()) +
                 " differs from the first node's " + std::to_string(feature_dim));
    }
    const bool with_train = fields.size() == 4;
    if (!has_train_column) has_train_column = with_train;
    if (*has_train_column != with_train) nodes.Fail("train column present on some lines only");
    if (with_train) {
      if (fields[3] != "0" && fields[3] != "1") nodes.Fail("train flag must be 0 or 1");
      row.train = fields[3] == "1" ? 1 : 0;
    }

    if (*id >= std::numeric_limits<NodeId>::max()) nodes.Fail("node id too large");
    if (*id >= rows.size()) rows.resize(*id + 1);
    if (rows[*id]) nodes.Fail("duplicate node id " + std::to_string(*id));
    rows[*id] = std::move(row);
  }
  if (rows.empty()) throw ParseError(nodes_path.string(), 0, "no nodes");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i]) {
      throw ParseError(nodes_path.string(), 0,
                       "node ids are not contiguous: id " + std::to_string(i) + " is missing");
    }
  }

  const std::size_t n = rows.size();
  std::vector<float> features;
  features.reserve(n * feature_dim);
  std::vector<std::int32_t> labels(n);
  std::optional<std::vector<std::uint8_t>> mask;
  if (*has_train_column) mask.emplace(n);
  for (std::size_t i = 0; i < n; ++i) {
    features.insert(features.end(), rows[i]->features.begin(), rows[i]->features.end());
    labels[i] = rows[i]->label;
    if (mask) (*mask)[i] = *rows[i]->train;
  }
  rows.clear();

  std::vector<Edge> edges;
  LineReader edge_reader(edges_path);
  while (edge_reader.Next(line)) {
    auto fields = Split(line, '\t');
    if (fields.size() != 2) edge_reader.Fail("expected 2 tab-separated fields");
    auto u = ParseNumber<std::uint64_t>(fields[0]);
    auto v = ParseNumber<std::uint64_t>(fields[1]);
    if (!u || !v) edge_reader.Fail("invalid node id");
    if (*u >= n || *v >= n) {
      edge_reader.Fail("edge references unknown node " + std::to_string(*u >= n ? *u : *v));
    }
    edges.emplace_back(static_cast<NodeId>(*u), static_cast<NodeId>(*v));
  }

  try {
    return Graph::FromEdges(n, feature_dim, std::move(features), edges, std::move(labels),
                            std::move(mask));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(edges_path.string(), 0, e.what());
  }
}

void WriteGraph(const Graph& g, const fs::path& nodes_path, const fs::path& edges_path) {
  WriteNodes(g, nodes_path);
  WriteEdges(g, edges_path);
}

void WriteDistilled(const DistilledGraph& d, const fs::path& dir) {
  fs::create_directories(dir);
  WriteGraph(d.graph, dir / "nodes.tsv", dir / "edges.tsv");
  std::string text;
  for (std::size_t i = 0; i < d.origin_ids.size(); ++i) {
    AppendInt(text, static_cast<std::int64_t>(i));
    text += '\t';
    AppendInt(text, d.origin_ids[i]);
    text += '\t';
    text += d.root_flags[i] ? '1' : '0';
    text += '\n';
  }
  const auto path = dir / "provenance.tsv";
  auto out = OpenForWrite(path);
  out << text;
  CloseChecked(out, path);
}

DistilledGraph LoadDistilled(const fs::path& dir) {
  DistilledGraph d;
  d.graph = LoadGraph(dir / "nodes.tsv", dir / "edges.tsv");
  d.origin_ids.assign(d.graph.num_nodes(), 0);
  d.root_flags.assign(d.graph.num_nodes(), 0);
  std::vector<std::uint8_t> seen(d.graph.num_nodes(), 0);

  LineReader reader(dir / "provenance.tsv");
  std::string_view line;
  while (reader.Next(line)) {
    auto fields = Split(line, '\t');
    if (fields.size() != 3) reader.Fail("expected 3 tab-separated fields");
    auto id = ParseNumber<std::uint64_t>(fields[0]);
    auto origin = ParseNumber<std::uint64_t>(fields[1]);
    if (!id || !origin || *origin >= std::numeric_limits<NodeId>::max()) reader.Fail("invalid id");
    if (*id >= d.graph.num_nodes()) reader.Fail("distilled id out of range");
    if (seen[*id]) reader.Fail("duplicate distilled id");
    if (fields[2] != "0" && fields[2] != "1") reader.Fail("root flag must be 0 or 1");
    seen[*id] = 1;
    d.origin_ids[*id] = static_cast<NodeId>(*origin);
    d.root_flags[*id] = fields[2] == "1" ? 1 : 0;
  }
  for (auto s : seen) {
    if (!s) throw ParseError((dir / "provenance.tsv").string(), 0, "missing provenance rows");
  }
  return d;
}

void WriteMatrixTsv(const fs::path& path, std::span<const double> values, std::size_t cols) {
  std::string text;
  const std::size_t rows = cols == 0 ? 0 : values.size() / cols;
  for (std::size_t r = 0; r < rows; ++r) {
    AppendInt(text, static_cast<std::int64_t>(r));
    text += '\t';
    for (std::size_t c = 0; c < cols; ++c) {
      if (c > 0) text += ',';
      AppendReal(text, values[r * cols + c]);
    }
    text += '\n';
  }
  auto out = OpenForWrite(path);
  out << text;
  CloseChecked(out, path);
}

}  // namespace gdistill
