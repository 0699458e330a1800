// Copyright 2026 The gbsample Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// File formats.
//
//   graph        {"vertices": n, "edges": [[u, v], [u, v, w], ...]}
//                (the weight is omitted when it is 1)
//   matrix       CSV, one row per line; or JSON [[a00, a01, ...], ...]
//   table        {"kind": "subset" | "occupancy" | "matching",
//                 "outcomes": [{"key": [...], "p": x}, ...],
//                 "normalizer": w}
//   samples      JSONL, one outcome key (a JSON integer array) per line
//   reports      JSONL, one verification report object per line

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gbs/distribution.hpp"
#include "gbs/graph.hpp"
#include "gbs/verify.hpp"

namespace gbs {

Graph parse_graph_json(std::string_view text);
std::string graph_to_json(const Graph &g);

Matrix<double> parse_matrix_csv(std::string_view text);
Matrix<double> parse_matrix_json(std::string_view text);
std::string matrix_to_csv(const Matrix<double> &a);

DistributionTable parse_table_json(std::string_view text);
std::string table_to_json(const DistributionTable &t);

std::string sample_line(const OutcomeKey &key);
std::vector<OutcomeKey> parse_samples_jsonl(std::string_view text);

std::string report_line(const VerificationReport &r);

std::string read_file(const std::filesystem::path &path);

/// Graph from a JSON file; matrix from .json or anything else as CSV.
Graph read_graph_file(const std::filesystem::path &path);
Matrix<double> read_matrix_file(const std::filesystem::path &path);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never see a partial file.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

}  // namespace gbs
