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
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gbs::cli {

inline constexpr const char *kArtifactVersion = "0.3.0";
inline constexpr int kFormatVersion = 1;

/// Everything needed to rerun a command: re-running with an identical
/// manifest reproduces the outputs byte for byte.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::filesystem::path>> inputs;  // (flag, path)
    std::uint64_t seed = 0;
    std::map<std::string, std::string> config;

    std::string to_json() const;
};

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path &path);

/// Writes `manifest` to "<output>.manifest.json".
void write_manifest(const RunManifest &manifest, const std::filesystem::path &output);

}  // namespace gbs::cli
