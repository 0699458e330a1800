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
#include "manifest.hpp"

#include <array>
#include <cstdio>
#include <memory>

#include <openssl/evp.h>

#include "gbs/error.hpp"
#include "gbs/io.hpp"
#include "json.hpp"

namespace gbs::cli {

std::string sha256_file(const std::filesystem::path &path) {
    const std::string bytes = read_file(path);
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    require(ctx && EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) == 1 &&
                EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) == 1 &&
                EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) == 1,
            ErrorKind::Io, "SHA-256 failed for '" + path.string() + "'");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["inputs"] = nlohmann::ordered_json::object();
    for (const auto &[flag, path] : inputs) {
        j["inputs"][flag] = {{"path", path.string()}, {"sha256", sha256_file(path)}};
    }
    j["seed"] = seed;
    j["config"] = config;
    j["versions"] = {{"artifact", kArtifactVersion}, {"format", kFormatVersion}};
    return j.dump(2) + "\n";
}

void write_manifest(const RunManifest &manifest, const std::filesystem::path &output) {
    std::filesystem::path path = output;
    path += ".manifest.json";
    write_file_atomic(path, manifest.to_json());
}

}  // namespace gbs::cli
