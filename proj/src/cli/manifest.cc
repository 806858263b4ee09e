// Copyright 2026 The bosim Authors
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

#include "bosim/manifest.h"

#include <openssl/evp.h>

#include <fmt/format.h>

#include "bosim/errors.h"

namespace bosim::cli {

using nlohmann::json;

namespace {

json digests_to_json(const std::vector<FileDigest> &files) {
    json out = json::array();
    for (const auto &f : files) {
        out.push_back({{"path", f.path}, {"sha256", f.sha256}});
    }
    return out;
}

std::vector<FileDigest> digests_from_json(const json &j, const char *what) {
    if (!j.is_array()) {
        throw SchemaError(std::string("manifest.") + what + ": expected an array");
    }
    std::vector<FileDigest> files;
    for (const auto &entry : j) {
        if (!entry.is_object() || !entry.contains("path") || !entry.contains("sha256") || !entry["path"].is_string() ||
            !entry["sha256"].is_string()) {
            throw SchemaError(std::string("manifest.") + what + ": entries need string 'path' and 'sha256'");
        }
        files.push_back({entry["path"].get<std::string>(), entry["sha256"].get<std::string>()});
    }
    return files;
}

}  // namespace

json to_json(const RunManifest &manifest) {
    return json{
        {"tool", manifest.tool},
        {"version", manifest.version},
        {"command", manifest.command},
        {"args", manifest.args},
        {"seed", manifest.seed ? json(*manifest.seed) : json(nullptr)},
        {"inputs", digests_to_json(manifest.inputs)},
        {"outputs", digests_to_json(manifest.outputs)},
    };
}

RunManifest manifest_from_json(const json &j) {
    if (!j.is_object()) {
        throw SchemaError("manifest: expected an object");
    }
    for (const char *key : {"tool", "version", "command", "args", "inputs", "outputs"}) {
        if (!j.contains(key)) {
            throw SchemaError(std::string("manifest: missing field '") + key + "'");
        }
    }
    RunManifest m;
    try {
        m.tool = j["tool"].get<std::string>();
        m.version = j["version"].get<std::string>();
        m.command = j["command"].get<std::string>();
        m.args = j["args"].get<std::vector<std::string>>();
        if (j.contains("seed") && !j["seed"].is_null()) {
            m.seed = j["seed"].get<uint64_t>();
        }
    } catch (const json::exception &e) {
        throw SchemaError(std::string("manifest: ") + e.what());
    }
    m.inputs = digests_from_json(j["inputs"], "inputs");
    m.outputs = digests_from_json(j["outputs"], "outputs");
    return m;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    std::string hex;
    hex.reserve(2 * length);
    for (unsigned int i = 0; i < length; i++) {
        hex += fmt::format("{:02x}", digest[i]);
    }
    return hex;
}

}  // namespace bosim::cli
