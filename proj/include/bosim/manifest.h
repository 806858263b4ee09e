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

#ifndef BOSIM_MANIFEST_H
#define BOSIM_MANIFEST_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace bosim::cli {

struct FileDigest {
    std::string path;
    std::string sha256;
};

/// Everything needed to re-run a command and check its outputs.
struct RunManifest {
    std::string tool;
    std::string version;
    std::string command;
    /// Full argument list after the program name.
    std::vector<std::string> args;
    std::optional<uint64_t> seed;
    std::vector<FileDigest> inputs;
    std::vector<FileDigest> outputs;
};

nlohmann::json to_json(const RunManifest &manifest);
/// Throws SchemaError on malformed input.
RunManifest manifest_from_json(const nlohmann::json &j);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace bosim::cli

#endif
