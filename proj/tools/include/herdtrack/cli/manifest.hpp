/* Copyright 2026 The herdtrack Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace herdtrack::cli {

struct InputDigest {
  std::string role;
  std::string path;
  std::string sha256;  // lowercase hex
};

/// Reproducibility envelope embedded in every report. Carries no
/// timestamps, so re-running a manifest reproduces the report exactly.
struct RunManifest {
  std::string subcommand;
  nlohmann::json config = nlohmann::json::object();
  std::vector<InputDigest> inputs;
  std::string version;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const;
};

/// Lowercase hex SHA-256 of a file. Throws InputError if it cannot be read.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view data);

}  // namespace herdtrack::cli
