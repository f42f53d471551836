// Copyright 2026 sqpnet contributors
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

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace sqpnet {

// Fixed '%.12g' float formatting so identical runs emit identical bytes.
std::string format_double(double v);

// CSV with an explicit header row; cells are written verbatim (values here
// never contain commas or quotes).
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void write_row(const std::vector<std::string>& cells);
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t n_cols_;
};

// Git-blob-style content hash ("blob <size>\0" + bytes, SHA-1) used to pin
// input files in run manifests.
std::string git_blob_sha1(const std::filesystem::path& file);

// Shared context for experiment drivers: where to write, master seed,
// parallelism, verbosity.
struct RunContext {
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool quiet = false;

    void ensure_out_dir() const;
    void log(const std::string& msg) const;  // rate-unlimited, stderr, skipped by --quiet
};

// Writes <out_dir>/<name>_manifest.json with the full materialized config,
// seed, input hashes, wall-clock and output listing, so every run is
// self-describing and reproducible.
void write_manifest(const RunContext& ctx, const std::string& name,
                    const nlohmann::json& config_echo,
                    const nlohmann::json& extra = nlohmann::json::object());

}  // namespace sqpnet
