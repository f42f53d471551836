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

#include "sqpnet/io.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <stdexcept>

#include <openssl/evp.h>

namespace sqpnet {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), n_cols_(header.size()) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_row(header);
}

void CsvWriter::write_row(const std::vector<std::string>& cells) {
    if (cells.size() != n_cols_) {
        throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) +
                                    " cells, expected " + std::to_string(n_cols_));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    out_.flush();
}

std::string git_blob_sha1(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string() + " for hashing");
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    const std::string header = "blob " + std::to_string(data.size()) + '\0';

    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, header.data(), header.size()) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("SHA-1 computation failed");
    }
    EVP_MD_CTX_free(ctx);

    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

void RunContext::ensure_out_dir() const {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + out_dir.string() +
                                 ": " + ec.message());
    }
}

void RunContext::log(const std::string& msg) const {
    if (!quiet) std::cerr << msg << std::endl;
}

void write_manifest(const RunContext& ctx, const std::string& name,
                    const nlohmann::json& config_echo, const nlohmann::json& extra) {
    nlohmann::json m;
    m["subcommand"] = name;
    m["seed"] = ctx.seed;
    m["jobs"] = ctx.jobs;
    m["config"] = config_echo;
    const auto now = std::chrono::system_clock::now();
    m["unix_time"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();

    const auto path = ctx.out_dir / (name + "_manifest.json");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest " + path.string());
    out << m.dump(2) << '\n';
}

}  // namespace sqpnet
