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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqpnet/experiments.hpp"
#include "sqpnet/metrics.hpp"
#include "sqpnet/networks.hpp"
#include "sqpnet/training.hpp"

namespace sqpnet {

// Configuration/validation failure; the CLI maps it to exit code 1. Messages
// carry the offending JSON path (e.g. ".learning_rate").
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strict reader over a JSON object: typed lookups with defaults and bounds,
// and an unknown-key check once all fields have been consumed.
class StrictJson {
public:
    StrictJson(const nlohmann::json& j, std::string path);

    bool has(const std::string& key) const;
    double number(const std::string& key, double def);
    double positive_number(const std::string& key, double def);
    int integer(const std::string& key, int def);
    int positive_integer(const std::string& key, int def);
    std::uint64_t uint64(const std::string& key, std::uint64_t def);
    std::string str(const std::string& key, const std::string& def);
    bool boolean(const std::string& key, bool def);
    std::vector<int> int_array(const std::string& key, std::vector<int> def);
    std::vector<double> number_array(const std::string& key, std::vector<double> def);
    std::vector<std::string> string_array(const std::string& key,
                                          std::vector<std::string> def);
    std::optional<nlohmann::json> raw(const std::string& key);  // consumes key

    // Throws ConfigError listing any key never consumed.
    void reject_unknown() const;

    [[noreturn]] void fail(const std::string& key, const std::string& why) const;

private:
    const nlohmann::json& j_;
    std::string path_;
    std::set<std::string> consumed_;
};

// NetworkSpec <-> JSON. Accepts e.g.
//   {"family":"SQP","layer_widths":[4,4,4,3]}
// with defaults materialized for everything else.
NetworkSpec network_spec_from_json(const nlohmann::json& j, const std::string& path = "");
nlohmann::json network_spec_to_json(const NetworkSpec& spec);

std::string family_name(Family f);
std::string feature_map_name(FeatureMap m);

// --- per-subcommand configs; each from_json materializes all defaults and
//     each echo() serializes the fully resolved configuration ---

struct SweepPoint {
    int n_in = 0;
    int n_out = 0;
};

struct EffDimRunConfig {
    std::uint64_t seed = 12345;
    double n_observations = 1e4;
    int n_theta_samples = 100;
    int n_x_samples = 100;
    FisherKind fisher_kind = FisherKind::ML;
    FeatureMap feature_map = FeatureMap::EASY;
    std::vector<SweepPoint> sweep = {{2, 2}, {3, 3}, {4, 4}};

    static EffDimRunConfig from_json(const nlohmann::json& j);
    nlohmann::json echo() const;
    // Topology triple (SQP, HANNOVER, HEA) with comparable parameter counts
    // for one sweep point; see README for the table.
    static std::vector<NetworkSpec> specs_for_point(const SweepPoint& p,
                                                    FeatureMap map);
};

struct CapacityRunConfig {
    std::uint64_t seed = 12345;
    int n_samples = 30;
    int n_features = 4;
    int n_classes = 2;
    int n_seeds = 8;
    int n_epochs = 200;
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.99;

    static CapacityRunConfig from_json(const nlohmann::json& j);
    nlohmann::json echo() const;
    std::vector<NetworkSpec> networks(FeatureMap map) const;
};

struct ClassifyRunConfig {
    std::uint64_t seed = 12345;
    std::string dataset = "data/iris.csv";
    int n_train = 30;
    int n_restarts = 16;
    int n_epochs = 150;
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.99;

    static ClassifyRunConfig from_json(const nlohmann::json& j);
    nlohmann::json echo() const;
    std::vector<NetworkSpec> networks() const;
};

struct UnitaryLearnRunConfig {
    std::uint64_t seed = 12345;
    std::vector<std::string> targets = {"ising", "haar"};
    int n_train_pairs = 50;
    int n_val_pairs = 10;
    int n_restarts = 8;
    int n_epochs = 300;
    double eta_hea = 0.1;
    double eta_hannover = 0.1;
    double eta_sqp_ising = 5.0;
    double eta_sqp_haar = 2.0;

    static UnitaryLearnRunConfig from_json(const nlohmann::json& j);
    nlohmann::json echo() const;
    std::vector<NetworkSpec> networks() const;
};

struct AdiabaticRunConfig {
    std::uint64_t seed = 12345;
    std::vector<int> n_in_values = {1, 2};
    int n_draws = 5;
    std::vector<double> t_ladder = {10.0, 30.0, 100.0};
    double param_range = 1.0;  // weights/biases drawn from U[-range, range]
    std::string ramp_shape = "smoothstep";

    static AdiabaticRunConfig from_json(const nlohmann::json& j);
    nlohmann::json echo() const;
    RampShape shape() const;
};

}  // namespace sqpnet
