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

#include "sqpnet/config.hpp"

#include <algorithm>

namespace sqpnet {

StrictJson::StrictJson(const nlohmann::json& j, std::string path)
    : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
        throw ConfigError(path_.empty() ? std::string("config must be a JSON object")
                                        : path_ + ": must be a JSON object");
    }
}

void StrictJson::fail(const std::string& key, const std::string& why) const {
    throw ConfigError(path_ + "." + key + ": " + why);
}

bool StrictJson::has(const std::string& key) const { return j_.contains(key); }

double StrictJson::number(const std::string& key, double def) {
    consumed_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_number()) fail(key, "expected a number");
    return j_[key].get<double>();
}

double StrictJson::positive_number(const std::string& key, double def) {
    const double v = number(key, def);
    if (!(v > 0.0)) fail(key, "must be > 0");
    return v;
}

int StrictJson::integer(const std::string& key, int def) {
    consumed_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_number_integer()) fail(key, "expected an integer");
    return j_[key].get<int>();
}

int StrictJson::positive_integer(const std::string& key, int def) {
    const int v = integer(key, def);
    if (v < 1) fail(key, "must be >= 1");
    return v;
}

std::uint64_t StrictJson::uint64(const std::string& key, std::uint64_t def) {
    consumed_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_number_unsigned() && !j_[key].is_number_integer()) {
        fail(key, "expected an unsigned integer");
    }
    if (j_[key].is_number_integer() && j_[key].get<long long>() < 0) {
        fail(key, "must be >= 0");
    }
    return j_[key].get<std::uint64_t>();
}

std::string StrictJson::str(const std::string& key, const std::string& def) {
    consumed_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_string()) fail(key, "expected a string");
    return j_[key].get<std::string>();
}

bool StrictJson::boolean(const std::string& key, bool def) {
    consumed_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_boolean()) fail(key, "expected a boolean");
    return j_[key].get<bool>();
}

std::vector<int> StrictJson::int_array(const std::string& key, std::vector<int> def) {
    consumed_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_array()) fail(key, "expected an array");
    std::vector<int> out;
    for (const auto& v : j_[key]) {
        if (!v.is_number_integer()) fail(key, "expected integer entries");
        out.push_back(v.get<int>());
    }
    return out;
}

std::vector<double> StrictJson::number_array(const std::string& key,
                                             std::vector<double> def) {
    consumed_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_array()) fail(key, "expected an array");
    std::vector<double> out;
    for (const auto& v : j_[key]) {
        if (!v.is_number()) fail(key, "expected numeric entries");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::string> StrictJson::string_array(const std::string& key,
                                                  std::vector<std::string> def) {
    consumed_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_array()) fail(key, "expected an array");
    std::vector<std::string> out;
    for (const auto& v : j_[key]) {
        if (!v.is_string()) fail(key, "expected string entries");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::optional<nlohmann::json> StrictJson::raw(const std::string& key) {
    consumed_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    return j_[key];
}

void StrictJson::reject_unknown() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
        if (!consumed_.count(it.key())) {
            throw ConfigError(path_ + "." + it.key() + ": unknown key");
        }
    }
}

std::string family_name(Family f) {
    switch (f) {
        case Family::SQP: return "SQP";
        case Family::HANNOVER: return "HANNOVER";
        case Family::HEA: return "HEA";
    }
    return "?";
}

std::string feature_map_name(FeatureMap m) {
    switch (m) {
        case FeatureMap::EASY: return "easy";
        case FeatureMap::HARD: return "hard";
        case FeatureMap::NONE: return "none";
    }
    return "?";
}

namespace {
Family parse_family(const std::string& s, StrictJson& r) {
    if (s == "SQP" || s == "sqp") return Family::SQP;
    if (s == "HANNOVER" || s == "hannover") return Family::HANNOVER;
    if (s == "HEA" || s == "hea") return Family::HEA;
    r.fail("family", "must be one of SQP, HANNOVER, HEA");
}

FeatureMap parse_feature_map(const std::string& s, StrictJson& r,
                             const std::string& key) {
    if (s == "easy" || s == "EASY") return FeatureMap::EASY;
    if (s == "hard" || s == "HARD") return FeatureMap::HARD;
    if (s == "none" || s == "NONE") return FeatureMap::NONE;
    r.fail(key, "must be one of easy, hard, none");
}
}  // namespace

NetworkSpec network_spec_from_json(const nlohmann::json& j, const std::string& path) {
    StrictJson r(j, path);
    NetworkSpec spec;
    spec.family = parse_family(r.str("family", "HEA"), r);
    spec.layer_widths = r.int_array("layer_widths", {2, 2});
    spec.feature_map = parse_feature_map(r.str("feature_map", "easy"), r, "feature_map");
    const std::string readout = r.str("readout", "distribution");
    if (readout == "distribution") {
        spec.readout = ReadoutMode::DISTRIBUTION;
    } else if (readout == "class-probe") {
        spec.readout = ReadoutMode::CLASS_PROBE;
    } else {
        r.fail("readout", "must be 'distribution' or 'class-probe'");
    }
    spec.readout_targets = r.int_array("readout_targets", {});
    const std::string sign = r.str("sign_variant", "plus");
    if (sign == "plus") {
        spec.sign_variant = SqpSign::PLUS;
    } else if (sign == "minus") {
        spec.sign_variant = SqpSign::MINUS;
    } else {
        r.fail("sign_variant", "must be 'plus' or 'minus'");
    }
    const std::string ent = r.str("entangler", "cnot");
    if (ent == "cnot") {
        spec.entangler = Entangler::CNOT;
    } else if (ent == "cz") {
        spec.entangler = Entangler::CZ;
    } else {
        r.fail("entangler", "must be 'cnot' or 'cz'");
    }
    r.reject_unknown();
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return spec;
}

nlohmann::json network_spec_to_json(const NetworkSpec& spec) {
    nlohmann::json j;
    j["family"] = family_name(spec.family);
    j["layer_widths"] = spec.layer_widths;
    j["feature_map"] = feature_map_name(spec.feature_map);
    j["readout"] =
        spec.readout == ReadoutMode::DISTRIBUTION ? "distribution" : "class-probe";
    j["readout_targets"] = spec.readout_targets;
    j["sign_variant"] = spec.sign_variant == SqpSign::PLUS ? "plus" : "minus";
    j["entangler"] = spec.entangler == Entangler::CNOT ? "cnot" : "cz";
    return j;
}

// --- effdim ---

EffDimRunConfig EffDimRunConfig::from_json(const nlohmann::json& j) {
    StrictJson r(j, "");
    EffDimRunConfig c;
    c.seed = r.uint64("seed", c.seed);
    c.n_observations = r.positive_number("n_observations", c.n_observations);
    c.n_theta_samples = r.positive_integer("n_theta_samples", c.n_theta_samples);
    c.n_x_samples = r.positive_integer("n_x_samples", c.n_x_samples);
    const std::string kind = r.str("fisher_kind", "ml");
    if (kind == "ml" || kind == "ML") {
        c.fisher_kind = FisherKind::ML;
    } else if (kind == "ls" || kind == "LS") {
        c.fisher_kind = FisherKind::LS;
    } else {
        r.fail("fisher_kind", "must be 'ml' or 'ls'");
    }
    c.feature_map = parse_feature_map(r.str("feature_map", "easy"), r, "feature_map");
    if (auto sweep = r.raw("sweep")) {
        if (!sweep->is_array()) r.fail("sweep", "expected an array of [n_in, n_out]");
        c.sweep.clear();
        for (const auto& p : *sweep) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
                !p[1].is_number_integer()) {
                r.fail("sweep", "entries must be [n_in, n_out] integer pairs");
            }
            c.sweep.push_back({p[0].get<int>(), p[1].get<int>()});
        }
        if (c.sweep.empty()) r.fail("sweep", "must not be empty");
    }
    r.reject_unknown();
    return c;
}

nlohmann::json EffDimRunConfig::echo() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["n_observations"] = n_observations;
    j["n_theta_samples"] = n_theta_samples;
    j["n_x_samples"] = n_x_samples;
    j["fisher_kind"] = fisher_kind == FisherKind::ML ? "ml" : "ls";
    j["feature_map"] = feature_map_name(feature_map);
    nlohmann::json sw = nlohmann::json::array();
    for (const auto& p : sweep) sw.push_back({p.n_in, p.n_out});
    j["sweep"] = sw;
    return j;
}

std::vector<NetworkSpec> EffDimRunConfig::specs_for_point(const SweepPoint& p,
                                                          FeatureMap map) {
    // Parameter-count-matched topology triple per [n_in, n_out]; hidden
    // structure chosen so the three families land within ~20% of each other.
    NetworkSpec sqp;
    sqp.family = Family::SQP;
    sqp.layer_widths = {p.n_in, p.n_in, p.n_out};
    sqp.feature_map = map;
    sqp.readout = ReadoutMode::DISTRIBUTION;

    NetworkSpec han;
    han.family = Family::HANNOVER;
    han.layer_widths = {p.n_in, p.n_out};
    han.feature_map = map;
    han.readout = ReadoutMode::DISTRIBUTION;

    NetworkSpec hea;
    hea.family = Family::HEA;
    const int np_sqp = param_count(sqp);
    const int layers = std::max(1, np_sqp / p.n_in);
    hea.layer_widths = {p.n_in, layers};
    hea.feature_map = map;
    hea.readout = ReadoutMode::DISTRIBUTION;
    return {sqp, han, hea};
}

// --- capacity ---

CapacityRunConfig CapacityRunConfig::from_json(const nlohmann::json& j) {
    StrictJson r(j, "");
    CapacityRunConfig c;
    c.seed = r.uint64("seed", c.seed);
    c.n_samples = r.positive_integer("n_samples", c.n_samples);
    c.n_features = r.positive_integer("n_features", c.n_features);
    c.n_classes = r.positive_integer("n_classes", c.n_classes);
    c.n_seeds = r.positive_integer("n_seeds", c.n_seeds);
    c.n_epochs = r.positive_integer("n_epochs", c.n_epochs);
    c.learning_rate = r.positive_number("learning_rate", c.learning_rate);
    c.beta1 = r.number("beta1", c.beta1);
    c.beta2 = r.number("beta2", c.beta2);
    r.reject_unknown();
    return c;
}

nlohmann::json CapacityRunConfig::echo() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["n_samples"] = n_samples;
    j["n_features"] = n_features;
    j["n_classes"] = n_classes;
    j["n_seeds"] = n_seeds;
    j["n_epochs"] = n_epochs;
    j["learning_rate"] = learning_rate;
    j["beta1"] = beta1;
    j["beta2"] = beta2;
    return j;
}

std::vector<NetworkSpec> CapacityRunConfig::networks(FeatureMap map) const {
    // Comparable parameter budgets: SQP 30, HANNOVER 36, HEA 32 at the
    // default 4 features / 2 classes.
    NetworkSpec sqp;
    sqp.family = Family::SQP;
    sqp.layer_widths = {n_features, n_features, n_classes};
    sqp.feature_map = map;
    sqp.readout = ReadoutMode::CLASS_PROBE;

    NetworkSpec han;
    han.family = Family::HANNOVER;
    han.layer_widths = {n_features, n_classes, n_classes};
    han.feature_map = map;
    han.readout = ReadoutMode::CLASS_PROBE;

    NetworkSpec hea;
    hea.family = Family::HEA;
    hea.layer_widths = {n_features, 8};
    hea.feature_map = map;
    hea.readout = ReadoutMode::CLASS_PROBE;
    std::vector<int> probes(n_classes);
    for (int i = 0; i < n_classes; ++i) probes[i] = i;
    hea.readout_targets = probes;
    return {sqp, han, hea};
}

// --- classify ---

ClassifyRunConfig ClassifyRunConfig::from_json(const nlohmann::json& j) {
    StrictJson r(j, "");
    ClassifyRunConfig c;
    c.seed = r.uint64("seed", c.seed);
    c.dataset = r.str("dataset", c.dataset);
    c.n_train = r.positive_integer("n_train", c.n_train);
    c.n_restarts = r.positive_integer("n_restarts", c.n_restarts);
    c.n_epochs = r.positive_integer("n_epochs", c.n_epochs);
    c.learning_rate = r.positive_number("learning_rate", c.learning_rate);
    c.beta1 = r.number("beta1", c.beta1);
    c.beta2 = r.number("beta2", c.beta2);
    r.reject_unknown();
    return c;
}

nlohmann::json ClassifyRunConfig::echo() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["dataset"] = dataset;
    j["n_train"] = n_train;
    j["n_restarts"] = n_restarts;
    j["n_epochs"] = n_epochs;
    j["learning_rate"] = learning_rate;
    j["beta1"] = beta1;
    j["beta2"] = beta2;
    return j;
}

std::vector<NetworkSpec> ClassifyRunConfig::networks() const {
    // 4 features, 3 classes: HEA with 32 hidden layers, HANNOVER with two
    // hidden layers of width 3, SQP with two hidden layers of width 4.
    NetworkSpec hea;
    hea.family = Family::HEA;
    hea.layer_widths = {4, 32};
    hea.feature_map = FeatureMap::EASY;
    hea.readout = ReadoutMode::CLASS_PROBE;
    hea.readout_targets = {0, 1, 2};

    NetworkSpec han;
    han.family = Family::HANNOVER;
    han.layer_widths = {4, 3, 3, 3};
    han.feature_map = FeatureMap::EASY;
    han.readout = ReadoutMode::CLASS_PROBE;

    NetworkSpec sqp;
    sqp.family = Family::SQP;
    sqp.layer_widths = {4, 4, 4, 3};
    sqp.feature_map = FeatureMap::EASY;
    sqp.readout = ReadoutMode::CLASS_PROBE;
    return {hea, han, sqp};
}

// --- unitary learning ---

UnitaryLearnRunConfig UnitaryLearnRunConfig::from_json(const nlohmann::json& j) {
    StrictJson r(j, "");
    UnitaryLearnRunConfig c;
    c.seed = r.uint64("seed", c.seed);
    c.targets = r.string_array("targets", c.targets);
    for (const auto& t : c.targets) {
        if (t != "ising" && t != "haar") r.fail("targets", "entries must be 'ising' or 'haar'");
    }
    c.n_train_pairs = r.positive_integer("n_train_pairs", c.n_train_pairs);
    c.n_val_pairs = r.positive_integer("n_val_pairs", c.n_val_pairs);
    c.n_restarts = r.positive_integer("n_restarts", c.n_restarts);
    c.n_epochs = r.positive_integer("n_epochs", c.n_epochs);
    c.eta_hea = r.positive_number("eta_hea", c.eta_hea);
    c.eta_hannover = r.positive_number("eta_hannover", c.eta_hannover);
    c.eta_sqp_ising = r.positive_number("eta_sqp_ising", c.eta_sqp_ising);
    c.eta_sqp_haar = r.positive_number("eta_sqp_haar", c.eta_sqp_haar);
    r.reject_unknown();
    return c;
}

nlohmann::json UnitaryLearnRunConfig::echo() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["targets"] = targets;
    j["n_train_pairs"] = n_train_pairs;
    j["n_val_pairs"] = n_val_pairs;
    j["n_restarts"] = n_restarts;
    j["n_epochs"] = n_epochs;
    j["eta_hea"] = eta_hea;
    j["eta_hannover"] = eta_hannover;
    j["eta_sqp_ising"] = eta_sqp_ising;
    j["eta_sqp_haar"] = eta_sqp_haar;
    return j;
}

std::vector<NetworkSpec> UnitaryLearnRunConfig::networks() const {
    // Two input and two output qubits: HEA with 32 layers, SQP with three
    // hidden layers of width 3, HANNOVER with two hidden layers of width 3.
    NetworkSpec hea;
    hea.family = Family::HEA;
    hea.layer_widths = {2, 32};
    hea.feature_map = FeatureMap::NONE;

    NetworkSpec sqp;
    sqp.family = Family::SQP;
    sqp.layer_widths = {2, 3, 3, 3, 2};
    sqp.feature_map = FeatureMap::NONE;

    NetworkSpec han;
    han.family = Family::HANNOVER;
    han.layer_widths = {2, 3, 3, 2};
    han.feature_map = FeatureMap::NONE;
    return {hea, sqp, han};
}

// --- adiabatic check ---

AdiabaticRunConfig AdiabaticRunConfig::from_json(const nlohmann::json& j) {
    StrictJson r(j, "");
    AdiabaticRunConfig c;
    c.seed = r.uint64("seed", c.seed);
    c.n_in_values = r.int_array("n_in_values", c.n_in_values);
    for (const int n : c.n_in_values) {
        if (n < 1) r.fail("n_in_values", "entries must be >= 1");
    }
    c.n_draws = r.positive_integer("n_draws", c.n_draws);
    c.t_ladder = r.number_array("t_ladder", c.t_ladder);
    if (c.t_ladder.empty()) r.fail("t_ladder", "must not be empty");
    for (std::size_t i = 0; i + 1 < c.t_ladder.size(); ++i) {
        if (!(c.t_ladder[i] < c.t_ladder[i + 1])) {
            r.fail("t_ladder", "must be strictly increasing");
        }
    }
    c.param_range = r.positive_number("param_range", c.param_range);
    c.ramp_shape = r.str("ramp_shape", c.ramp_shape);
    if (c.ramp_shape != "linear" && c.ramp_shape != "smoothstep") {
        r.fail("ramp_shape", "must be 'linear' or 'smoothstep'");
    }
    r.reject_unknown();
    return c;
}

nlohmann::json AdiabaticRunConfig::echo() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["n_in_values"] = n_in_values;
    j["n_draws"] = n_draws;
    j["t_ladder"] = t_ladder;
    j["param_range"] = param_range;
    j["ramp_shape"] = ramp_shape;
    return j;
}

RampShape AdiabaticRunConfig::shape() const {
    return ramp_shape == "linear" ? RampShape::LINEAR : RampShape::SMOOTHSTEP;
}

}  // namespace sqpnet
