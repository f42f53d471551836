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
#include <functional>
#include <vector>

#include "sqpnet/networks.hpp"

namespace sqpnet {

enum class Optimizer { ADAM, SGD };

struct TrainConfig {
    double learning_rate = 0.01;  // Adam alpha, or eta for plain gradient steps
    double beta1 = 0.9;
    double beta2 = 0.99;
    double eps_adam = 1e-8;
    double fd_step = 1e-3;  // finite-difference step for gradients
    int n_epochs = 100;
    int n_restarts = 1;
    std::uint64_t seed = 0;
    Optimizer optimizer = Optimizer::ADAM;

    void validate() const;  // positive rates/steps, n_restarts >= 1
};

struct ClassicalDataset {
    std::vector<std::vector<double>> inputs;
    std::vector<std::vector<double>> labels;
    std::vector<int> train_idx;  // disjoint from val_idx
    std::vector<int> val_idx;

    void validate() const;
};

struct QuantumDataset {
    std::vector<std::pair<StateVector, StateVector>> pairs;  // (|x>, |y(x)>)
    std::vector<int> train_idx;
    std::vector<int> val_idx;
};

struct AdamState {
    std::vector<double> m;  // first moment
    std::vector<double> v;  // second moment
    long t = 0;

    static AdamState init(std::size_t n) { return {std::vector<double>(n, 0.0),
                                                   std::vector<double>(n, 0.0), 0}; }
};

// Central differences (f(theta + eps e_i) - f(theta - eps e_i)) / (2 eps).
// Throws std::runtime_error naming the coordinate if the objective returns a
// non-finite value.
std::vector<double> finite_diff_grad(
    const std::function<double(const ParamVector&)>& objective, const ParamVector& theta,
    double eps);

// One Adam update (descent direction) with bias correction; increments t and
// updates theta and state in place. Callers maximizing an objective pass the
// negated gradient.
void adam_step(AdamState& state, ParamVector& theta, const std::vector<double>& grad,
               const TrainConfig& config);

// Mean squared Euclidean distance between model outputs and target vectors
// over the given sample indices.
double ls_cost(const NetworkSpec& spec, const ParamVector& theta,
               const ClassicalDataset& data, const std::vector<int>& subset);

// Mean output-state fidelity <y(x)| rho_x(theta) |y(x)> over the given pairs.
double unitary_objective(const NetworkSpec& spec, const ParamVector& theta,
                         const QuantumDataset& data, const std::vector<int>& subset);

enum class ObjectiveKind { LS_COST, UNITARY_OBJECTIVE };

struct RestartCurve {
    std::vector<double> train_metric;  // entry 0 is the pre-training value
    std::vector<double> val_metric;
    bool diverged = false;
    ParamVector final_theta;
};

struct TrainResult {
    std::vector<RestartCurve> restarts;
    int best_restart = -1;  // by final training metric among non-diverged restarts

    // Pointwise mean over non-diverged restarts.
    std::vector<double> mean_curve(bool validation) const;
    // Pointwise best: min for costs, max for objectives.
    std::vector<double> best_curve(bool validation, bool maximize) const;
};

// Multi-restart full-batch training. Restart r draws its initial point from
// the spec bounds using stream (seed, "train-init", r) and runs n_epochs
// gradient steps (Adam or plain steps; the objective is maximized for
// UNITARY_OBJECTIVE, minimized for LS_COST). If an update makes the training
// metric non-finite the step is retried once at half rate, after which the
// restart is flagged as diverged and excluded from the mean. Restarts may run
// concurrently; results are independent of the parallelism degree.
TrainResult train(const NetworkSpec& spec, const TrainConfig& config,
                  const ClassicalDataset& data, ObjectiveKind kind, int jobs = 1);
TrainResult train(const NetworkSpec& spec, const TrainConfig& config,
                  const QuantumDataset& data, ObjectiveKind kind, int jobs = 1);

}  // namespace sqpnet
