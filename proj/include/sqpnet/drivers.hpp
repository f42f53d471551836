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

#include "sqpnet/config.hpp"
#include "sqpnet/io.hpp"

namespace sqpnet {

// Experiment drivers. Each writes one or more CSVs plus a JSON manifest into
// ctx.out_dir and is deterministic for a given (config, seed) at any
// parallelism degree. CSV schemas are documented in the README.

void run_effective_dimension_sweep(const EffDimRunConfig& config, const RunContext& ctx);
void run_capacity_experiment(const CapacityRunConfig& config, const RunContext& ctx);
void run_classification_experiment(const ClassifyRunConfig& config, const RunContext& ctx);
void run_unitary_learning_experiment(const UnitaryLearnRunConfig& config,
                                     const RunContext& ctx);
void run_adiabatic_check(const AdiabaticRunConfig& config, const RunContext& ctx);

}  // namespace sqpnet
