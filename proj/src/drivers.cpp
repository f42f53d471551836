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

#include "sqpnet/drivers.hpp"

#include <chrono>
#include <cmath>

#include "sqpnet/parallel.hpp"
#include "sqpnet/rng.hpp"

namespace sqpnet {

namespace {
std::string fd(double v) { return format_double(v); }

double elapsed_sec(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

void run_effective_dimension_sweep(const EffDimRunConfig& config, const RunContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    ctx.ensure_out_dir();

    EffDimConfig mc;
    mc.n_observations = config.n_observations;
    mc.n_theta_samples = config.n_theta_samples;
    mc.n_x_samples = config.n_x_samples;
    mc.fisher_kind = config.fisher_kind;
    mc.validate();

    std::vector<NetworkSpec> specs;
    for (const auto& point : config.sweep) {
        for (auto& s : EffDimRunConfig::specs_for_point(point, config.feature_map)) {
            specs.push_back(std::move(s));
        }
    }

    std::vector<EffDimResult> results(specs.size());
    // Parallelism lives inside the per-spec theta loop; specs run serially so
    // memory stays bounded.
    for (std::size_t i = 0; i < specs.size(); ++i) {
        ctx.log("effdim: " + specs[i].id());
        results[i] = effective_dimension_of_spec(specs[i], mc, ctx.seed, ctx.jobs);
    }

    CsvWriter summary(ctx.out_dir / "effdim_summary.csv",
                      {"spec_id", "family", "n_in", "n_out", "n_params", "n_observations",
                       "dim_eff", "dim_eff_per_param"});
    CsvWriter samples(ctx.out_dir / "effdim_samples.csv",
                      {"spec_id", "n_params", "n_observations", "sample_idx", "trace",
                       "min_eig", "max_eig", "dim_eff"});
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& spec = specs[i];
        const auto& res = results[i];
        summary.write_row({spec.id(), family_name(spec.family),
                           std::to_string(spec.n_in()), std::to_string(spec.n_out()),
                           std::to_string(res.n_params), fd(config.n_observations),
                           fd(res.dim_eff), fd(res.dim_eff / res.n_params)});
        for (std::size_t s = 0; s < res.samples.size(); ++s) {
            const auto& st = res.samples[s];
            samples.write_row({spec.id(), std::to_string(res.n_params),
                               fd(config.n_observations), std::to_string(s), fd(st.trace),
                               fd(st.min_eig), fd(st.max_eig), ""});
        }
        // summary row per spec: sample_idx = -1, aggregate stats, dim_eff set
        double mean_trace = 0.0;
        for (const auto& st : res.samples) mean_trace += st.trace;
        mean_trace /= static_cast<double>(res.samples.size());
        samples.write_row({spec.id(), std::to_string(res.n_params),
                           fd(config.n_observations), "-1", fd(mean_trace), "", "",
                           fd(res.dim_eff)});
    }

    nlohmann::json extra;
    extra["wall_clock_sec"] = elapsed_sec(t0);
    extra["outputs"] = {summary.path().filename().string(),
                        samples.path().filename().string()};
    int underflow = 0;
    for (const auto& r : results) underflow += r.underflow_total;
    extra["ml_underflow_outcomes"] = underflow;
    write_manifest(ctx, "effdim", config.echo(), extra);
}

void run_capacity_experiment(const CapacityRunConfig& config, const RunContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    ctx.ensure_out_dir();

    struct Cell {
        NetworkSpec spec;
        FeatureMap map;
        int seed_idx;
    };
    std::vector<Cell> cells;
    for (const FeatureMap map : {FeatureMap::EASY, FeatureMap::HARD}) {
        for (const auto& spec : config.networks(map)) {
            for (int s = 0; s < config.n_seeds; ++s) cells.push_back({spec, map, s});
        }
    }

    std::vector<std::vector<double>> curves(cells.size());
    parallel_for(cells.size(), ctx.jobs, [&](std::size_t i) {
        const Cell& cell = cells[i];
        const std::uint64_t cell_seed =
            stream(ctx.seed, "capacity-cell", i).next_u64();
        const ClassicalDataset data = gen_random_dataset(
            config.n_samples, config.n_features, config.n_classes, cell_seed);
        TrainConfig tc;
        tc.learning_rate = config.learning_rate;
        tc.beta1 = config.beta1;
        tc.beta2 = config.beta2;
        tc.n_epochs = config.n_epochs;
        tc.n_restarts = 1;
        tc.seed = cell_seed;
        tc.optimizer = Optimizer::ADAM;
        const TrainResult res = train(cell.spec, tc, data, ObjectiveKind::LS_COST, 1);
        curves[i] = res.restarts[0].train_metric;
    });

    CsvWriter runs(ctx.out_dir / "capacity_runs.csv",
                   {"family", "feature_map", "seed_idx", "epoch", "train_loss"});
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t e = 0; e < curves[i].size(); ++e) {
            runs.write_row({family_name(cells[i].spec.family),
                            feature_map_name(cells[i].map), std::to_string(cells[i].seed_idx),
                            std::to_string(e), fd(curves[i][e])});
        }
    }

    CsvWriter mean(ctx.out_dir / "capacity_mean.csv",
                   {"family", "feature_map", "epoch", "mean_train_loss"});
    for (const FeatureMap map : {FeatureMap::EASY, FeatureMap::HARD}) {
        for (const auto& spec : config.networks(map)) {
            std::vector<double> acc;
            int count = 0;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (cells[i].map != map || cells[i].spec.family != spec.family) continue;
                if (acc.empty()) acc.assign(curves[i].size(), 0.0);
                for (std::size_t e = 0; e < curves[i].size(); ++e) acc[e] += curves[i][e];
                ++count;
            }
            for (std::size_t e = 0; e < acc.size(); ++e) {
                mean.write_row({family_name(spec.family), feature_map_name(map),
                                std::to_string(e), fd(acc[e] / count)});
            }
        }
    }

    nlohmann::json extra;
    extra["wall_clock_sec"] = elapsed_sec(t0);
    extra["outputs"] = {runs.path().filename().string(), mean.path().filename().string()};
    write_manifest(ctx, "capacity", config.echo(), extra);
}

void run_classification_experiment(const ClassifyRunConfig& config,
                                   const RunContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    ctx.ensure_out_dir();

    const IrisData iris = load_iris(config.dataset, config.n_train, ctx.seed);
    const auto specs = config.networks();

    // Cells are (network, restart); the restart index seeds the initializer
    // inside train(), so run each restart as its own single-restart training.
    struct Cell {
        std::size_t spec_idx;
        int restart;
    };
    std::vector<Cell> cells;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        for (int r = 0; r < config.n_restarts; ++r) cells.push_back({s, r});
    }
    std::vector<RestartCurve> curves(cells.size());
    parallel_for(cells.size(), ctx.jobs, [&](std::size_t i) {
        const Cell& cell = cells[i];
        TrainConfig tc;
        tc.learning_rate = config.learning_rate;
        tc.beta1 = config.beta1;
        tc.beta2 = config.beta2;
        tc.n_epochs = config.n_epochs;
        tc.n_restarts = 1;
        tc.seed = stream(ctx.seed, "classify-restart",
                         cell.spec_idx * 1000 + static_cast<std::uint64_t>(cell.restart))
                      .next_u64();
        tc.optimizer = Optimizer::ADAM;
        const TrainResult res =
            train(specs[cell.spec_idx], tc, iris.dataset, ObjectiveKind::LS_COST, 1);
        curves[i] = res.restarts[0];
    });

    CsvWriter runs(ctx.out_dir / "classify_runs.csv",
                   {"family", "restart", "epoch", "train_cost", "val_cost"});
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = curves[i];
        for (std::size_t e = 0; e < c.train_metric.size(); ++e) {
            runs.write_row({family_name(specs[cells[i].spec_idx].family),
                            std::to_string(cells[i].restart), std::to_string(e),
                            fd(c.train_metric[e]), fd(c.val_metric[e])});
        }
    }

    CsvWriter summary(ctx.out_dir / "classify_summary.csv",
                      {"family", "epoch", "mean_val_cost", "min_val_cost",
                       "mean_train_cost", "min_train_cost"});
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const std::size_t epochs = static_cast<std::size_t>(config.n_epochs) + 1;
        for (std::size_t e = 0; e < epochs; ++e) {
            double mean_val = 0.0, mean_train = 0.0;
            double min_val = std::numeric_limits<double>::infinity();
            double min_train = min_val;
            int count = 0;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (cells[i].spec_idx != s || curves[i].diverged) continue;
                mean_val += curves[i].val_metric[e];
                mean_train += curves[i].train_metric[e];
                min_val = std::min(min_val, curves[i].val_metric[e]);
                min_train = std::min(min_train, curves[i].train_metric[e]);
                ++count;
            }
            summary.write_row({family_name(specs[s].family), std::to_string(e),
                               fd(mean_val / count), fd(min_val), fd(mean_train / count),
                               fd(min_train)});
        }
    }

    nlohmann::json extra;
    extra["wall_clock_sec"] = elapsed_sec(t0);
    extra["outputs"] = {runs.path().filename().string(),
                        summary.path().filename().string()};
    extra["iris_rows"] = iris.raw_rows;
    extra["iris_classes"] = iris.class_names;
    extra["dataset_sha1"] = git_blob_sha1(config.dataset);
    extra["n_train"] = static_cast<int>(iris.dataset.train_idx.size());
    extra["n_validation"] = static_cast<int>(iris.dataset.val_idx.size());
    write_manifest(ctx, "classify", config.echo(), extra);
}

void run_unitary_learning_experiment(const UnitaryLearnRunConfig& config,
                                     const RunContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    ctx.ensure_out_dir();

    const auto specs = config.networks();
    struct Cell {
        std::size_t spec_idx;
        std::size_t target_idx;
        int restart;
    };
    std::vector<Cell> cells;
    for (std::size_t t = 0; t < config.targets.size(); ++t) {
        for (std::size_t s = 0; s < specs.size(); ++s) {
            for (int r = 0; r < config.n_restarts; ++r) cells.push_back({s, t, r});
        }
    }

    // One target unitary and dataset per target kind, shared across networks.
    std::vector<QuantumDataset> datasets(config.targets.size());
    for (std::size_t t = 0; t < config.targets.size(); ++t) {
        const std::uint64_t target_seed = stream(ctx.seed, "unitary-target", t).next_u64();
        UnitaryMatrix u = config.targets[t] == "ising"
                              ? gen_ising_unitary(sample_ising_params(2, target_seed))
                              : gen_haar_unitary(2, target_seed);
        datasets[t] = make_quantum_training_set(u, config.n_train_pairs,
                                                config.n_val_pairs, target_seed);
    }

    auto eta_for = [&](const NetworkSpec& spec, const std::string& target) {
        if (spec.family == Family::HEA) return config.eta_hea;
        if (spec.family == Family::HANNOVER) return config.eta_hannover;
        return target == "ising" ? config.eta_sqp_ising : config.eta_sqp_haar;
    };

    std::vector<RestartCurve> curves(cells.size());
    parallel_for(cells.size(), ctx.jobs, [&](std::size_t i) {
        const Cell& cell = cells[i];
        TrainConfig tc;
        tc.learning_rate = eta_for(specs[cell.spec_idx], config.targets[cell.target_idx]);
        tc.n_epochs = config.n_epochs;
        tc.n_restarts = 1;
        tc.seed = stream(ctx.seed, "unitary-restart",
                         cell.target_idx * 1000000 + cell.spec_idx * 1000 +
                             static_cast<std::uint64_t>(cell.restart))
                      .next_u64();
        tc.optimizer = Optimizer::SGD;  // plain gradient ascent
        const TrainResult res = train(specs[cell.spec_idx], tc, datasets[cell.target_idx],
                                      ObjectiveKind::UNITARY_OBJECTIVE, 1);
        curves[i] = res.restarts[0];
    });

    CsvWriter runs(ctx.out_dir / "unitary_runs.csv",
                   {"family", "target", "restart", "epoch", "train_objective",
                    "val_objective"});
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = curves[i];
        for (std::size_t e = 0; e < c.train_metric.size(); ++e) {
            runs.write_row({family_name(specs[cells[i].spec_idx].family),
                            config.targets[cells[i].target_idx],
                            std::to_string(cells[i].restart), std::to_string(e),
                            fd(c.train_metric[e]), fd(c.val_metric[e])});
        }
    }

    CsvWriter summary(ctx.out_dir / "unitary_summary.csv",
                      {"family", "target", "epoch", "mean_val_objective",
                       "max_val_objective"});
    for (std::size_t t = 0; t < config.targets.size(); ++t) {
        for (std::size_t s = 0; s < specs.size(); ++s) {
            const std::size_t epochs = static_cast<std::size_t>(config.n_epochs) + 1;
            for (std::size_t e = 0; e < epochs; ++e) {
                double mean = 0.0;
                double best = -std::numeric_limits<double>::infinity();
                int count = 0;
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    if (cells[i].spec_idx != s || cells[i].target_idx != t ||
                        curves[i].diverged) {
                        continue;
                    }
                    mean += curves[i].val_metric[e];
                    best = std::max(best, curves[i].val_metric[e]);
                    ++count;
                }
                summary.write_row({family_name(specs[s].family), config.targets[t],
                                   std::to_string(e), fd(mean / count), fd(best)});
            }
        }
    }

    nlohmann::json extra;
    extra["wall_clock_sec"] = elapsed_sec(t0);
    extra["outputs"] = {runs.path().filename().string(),
                        summary.path().filename().string()};
    write_manifest(ctx, "unitary-learn", config.echo(), extra);
}

void run_adiabatic_check(const AdiabaticRunConfig& config, const RunContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    ctx.ensure_out_dir();

    struct Cell {
        int n_in;
        int draw;
        double total_time;
    };
    std::vector<Cell> cells;
    for (const int n_in : config.n_in_values) {
        for (int d = 0; d < config.n_draws; ++d) {
            for (const double T : config.t_ladder) cells.push_back({n_in, d, T});
        }
    }

    struct CellResult {
        double max_prob_dev = 0.0;
        double max_block_infidelity = 0.0;
    };
    std::vector<CellResult> results(cells.size());
    parallel_for(cells.size(), ctx.jobs, [&](std::size_t i) {
        const Cell& cell = cells[i];
        Rng rng = stream(ctx.seed, "adiabatic-draw",
                         static_cast<std::uint64_t>(cell.n_in),
                         static_cast<std::uint64_t>(cell.draw));
        SqpEdgeParams p;
        p.weights.resize(cell.n_in);
        for (auto& w : p.weights) w = rng.uniform(-config.param_range, config.param_range);
        p.bias = rng.uniform(-config.param_range, config.param_range);

        const RampSchedule sched =
            RampSchedule::for_params(p, cell.total_time, config.shape());
        const UnitaryMatrix gate =
            build_sqp_unitary(p, cell.n_in, SqpSign::PLUS);

        CellResult res;
        const std::int64_t patterns = std::int64_t{1} << cell.n_in;
        for (std::int64_t z = 0; z < patterns; ++z) {
            for (int tbit = 0; tbit < 2; ++tbit) {
                const StateVector input =
                    StateVector::basis(cell.n_in + 1, (z << 1) | tbit);
                const StateVector evolved = adiabatic_ramp_evolve(p, sched, input);
                // closed form: the gate column for the same basis input
                Vec ideal = gate.entries.col((z << 1) | tbit);
                // excitation probability of the target qubit
                double p_sim = 0.0, p_ideal = 0.0;
                for (std::int64_t k = 0; k < evolved.dim(); ++k) {
                    if (k & 1) {
                        p_sim += std::norm(evolved.amplitudes[k]);
                        p_ideal += std::norm(ideal[k]);
                    }
                }
                res.max_prob_dev = std::max(res.max_prob_dev, std::abs(p_sim - p_ideal));
                const double overlap = std::norm(ideal.dot(evolved.amplitudes));
                res.max_block_infidelity =
                    std::max(res.max_block_infidelity, 1.0 - overlap);
            }
        }
        results[i] = res;
    });

    CsvWriter csv(ctx.out_dir / "adiabatic.csv",
                  {"n_in", "draw", "total_time", "max_prob_deviation",
                   "max_block_infidelity"});
    for (std::size_t i = 0; i < cells.size(); ++i) {
        csv.write_row({std::to_string(cells[i].n_in), std::to_string(cells[i].draw),
                       fd(cells[i].total_time), fd(results[i].max_prob_dev),
                       fd(results[i].max_block_infidelity)});
    }

    nlohmann::json extra;
    extra["wall_clock_sec"] = elapsed_sec(t0);
    extra["outputs"] = {csv.path().filename().string()};
    write_manifest(ctx, "adiabatic-check", config.echo(), extra);
}

}  // namespace sqpnet
