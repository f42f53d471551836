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

#include "sqpnet/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sqpnet/parallel.hpp"
#include "sqpnet/rng.hpp"

namespace sqpnet {

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
    if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be > 0");
    if (!(eps_adam > 0.0)) throw std::invalid_argument("eps_adam must be > 0");
    if (beta1 < 0.0 || beta1 >= 1.0 || beta2 < 0.0 || beta2 >= 1.0) {
        throw std::invalid_argument("beta1 and beta2 must lie in [0, 1)");
    }
    if (n_epochs < 0) throw std::invalid_argument("n_epochs must be >= 0");
    if (n_restarts < 1) throw std::invalid_argument("n_restarts must be >= 1");
}

void ClassicalDataset::validate() const {
    if (inputs.size() != labels.size()) {
        throw std::invalid_argument("inputs and labels have different lengths");
    }
    std::vector<bool> seen(inputs.size(), false);
    auto check = [&](const std::vector<int>& idx) {
        for (const int i : idx) {
            if (i < 0 || i >= static_cast<int>(inputs.size())) {
                throw std::invalid_argument("split index out of range");
            }
            if (seen[i]) throw std::invalid_argument("train/validation splits overlap");
            seen[i] = true;
        }
    };
    check(train_idx);
    check(val_idx);
}

std::vector<double> finite_diff_grad(
    const std::function<double(const ParamVector&)>& objective, const ParamVector& theta,
    double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("finite-difference step must be > 0");
    std::vector<double> grad(theta.size());
    ParamVector shifted = theta;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        shifted[i] = theta[i] + eps;
        const double hi = objective(shifted);
        shifted[i] = theta[i] - eps;
        const double lo = objective(shifted);
        shifted[i] = theta[i];
        if (!std::isfinite(hi) || !std::isfinite(lo)) {
            throw std::runtime_error("objective non-finite at coordinate " +
                                     std::to_string(i));
        }
        grad[i] = (hi - lo) / (2.0 * eps);
    }
    return grad;
}

void adam_step(AdamState& state, ParamVector& theta, const std::vector<double>& grad,
               const TrainConfig& config) {
    if (state.m.size() != theta.size() || grad.size() != theta.size()) {
        throw std::invalid_argument("Adam state / gradient dimensions disagree");
    }
    state.t += 1;
    const double b1t = 1.0 - std::pow(config.beta1, static_cast<double>(state.t));
    const double b2t = 1.0 - std::pow(config.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * grad[i];
        state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
        const double mhat = state.m[i] / b1t;
        const double vhat = state.v[i] / b2t;
        theta[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.eps_adam);
    }
}

double ls_cost(const NetworkSpec& spec, const ParamVector& theta,
               const ClassicalDataset& data, const std::vector<int>& subset) {
    if (subset.empty()) throw std::invalid_argument("ls_cost needs at least one sample");
    NetworkEvaluator eval(spec);
    double acc = 0.0;
    for (const int i : subset) {
        const ModelOutput out = eval.output_probs(theta, data.inputs[i]);
        const auto& y = data.labels[i];
        if (out.size() != y.size()) {
            throw std::invalid_argument("label dimension does not match readout dimension");
        }
        for (std::size_t k = 0; k < y.size(); ++k) {
            const double d = out[k] - y[k];
            acc += d * d;
        }
    }
    return acc / static_cast<double>(subset.size());
}

double unitary_objective(const NetworkSpec& spec, const ParamVector& theta,
                         const QuantumDataset& data, const std::vector<int>& subset) {
    if (subset.empty()) {
        throw std::invalid_argument("unitary_objective needs at least one pair");
    }
    NetworkEvaluator eval(spec);
    double acc = 0.0;
    for (const int i : subset) {
        const auto& [x, y] = data.pairs[i];
        if (y.n_qubits != spec.n_out()) {
            throw std::invalid_argument("target state size does not match output layer");
        }
        acc += eval.fidelity(theta, x, y);
    }
    return acc / static_cast<double>(subset.size());
}

namespace {

struct Objective {
    std::function<double(const ParamVector&)> train_metric;
    std::function<double(const ParamVector&)> val_metric;  // may be empty
    bool maximize = false;
};

RestartCurve run_restart(const NetworkSpec& spec, const TrainConfig& config,
                         const Objective& obj, int restart) {
    const auto bounds = param_bounds(spec);
    Rng rng = stream(config.seed, "train-init", static_cast<std::uint64_t>(restart));
    ParamVector theta(bounds.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        theta[i] = rng.uniform(bounds[i].first, bounds[i].second);
    }

    RestartCurve curve;
    curve.train_metric.push_back(obj.train_metric(theta));
    if (obj.val_metric) curve.val_metric.push_back(obj.val_metric(theta));

    AdamState adam = AdamState::init(theta.size());
    double rate = config.learning_rate;
    const double sign = obj.maximize ? -1.0 : 1.0;

    for (int epoch = 0; epoch < config.n_epochs; ++epoch) {
        bool ok = false;
        for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
            const ParamVector saved_theta = theta;
            const AdamState saved_adam = adam;
            double metric = std::numeric_limits<double>::quiet_NaN();
            try {
                std::vector<double> grad =
                    finite_diff_grad(obj.train_metric, theta, config.fd_step);
                for (auto& g : grad) g *= sign;
                if (config.optimizer == Optimizer::ADAM) {
                    TrainConfig step_cfg = config;
                    step_cfg.learning_rate = rate;
                    adam_step(adam, theta, grad, step_cfg);
                } else {
                    for (std::size_t i = 0; i < theta.size(); ++i) {
                        theta[i] -= rate * grad[i];
                    }
                }
                metric = obj.train_metric(theta);
            } catch (const std::runtime_error&) {
                metric = std::numeric_limits<double>::quiet_NaN();
            }
            if (std::isfinite(metric)) {
                curve.train_metric.push_back(metric);
                if (obj.val_metric) curve.val_metric.push_back(obj.val_metric(theta));
                ok = true;
            } else {
                // Divergence guard: halve the step and retry once.
                theta = saved_theta;
                adam = saved_adam;
                rate /= 2.0;
            }
        }
        if (!ok) {
            curve.diverged = true;
            break;
        }
    }
    curve.final_theta = theta;
    return curve;
}

TrainResult train_impl(const NetworkSpec& spec, const TrainConfig& config,
                       const Objective& obj, int jobs) {
    spec.validate();
    config.validate();
    TrainResult result;
    result.restarts.resize(config.n_restarts);
    parallel_for(result.restarts.size(), jobs, [&](std::size_t r) {
        result.restarts[r] = run_restart(spec, config, obj, static_cast<int>(r));
    });
    double best = obj.maximize ? -std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < result.restarts.size(); ++r) {
        const auto& c = result.restarts[r];
        if (c.diverged || c.train_metric.empty()) continue;
        const double final_metric = c.train_metric.back();
        const bool better = obj.maximize ? final_metric > best : final_metric < best;
        if (better) {
            best = final_metric;
            result.best_restart = static_cast<int>(r);
        }
    }
    return result;
}

}  // namespace

std::vector<double> TrainResult::mean_curve(bool validation) const {
    std::size_t len = 0;
    for (const auto& r : restarts) {
        if (!r.diverged) {
            len = std::max(len, (validation ? r.val_metric : r.train_metric).size());
        }
    }
    std::vector<double> mean(len, 0.0);
    std::vector<int> counts(len, 0);
    for (const auto& r : restarts) {
        if (r.diverged) continue;
        const auto& c = validation ? r.val_metric : r.train_metric;
        for (std::size_t e = 0; e < c.size(); ++e) {
            mean[e] += c[e];
            counts[e] += 1;
        }
    }
    for (std::size_t e = 0; e < len; ++e) {
        mean[e] = counts[e] > 0 ? mean[e] / counts[e]
                                : std::numeric_limits<double>::quiet_NaN();
    }
    return mean;
}

std::vector<double> TrainResult::best_curve(bool validation, bool maximize) const {
    std::size_t len = 0;
    for (const auto& r : restarts) {
        if (!r.diverged) {
            len = std::max(len, (validation ? r.val_metric : r.train_metric).size());
        }
    }
    std::vector<double> best(len, maximize ? -std::numeric_limits<double>::infinity()
                                           : std::numeric_limits<double>::infinity());
    for (const auto& r : restarts) {
        if (r.diverged) continue;
        const auto& c = validation ? r.val_metric : r.train_metric;
        for (std::size_t e = 0; e < c.size(); ++e) {
            best[e] = maximize ? std::max(best[e], c[e]) : std::min(best[e], c[e]);
        }
    }
    return best;
}

TrainResult train(const NetworkSpec& spec, const TrainConfig& config,
                  const ClassicalDataset& data, ObjectiveKind kind, int jobs) {
    if (kind != ObjectiveKind::LS_COST) {
        throw std::invalid_argument("classical datasets train with LS_COST");
    }
    data.validate();
    Objective obj;
    obj.maximize = false;
    obj.train_metric = [&spec, &data](const ParamVector& t) {
        return ls_cost(spec, t, data, data.train_idx);
    };
    if (!data.val_idx.empty()) {
        obj.val_metric = [&spec, &data](const ParamVector& t) {
            return ls_cost(spec, t, data, data.val_idx);
        };
    }
    return train_impl(spec, config, obj, jobs);
}

TrainResult train(const NetworkSpec& spec, const TrainConfig& config,
                  const QuantumDataset& data, ObjectiveKind kind, int jobs) {
    if (kind != ObjectiveKind::UNITARY_OBJECTIVE) {
        throw std::invalid_argument("quantum datasets train with UNITARY_OBJECTIVE");
    }
    Objective obj;
    obj.maximize = true;
    obj.train_metric = [&spec, &data](const ParamVector& t) {
        return unitary_objective(spec, t, data, data.train_idx);
    };
    if (!data.val_idx.empty()) {
        obj.val_metric = [&spec, &data](const ParamVector& t) {
            return unitary_objective(spec, t, data, data.val_idx);
        };
    }
    return train_impl(spec, config, obj, jobs);
}

}  // namespace sqpnet
