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

#include "sqpnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "sqpnet/parallel.hpp"
#include "sqpnet/rng.hpp"

namespace sqpnet {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kProbFloor = 1e-12;
constexpr double kEigFloor = -1e-8;

FisherMatrix fisher_impl(const NetworkSpec& spec, const ParamVector& theta,
                         const std::vector<std::vector<double>>& x_samples,
                         double fd_step, FisherKind kind) {
    if (spec.readout != ReadoutMode::DISTRIBUTION) {
        throw std::invalid_argument("Fisher information requires DISTRIBUTION readout");
    }
    if (x_samples.empty()) {
        throw std::invalid_argument("Fisher information needs at least one input");
    }
    const int np = param_count(spec);
    if (static_cast<int>(theta.size()) != np) {
        throw std::invalid_argument("parameter vector length does not match spec");
    }

    NetworkEvaluator eval(spec);
    FisherMatrix fm;
    fm.entries = Eigen::MatrixXd::Zero(np, np);
    fm.theta = theta;

    ParamVector shifted = theta;
    const std::size_t n_out = std::size_t{1} << spec.n_out();
    // d_i p_a for all i, one input at a time.
    Eigen::MatrixXd dp(np, n_out);
    for (const auto& x : x_samples) {
        const ModelOutput base = eval.output_probs(theta, x);
        for (int i = 0; i < np; ++i) {
            shifted[i] = theta[i] + fd_step;
            const ModelOutput hi = eval.output_probs(shifted, x);
            shifted[i] = theta[i] - fd_step;
            const ModelOutput lo = eval.output_probs(shifted, x);
            shifted[i] = theta[i];
            for (std::size_t a = 0; a < n_out; ++a) {
                dp(i, a) = (hi[a] - lo[a]) / (2.0 * fd_step);
            }
        }
        for (std::size_t a = 0; a < n_out; ++a) {
            double weight = 1.0;
            if (kind == FisherKind::ML) {
                if (base[a] < kProbFloor) {
                    ++fm.underflow_count;
                    continue;
                }
                weight = 1.0 / base[a];
            }
            fm.entries.noalias() += weight * dp.col(a) * dp.col(a).transpose();
        }
    }
    fm.entries /= static_cast<double>(x_samples.size());
    // Exact symmetry, so downstream eigensolvers see a clean input.
    fm.entries = ((fm.entries + fm.entries.transpose()) / 2.0).eval();
    return fm;
}
}  // namespace

FisherMatrix fisher_ml(const NetworkSpec& spec, const ParamVector& theta,
                       const std::vector<std::vector<double>>& x_samples,
                       double fd_step) {
    return fisher_impl(spec, theta, x_samples, fd_step, FisherKind::ML);
}

FisherMatrix fisher_ls(const NetworkSpec& spec, const ParamVector& theta,
                       const std::vector<std::vector<double>>& x_samples,
                       double fd_step) {
    return fisher_impl(spec, theta, x_samples, fd_step, FisherKind::LS);
}

std::vector<FisherMatrix> normalize_fisher(
    std::vector<FisherMatrix> samples,
    const std::vector<std::pair<double, double>>& bounds) {
    if (samples.empty()) {
        throw std::invalid_argument("normalize_fisher needs at least one sample");
    }
    const auto np = samples.front().entries.rows();
    for (const auto& s : samples) {
        if (s.entries.rows() != np || s.entries.cols() != np) {
            throw std::invalid_argument("Fisher samples have mismatched dimensions");
        }
    }
    for (const auto& [lo, hi] : bounds) {
        if (!(hi > lo)) throw std::invalid_argument("degenerate parameter bounds");
    }
    double mean_trace = 0.0;
    for (const auto& s : samples) mean_trace += s.entries.trace();
    mean_trace /= static_cast<double>(samples.size());
    if (mean_trace < 1e-14) {
        throw std::runtime_error(
            "all Fisher samples have zero trace; model is independent of its parameters");
    }
    const double scale = static_cast<double>(np) / mean_trace;
    for (auto& s : samples) s.entries *= scale;
    return samples;
}

double effective_dimension(const std::vector<FisherMatrix>& normalized_samples,
                           double n_observations) {
    if (normalized_samples.empty()) {
        throw std::invalid_argument("effective_dimension needs at least one sample");
    }
    const double kappa = n_observations / kTwoPi;
    if (!(kappa > 1.0)) {
        throw std::invalid_argument("effective dimension requires n/(2 pi) > 1");
    }
    // log sqrt(det(I + kappa F)) per sample, then a log-sum-exp mean.
    std::vector<double> logs;
    logs.reserve(normalized_samples.size());
    for (const auto& s : normalized_samples) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.entries,
                                                          Eigen::EigenvaluesOnly);
        double half_logdet = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            const double lambda = es.eigenvalues()[i];
            if (lambda < kEigFloor) {
                throw std::runtime_error("Fisher sample has eigenvalue " +
                                         std::to_string(lambda) + " below -1e-8");
            }
            half_logdet += 0.5 * std::log1p(kappa * std::max(lambda, 0.0));
        }
        logs.push_back(half_logdet);
    }
    const double lmax = *std::max_element(logs.begin(), logs.end());
    double acc = 0.0;
    for (const double l : logs) acc += std::exp(l - lmax);
    const double log_mean = lmax + std::log(acc / static_cast<double>(logs.size()));
    return 2.0 * log_mean / std::log(kappa);
}

void EffDimConfig::validate() const {
    if (n_observations < 2.0 || !(n_observations / kTwoPi > 1.0)) {
        throw std::invalid_argument("n_observations must satisfy n >= 2 and n/(2 pi) > 1");
    }
    if (n_theta_samples < 1 || n_x_samples < 1) {
        throw std::invalid_argument("sample counts must be >= 1");
    }
    if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
}

EffDimResult effective_dimension_of_spec(const NetworkSpec& spec,
                                         const EffDimConfig& config,
                                         std::uint64_t seed, int jobs) {
    config.validate();
    spec.validate();
    const auto bounds = param_bounds(spec);
    const int np = param_count(spec);

    std::vector<FisherMatrix> samples(config.n_theta_samples);
    int underflow_total = 0;
    parallel_for(samples.size(), jobs, [&](std::size_t s) {
        Rng rng = stream(seed, "effdim-theta", s);
        ParamVector theta(np);
        for (int i = 0; i < np; ++i) {
            theta[i] = rng.uniform(bounds[i].first, bounds[i].second);
        }
        std::vector<std::vector<double>> xs(config.n_x_samples,
                                            std::vector<double>(spec.n_in()));
        Rng xrng = stream(seed, "effdim-x", s);
        for (auto& x : xs) {
            for (auto& v : x) v = xrng.uniform(0.0, 3.14159265358979323846);
        }
        samples[s] = config.fisher_kind == FisherKind::ML
                         ? fisher_ml(spec, theta, xs, config.fd_step)
                         : fisher_ls(spec, theta, xs, config.fd_step);
    });
    for (const auto& s : samples) underflow_total += s.underflow_count;

    auto normalized = normalize_fisher(std::move(samples), bounds);

    EffDimResult result;
    result.n_params = np;
    result.underflow_total = underflow_total;
    result.samples.reserve(normalized.size());
    for (const auto& s : normalized) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.entries,
                                                          Eigen::EigenvaluesOnly);
        FisherSampleStats st;
        st.trace = s.entries.trace();
        st.min_eig = es.eigenvalues().minCoeff();
        st.max_eig = es.eigenvalues().maxCoeff();
        result.samples.push_back(st);
    }
    result.dim_eff = effective_dimension(normalized, config.n_observations);
    return result;
}

}  // namespace sqpnet
