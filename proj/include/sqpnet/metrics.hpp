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
#include <utility>
#include <vector>

#include "sqpnet/networks.hpp"

namespace sqpnet {

// Symmetric PSD information matrix evaluated at a parameter point.
struct FisherMatrix {
    Eigen::MatrixXd entries;
    ParamVector theta;
    // Number of (input, outcome) pairs excluded from the maximum-likelihood
    // sum because the outcome probability fell below 1e-12.
    int underflow_count = 0;
};

enum class FisherKind { ML, LS };

// Maximum-likelihood Fisher information, averaged over the given inputs:
//   F_ij = E_x sum_a (d_i p_a)(d_j p_a) / p_a
// with derivatives taken by central finite differences of the DISTRIBUTION
// readout probabilities. Outcomes with p_a < 1e-12 are excluded and counted.
FisherMatrix fisher_ml(const NetworkSpec& spec, const ParamVector& theta,
                       const std::vector<std::vector<double>>& x_samples,
                       double fd_step = 1e-3);

// Least-squares Fisher information: as fisher_ml but without the 1/p weight.
FisherMatrix fisher_ls(const NetworkSpec& spec, const ParamVector& theta,
                       const std::vector<std::vector<double>>& x_samples,
                       double fd_step = 1e-3);

// Rescales every sample by N_P / mean(Tr F) so that the Monte-Carlo estimate
// of the mean trace equals the parameter count. The parameter-space volume
// cancels in the estimator; bounds are validated for well-formedness.
// Throws std::runtime_error if all samples have (near-)zero trace.
std::vector<FisherMatrix> normalize_fisher(
    std::vector<FisherMatrix> samples,
    const std::vector<std::pair<double, double>>& bounds);

// Monte-Carlo effective dimension
//   2 * log( mean_s sqrt(det(I + n/(2 pi) Fhat_s)) ) / log(n/(2 pi))
// computed with log-determinants and a log-sum-exp average. Eigenvalues may
// dip to -1e-8 (clipped to zero); anything lower is an error. Requires
// n/(2 pi) > 1.
double effective_dimension(const std::vector<FisherMatrix>& normalized_samples,
                           double n_observations);

struct EffDimConfig {
    double n_observations = 1e4;
    int n_theta_samples = 100;
    int n_x_samples = 100;
    FisherKind fisher_kind = FisherKind::ML;
    double fd_step = 1e-3;

    void validate() const;  // n >= 2, n/(2 pi) > 1, counts >= 1
};

// Per-theta-sample summary used for CSV reporting.
struct FisherSampleStats {
    double trace = 0.0;
    double min_eig = 0.0;
    double max_eig = 0.0;
};

struct EffDimResult {
    double dim_eff = 0.0;
    int n_params = 0;
    std::vector<FisherSampleStats> samples;  // stats of the normalized samples
    int underflow_total = 0;
};

// Samples thetas uniformly from the spec bounds (stream "effdim-theta",
// indexed by sample), inputs uniformly from [0, pi]^n_in per sample, builds
// Fisher matrices, normalizes, and evaluates the effective dimension.
// Deterministic for a given seed at any parallelism degree.
EffDimResult effective_dimension_of_spec(const NetworkSpec& spec,
                                         const EffDimConfig& config,
                                         std::uint64_t seed, int jobs);

}  // namespace sqpnet
