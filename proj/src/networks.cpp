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

#include "sqpnet/networks.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sqpnet/gates.hpp"

namespace sqpnet {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}
}  // namespace

int NetworkSpec::n_in() const {
    return layer_widths.empty() ? 0 : layer_widths.front();
}

int NetworkSpec::n_out() const {
    if (family == Family::HEA) return layer_widths.front();
    return layer_widths.back();
}

int NetworkSpec::total_qubits() const {
    if (family == Family::HEA) return layer_widths.front();
    return std::accumulate(layer_widths.begin(), layer_widths.end(), 0);
}

std::vector<int> NetworkSpec::probe_qubits() const {
    if (!readout_targets.empty()) return readout_targets;
    std::vector<int> all(n_out());
    std::iota(all.begin(), all.end(), 0);
    return all;
}

void NetworkSpec::validate() const {
    require(layer_widths.size() >= 2, "layer_widths needs at least two entries");
    for (const int w : layer_widths) require(w >= 1, "layer widths must be >= 1");
    if (family == Family::HEA) {
        require(layer_widths.size() == 2, "HEA layer_widths is {n_qubits, n_layers}");
    }
    require(param_count(*this) >= 1, "spec has no parameters");
    for (const int q : readout_targets) {
        require(q >= 0 && q < n_out(), "readout target outside the output layer");
    }
    if (readout == ReadoutMode::CLASS_PROBE) {
        require(!probe_qubits().empty(), "CLASS_PROBE readout needs probe qubits");
    }
}

std::string NetworkSpec::id() const {
    if (family == Family::HEA) {
        return "HEA-" + std::to_string(layer_widths[0]) + "q-" +
               std::to_string(layer_widths[1]) + "l";
    }
    std::string s = family == Family::SQP ? "SQP" : "HANNOVER";
    for (const int w : layer_widths) s += "-" + std::to_string(w);
    return s;
}

int param_count(const NetworkSpec& spec) {
    const auto& w = spec.layer_widths;
    switch (spec.family) {
        case Family::HEA:
            return w[0] * w[1];
        case Family::SQP: {
            int n = 0;
            for (std::size_t l = 1; l < w.size(); ++l) n += w[l] * (w[l - 1] + 1);
            return n;
        }
        case Family::HANNOVER: {
            int n = 0;
            for (std::size_t l = 1; l < w.size(); ++l) n += 3 * w[l - 1] * w[l];
            return n;
        }
    }
    return 0;
}

std::vector<std::pair<double, double>> param_bounds(const NetworkSpec& spec) {
    const int n = param_count(spec);
    std::vector<std::pair<double, double>> bounds(n);
    if (spec.family == Family::SQP) {
        for (auto& b : bounds) b = {-5.0, 5.0};
    } else {
        for (auto& b : bounds) b = {0.0, kTwoPi};
    }
    return bounds;
}

std::vector<std::vector<double>> unflatten_params(const NetworkSpec& spec,
                                                  const ParamVector& theta) {
    require(static_cast<int>(theta.size()) == param_count(spec),
            "parameter vector length does not match spec");
    std::vector<std::vector<double>> slices;
    const auto& w = spec.layer_widths;
    std::size_t pos = 0;
    auto take = [&](int count) {
        slices.emplace_back(theta.begin() + pos, theta.begin() + pos + count);
        pos += count;
    };
    switch (spec.family) {
        case Family::HEA:
            for (int l = 0; l < w[1]; ++l) take(w[0]);
            break;
        case Family::SQP:
            for (std::size_t l = 1; l < w.size(); ++l)
                for (int t = 0; t < w[l]; ++t) take(w[l - 1] + 1);
            break;
        case Family::HANNOVER:
            for (std::size_t l = 1; l < w.size(); ++l)
                for (int t = 0; t < w[l]; ++t)
                    for (int s = 0; s < w[l - 1]; ++s) take(3);
            break;
    }
    return slices;
}

ParamVector flatten_params(const NetworkSpec& spec,
                           const std::vector<std::vector<double>>& slices) {
    ParamVector theta;
    for (const auto& s : slices) theta.insert(theta.end(), s.begin(), s.end());
    require(static_cast<int>(theta.size()) == param_count(spec),
            "flattened length does not match spec");
    return theta;
}

double sqp_activation(double x) { return 0.5 * (1.0 + x / std::sqrt(1.0 + x * x)); }

double sqp_theta(double a) {
    const double f = sqp_activation(a);
    return 2.0 * std::atan2(std::sqrt(f), std::sqrt(1.0 - f));
}

namespace {
// Target-qubit block for control bit-string with activation a.
inline void sqp_block(double a, SqpSign sign, double& m00, double& m01, double& m10,
                      double& m11) {
    const double f = sqp_activation(a);
    const double c = std::sqrt(1.0 - f);
    const double s = std::sqrt(f);
    m00 = c;
    m01 = s;
    if (sign == SqpSign::PLUS) {
        m10 = s;
        m11 = -c;
    } else {
        m10 = -s;
        m11 = c;
    }
}

// Activation of each control bit-string, indexed by the string read as an
// integer with controls[0] as the most significant bit.
std::vector<double> sqp_activations(const SqpEdgeParams& p, int n_in) {
    const std::int64_t patterns = std::int64_t{1} << n_in;
    std::vector<double> a(patterns);
    for (std::int64_t x = 0; x < patterns; ++x) {
        double acc = -p.bias;
        for (int j = 0; j < n_in; ++j) {
            if ((x >> (n_in - 1 - j)) & 1) acc += p.weights[j];
        }
        a[x] = acc;
    }
    return a;
}
}  // namespace

UnitaryMatrix build_sqp_unitary(const SqpEdgeParams& params, int n_in, SqpSign sign) {
    require(static_cast<int>(params.weights.size()) == n_in,
            "weight count does not match input width");
    require(n_in >= 1, "perceptron needs at least one input qubit");
    const std::int64_t dim = std::int64_t{1} << (n_in + 1);
    Mat u = Mat::Zero(dim, dim);
    const auto acts = sqp_activations(params, n_in);
    for (std::int64_t x = 0; x < (dim >> 1); ++x) {
        double m00, m01, m10, m11;
        sqp_block(acts[x], sign, m00, m01, m10, m11);
        u(2 * x, 2 * x) = m00;
        u(2 * x, 2 * x + 1) = m01;
        u(2 * x + 1, 2 * x) = m10;
        u(2 * x + 1, 2 * x + 1) = m11;
    }
    return UnitaryMatrix(std::move(u));
}

void apply_sqp_inplace(Vec& amps, int n_qubits, const std::vector<int>& controls,
                       int target, const SqpEdgeParams& params, SqpSign sign) {
    const int k = static_cast<int>(controls.size());
    const auto acts = sqp_activations(params, k);
    const std::int64_t patterns = std::int64_t{1} << k;
    std::vector<double> m00(patterns), m01(patterns), m10(patterns), m11(patterns);
    for (std::int64_t x = 0; x < patterns; ++x) {
        sqp_block(acts[x], sign, m00[x], m01[x], m10[x], m11[x]);
    }
    std::vector<int> cpos(k);
    for (int j = 0; j < k; ++j) cpos[j] = n_qubits - 1 - controls[j];
    const std::uint64_t tmask = std::uint64_t{1} << (n_qubits - 1 - target);
    const std::int64_t dim = amps.size();
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto ui = static_cast<std::uint64_t>(i);
        if (ui & tmask) continue;
        std::int64_t x = 0;
        for (int j = 0; j < k; ++j) x = (x << 1) | static_cast<std::int64_t>((ui >> cpos[j]) & 1);
        const cxd a0 = amps[i];
        const cxd a1 = amps[i | tmask];
        amps[i] = m00[x] * a0 + m01[x] * a1;
        amps[i | tmask] = m10[x] * a0 + m11[x] * a1;
    }
}

UnitaryMatrix build_canonical_unitary(const CanonicalParams& params) {
    // XX, YY and ZZ commute, so the exponential splits into three factors
    // exp(-i a P(x)P) = cos(a) I - i sin(a) P(x)P with a = theta/2.
    Eigen::Matrix4cd xx = Eigen::Matrix4cd::Zero();
    xx(0, 3) = xx(1, 2) = xx(2, 1) = xx(3, 0) = 1;
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = yy(3, 0) = -1;
    yy(1, 2) = yy(2, 1) = 1;
    Eigen::Matrix4cd zz = Eigen::Matrix4cd::Identity();
    zz(1, 1) = zz(2, 2) = -1;

    const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
    const cxd mi(0.0, -1.0);
    auto factor = [&](double theta, const Eigen::Matrix4cd& pp) -> Eigen::Matrix4cd {
        const double a = theta / 2.0;
        return std::cos(a) * id + mi * std::sin(a) * pp;
    };
    Mat u = factor(params.theta_x, xx) * factor(params.theta_y, yy) *
            factor(params.theta_z, zz);
    return UnitaryMatrix(std::move(u));
}

std::vector<Gate> build_hea_layer(std::span<const double> angles, int n,
                                  Entangler entangler) {
    require(static_cast<int>(angles.size()) == n,
            "angle count does not match qubit count");
    std::vector<Gate> gates;
    for (int q = 0; q < n; ++q) {
        gates.push_back({UnitaryMatrix(Mat(ry(angles[q]))), QubitSubset{q}});
    }
    const Mat ent = entangler == Entangler::CNOT ? Mat(cnot()) : Mat(cz());
    for (int c = 0; c < n; ++c) {
        for (int t = c + 1; t < n; ++t) {
            gates.push_back({UnitaryMatrix(ent), QubitSubset{c, t}});
        }
    }
    return gates;
}

namespace {
// Diagonal phases of the entangling layer of the hard feature map.
std::vector<cxd> hard_map_phases(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    const std::int64_t dim = std::int64_t{1} << n;
    std::vector<cxd> diag(dim);
    for (std::int64_t z = 0; z < dim; ++z) {
        double phi = 0.0;
        for (int j = 0; j < n; ++j) {
            const double sj = ((z >> (n - 1 - j)) & 1) ? -1.0 : 1.0;
            phi += x[j] * sj;
        }
        for (int j = 0; j + 1 < n; ++j) {
            const double sj = ((z >> (n - 1 - j)) & 1) ? -1.0 : 1.0;
            const double sk = ((z >> (n - 2 - j)) & 1) ? -1.0 : 1.0;
            phi += (kPi - x[j]) * (kPi - x[j + 1]) * sj * sk;
        }
        diag[z] = std::polar(1.0, phi);
    }
    return diag;
}
}  // namespace

StateVector easy_feature_map(std::span<const double> x) {
    require(!x.empty(), "feature map needs at least one feature");
    const int n = static_cast<int>(x.size());
    StateVector s = StateVector::zero(n);
    for (int q = 0; q < n; ++q) {
        apply_1q_inplace(s.amplitudes, n, ry(x[q]), q);
    }
    return s;
}

StateVector hard_feature_map(std::span<const double> x) {
    require(!x.empty(), "feature map needs at least one feature");
    const int n = static_cast<int>(x.size());
    StateVector s = StateVector::zero(n);
    const auto diag = hard_map_phases(x);
    const auto h = hadamard();
    for (int rep = 0; rep < 2; ++rep) {
        for (int q = 0; q < n; ++q) apply_1q_inplace(s.amplitudes, n, h, q);
        for (std::int64_t z = 0; z < s.dim(); ++z) s.amplitudes[z] *= diag[z];
    }
    return s;
}

UnitaryMatrix feature_map_unitary(FeatureMap map, std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    const std::int64_t dim = std::int64_t{1} << n;
    Mat u = Mat::Identity(dim, dim);
    if (map == FeatureMap::NONE) return UnitaryMatrix(std::move(u));
    if (map == FeatureMap::EASY) {
        Vec col(dim);
        for (std::int64_t c = 0; c < dim; ++c) {
            col = u.col(c);
            for (int q = 0; q < n; ++q) apply_1q_inplace(col, n, ry(x[q]), q);
            u.col(c) = col;
        }
        return UnitaryMatrix(std::move(u));
    }
    const auto diag = hard_map_phases(x);
    Vec col(dim);
    for (std::int64_t c = 0; c < dim; ++c) {
        col = u.col(c);
        for (int rep = 0; rep < 2; ++rep) {
            for (int q = 0; q < n; ++q) apply_1q_inplace(col, n, hadamard(), q);
            for (std::int64_t z = 0; z < dim; ++z) col[z] *= diag[z];
        }
        u.col(c) = col;
    }
    return UnitaryMatrix(std::move(u));
}

StateVector feature_map_state(FeatureMap map, std::span<const double> x) {
    switch (map) {
        case FeatureMap::EASY:
            return easy_feature_map(x);
        case FeatureMap::HARD:
            return hard_feature_map(x);
        case FeatureMap::NONE:
            throw std::invalid_argument(
                "classical input requires a feature map (EASY or HARD)");
    }
    throw std::invalid_argument("unknown feature map");
}

// --- evaluator ---

NetworkEvaluator::NetworkEvaluator(NetworkSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    const auto& w = spec_.layer_widths;
    if (spec_.family == Family::HEA) {
        final_qubits_ = w[0];
        return;
    }
    int offset_prev = 0;
    int param_offset = 0;
    for (std::size_t l = 1; l < w.size(); ++l) {
        Transition tr;
        tr.new_width = w[l];
        const int offset_new = offset_prev + w[l - 1];
        std::vector<int> sources(w[l - 1]);
        std::iota(sources.begin(), sources.end(), offset_prev);
        if (spec_.family == Family::SQP) {
            for (int t = 0; t < w[l]; ++t) {
                SqpGateRef g;
                g.controls = sources;
                g.target = offset_new + t;
                g.param_offset = param_offset;
                param_offset += w[l - 1] + 1;
                tr.sqp_gates.push_back(std::move(g));
            }
        } else {
            for (int t = 0; t < w[l]; ++t) {
                for (int s = 0; s < w[l - 1]; ++s) {
                    CanGateRef g;
                    g.q1 = offset_prev + s;
                    g.q2 = offset_new + t;
                    g.param_offset = param_offset;
                    param_offset += 3;
                    tr.can_gates.push_back(g);
                }
            }
        }
        transitions_.push_back(std::move(tr));
        offset_prev = offset_new;
    }
    final_qubits_ = offset_prev + w.back();
}

const Vec& NetworkEvaluator::run(const ParamVector& theta, const StateVector& input) {
    require(static_cast<int>(theta.size()) == param_count(spec_),
            "parameter vector length does not match spec");
    const auto& w = spec_.layer_widths;
    if (spec_.family == Family::HEA) {
        require(input.n_qubits == w[0], "input register size does not match spec");
        const int n = w[0];
        amps_ = input.amplitudes;
        int off = 0;
        for (int l = 0; l < w[1]; ++l) {
            for (int q = 0; q < n; ++q) {
                apply_1q_inplace(amps_, n, ry(theta[off + q]), q);
            }
            for (int c = 0; c < n; ++c) {
                for (int t = c + 1; t < n; ++t) {
                    if (spec_.entangler == Entangler::CNOT) {
                        apply_cnot_inplace(amps_, n, c, t);
                    } else {
                        apply_cz_inplace(amps_, n, c, t);
                    }
                }
            }
            off += n;
        }
        return amps_;
    }

    require(input.n_qubits == w[0], "input layer size does not match spec");
    amps_ = input.amplitudes;
    int n = w[0];
    for (const auto& tr : transitions_) {
        // Append the next layer's fresh |0> qubits.
        Vec grown = Vec::Zero(amps_.size() << tr.new_width);
        for (std::int64_t i = 0; i < amps_.size(); ++i) {
            grown[i << tr.new_width] = amps_[i];
        }
        amps_.swap(grown);
        n += tr.new_width;
        for (const auto& g : tr.sqp_gates) {
            SqpEdgeParams p;
            p.weights.assign(theta.begin() + g.param_offset,
                             theta.begin() + g.param_offset + g.controls.size());
            p.bias = theta[g.param_offset + g.controls.size()];
            apply_sqp_inplace(amps_, n, g.controls, g.target, p, spec_.sign_variant);
        }
        for (const auto& g : tr.can_gates) {
            const CanonicalParams p{theta[g.param_offset], theta[g.param_offset + 1],
                                    theta[g.param_offset + 2]};
            apply_gate_inplace(amps_, n, build_canonical_unitary(p).entries,
                               {g.q1, g.q2});
        }
    }
    return amps_;
}

ModelOutput NetworkEvaluator::read_probs(const Vec& amps) const {
    const int k = spec_.n_out();
    const std::int64_t block = std::int64_t{1} << k;
    std::vector<double> marginal(block, 0.0);
    for (std::int64_t i = 0; i < amps.size(); ++i) {
        marginal[i & (block - 1)] += std::norm(amps[i]);
    }
    if (spec_.readout == ReadoutMode::DISTRIBUTION) return marginal;
    ModelOutput out;
    for (const int q : spec_.probe_qubits()) {
        double p1 = 0.0;
        const std::int64_t qmask = std::int64_t{1} << (k - 1 - q);
        for (std::int64_t b = 0; b < block; ++b) {
            if (b & qmask) p1 += marginal[b];
        }
        out.push_back(p1);
    }
    return out;
}

ModelOutput NetworkEvaluator::output_probs(const ParamVector& theta,
                                           std::span<const double> x) {
    require(static_cast<int>(x.size()) == spec_.n_in(),
            "feature count does not match input layer width");
    return read_probs(run(theta, feature_map_state(spec_.feature_map, x)));
}

ModelOutput NetworkEvaluator::output_probs(const ParamVector& theta,
                                           const StateVector& input) {
    return read_probs(run(theta, input));
}

double NetworkEvaluator::fidelity(const ParamVector& theta, const StateVector& input,
                                  const StateVector& target) {
    require(target.n_qubits == spec_.n_out(),
            "target state size does not match the output layer");
    const Vec& amps = run(theta, input);
    const std::int64_t block = std::int64_t{1} << target.n_qubits;
    const std::int64_t env = amps.size() / block;
    double fid = 0.0;
    for (std::int64_t e = 0; e < env; ++e) {
        cxd inner(0.0, 0.0);
        const std::int64_t base = e * block;
        for (std::int64_t b = 0; b < block; ++b) {
            inner += std::conj(target.amplitudes[b]) * amps[base + b];
        }
        fid += std::norm(inner);
    }
    return fid;
}

// --- channel-composed forward (contract path) ---

namespace {
DensityMatrix forward_dissipative(const NetworkSpec& spec, const ParamVector& theta,
                                  DensityMatrix rho) {
    const auto& w = spec.layer_widths;
    int param_offset = 0;
    for (std::size_t l = 1; l < w.size(); ++l) {
        const int prev = w[l - 1];
        rho = extend_with_zeros(rho, w[l]);
        std::vector<int> sources(prev);
        std::iota(sources.begin(), sources.end(), 0);
        if (spec.family == Family::SQP) {
            for (int t = 0; t < w[l]; ++t) {
                SqpEdgeParams p;
                p.weights.assign(theta.begin() + param_offset,
                                 theta.begin() + param_offset + prev);
                p.bias = theta[param_offset + prev];
                param_offset += prev + 1;
                QubitSubset targets(sources);
                targets.indices.push_back(prev + t);
                rho = apply_unitary(rho, build_sqp_unitary(p, prev, spec.sign_variant),
                                    targets);
            }
        } else {
            for (int t = 0; t < w[l]; ++t) {
                for (int s = 0; s < prev; ++s) {
                    const CanonicalParams p{theta[param_offset], theta[param_offset + 1],
                                            theta[param_offset + 2]};
                    param_offset += 3;
                    rho = apply_unitary(rho, build_canonical_unitary(p),
                                        QubitSubset{s, prev + t});
                }
            }
        }
        rho = partial_trace(rho, QubitSubset(sources));
    }
    return rho;
}
}  // namespace

DensityMatrix forward(const NetworkSpec& spec, const ParamVector& theta,
                      const DensityMatrix& input) {
    spec.validate();
    require(static_cast<int>(theta.size()) == param_count(spec),
            "parameter vector length does not match spec");
    const auto& w = spec.layer_widths;
    if (spec.family == Family::HEA) {
        require(input.n_qubits == w[0], "input register size does not match spec");
        DensityMatrix rho = input;
        int off = 0;
        for (int l = 0; l < w[1]; ++l) {
            for (const auto& g : build_hea_layer(
                     std::span<const double>(theta.data() + off, w[0]), w[0],
                     spec.entangler)) {
                rho = apply_unitary(rho, g.u, g.targets);
            }
            off += w[0];
        }
        return rho;
    }
    require(input.n_qubits == w[0], "input layer size does not match spec");
    return forward_dissipative(spec, theta, input);
}

DensityMatrix forward(const NetworkSpec& spec, const ParamVector& theta,
                      const StateVector& input) {
    return forward(spec, theta, DensityMatrix::from_pure(input));
}

DensityMatrix forward(const NetworkSpec& spec, const ParamVector& theta,
                      std::span<const double> x) {
    require(static_cast<int>(x.size()) == spec.n_in(),
            "feature count does not match input layer width");
    return forward(spec, theta, feature_map_state(spec.feature_map, x));
}

ModelOutput model_output(const NetworkSpec& spec, const ParamVector& theta,
                         std::span<const double> x) {
    NetworkEvaluator eval(spec);
    return eval.output_probs(theta, x);
}

}  // namespace sqpnet
