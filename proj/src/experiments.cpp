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

#include "sqpnet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "sqpnet/gates.hpp"
#include "sqpnet/rng.hpp"

namespace sqpnet {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ClassicalDataset gen_random_dataset(int n_samples, int n_features, int n_classes,
                                    std::uint64_t seed) {
    if (n_samples < 1 || n_features < 1 || n_classes < 1) {
        throw std::invalid_argument("dataset sizes must be positive");
    }
    Rng rng = stream(seed, "random-dataset");
    ClassicalDataset ds;
    ds.inputs.resize(n_samples);
    ds.labels.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        ds.inputs[i].resize(n_features);
        for (auto& v : ds.inputs[i]) v = rng.uniform(0.0, kPi);
        ds.labels[i].assign(n_classes, 0.0);
        ds.labels[i][rng.uniform_int(static_cast<std::uint64_t>(n_classes))] = 1.0;
    }
    ds.train_idx.resize(n_samples);
    std::iota(ds.train_idx.begin(), ds.train_idx.end(), 0);
    return ds;
}

IrisData load_iris(const std::string& path, int n_train, std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);

    std::vector<std::vector<double>> features;
    std::vector<std::string> labels;
    std::vector<int> bad_lines;
    std::string line;
    int line_no = 0;
    int raw_rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // strip trailing CR from Windows-style files
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (line_no == 1) {
            // optional header: first cell not numeric
            char* end = nullptr;
            std::strtod(cells.empty() ? "" : cells[0].c_str(), &end);
            if (cells.empty() || end == cells[0].c_str()) continue;
        }
        ++raw_rows;
        if (cells.size() != 5) {
            bad_lines.push_back(line_no);
            continue;
        }
        std::vector<double> row(4);
        bool ok = true;
        for (int k = 0; k < 4; ++k) {
            try {
                std::size_t pos = 0;
                row[k] = std::stod(cells[k], &pos);
                if (pos != cells[k].size()) ok = false;
            } catch (...) {
                ok = false;
            }
        }
        if (!ok) {
            bad_lines.push_back(line_no);
            continue;
        }
        features.push_back(std::move(row));
        labels.push_back(cells[4]);
    }
    if (!bad_lines.empty()) {
        std::string msg = std::to_string(bad_lines.size()) + " malformed row(s) in " +
                          path + " (first at line " + std::to_string(bad_lines.front()) +
                          ")";
        throw std::runtime_error(msg);
    }
    if (static_cast<int>(features.size()) <= n_train) {
        throw std::runtime_error("dataset too small for the requested training split");
    }

    std::map<std::string, int> class_ids;  // sorted by name
    for (const auto& l : labels) class_ids.emplace(l, 0);
    if (class_ids.size() != 3) {
        throw std::runtime_error("expected 3 classes, found " +
                                 std::to_string(class_ids.size()));
    }
    int next_id = 0;
    for (auto& [name, id] : class_ids) id = next_id++;

    IrisData data;
    data.raw_rows = raw_rows;
    for (const auto& [name, id] : class_ids) data.class_names.push_back(name);

    ClassicalDataset& ds = data.dataset;
    const int n = static_cast<int>(features.size());
    ds.inputs = std::move(features);
    ds.labels.resize(n);
    for (int i = 0; i < n; ++i) {
        ds.labels[i].assign(3, 0.0);
        ds.labels[i][class_ids.at(labels[i])] = 1.0;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng = stream(seed, "iris-split");
    rng.shuffle(order);
    ds.train_idx.assign(order.begin(), order.begin() + n_train);
    ds.val_idx.assign(order.begin() + n_train, order.end());

    // Min-max scale each feature to [0, pi] using training-split statistics;
    // validation rows use the same affine map (and may fall slightly outside).
    for (int k = 0; k < 4; ++k) {
        double lo = ds.inputs[ds.train_idx[0]][k];
        double hi = lo;
        for (const int i : ds.train_idx) {
            lo = std::min(lo, ds.inputs[i][k]);
            hi = std::max(hi, ds.inputs[i][k]);
        }
        const double span = hi > lo ? hi - lo : 1.0;
        for (auto& row : ds.inputs) row[k] = (row[k] - lo) / span * kPi;
    }
    return data;
}

UnitaryMatrix gen_haar_unitary(int n_qubits, std::uint64_t seed) {
    if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
    const std::int64_t d = std::int64_t{1} << n_qubits;
    Rng rng = stream(seed, "haar-unitary");
    Mat g(d, d);
    for (std::int64_t i = 0; i < d; ++i) {
        for (std::int64_t j = 0; j < d; ++j) {
            g(i, j) = cxd(rng.normal(), rng.normal());
        }
    }
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity of QR so that the result is Haar-distributed.
    for (std::int64_t j = 0; j < d; ++j) {
        const cxd rj = r(j, j);
        q.col(j) *= rj / std::abs(rj);
    }
    return UnitaryMatrix(std::move(q));
}

void IsingParams::validate() const {
    if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
    if (static_cast<int>(couplings.size()) != n_qubits ||
        static_cast<int>(fields.size()) != n_qubits) {
        throw std::invalid_argument("couplings and fields must both have length N");
    }
}

IsingParams sample_ising_params(int n_qubits, std::uint64_t seed) {
    Rng rng = stream(seed, "ising-params");
    IsingParams p;
    p.n_qubits = n_qubits;
    p.couplings.resize(n_qubits);
    p.fields.resize(n_qubits);
    for (auto& j : p.couplings) j = rng.uniform(-1.0, 1.0);
    for (auto& h : p.fields) h = rng.uniform(-1.0, 1.0);
    return p;
}

UnitaryMatrix gen_ising_unitary(const IsingParams& params) {
    params.validate();
    const int n = params.n_qubits;
    const std::int64_t d = std::int64_t{1} << n;
    Mat h = Mat::Zero(d, d);
    for (std::int64_t z = 0; z < d; ++z) {
        // diagonal part: sum_j J_j zeta_j zeta_{j+1} (periodic boundary)
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            const double zj = bit_of(z, j, n) ? -1.0 : 1.0;
            const double zk = bit_of(z, (j + 1) % n, n) ? -1.0 : 1.0;
            diag += params.couplings[j] * zj * zk;
        }
        h(z, z) += diag;
        // off-diagonal part: sum_j h_j X_j flips one bit
        for (int j = 0; j < n; ++j) {
            const std::int64_t flipped = z ^ (std::int64_t{1} << (n - 1 - j));
            h(flipped, z) += params.fields[j];
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Vec phases(d);
    for (std::int64_t i = 0; i < d; ++i) {
        phases[i] = std::polar(1.0, -es.eigenvalues()[i]);
    }
    Mat u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return UnitaryMatrix(std::move(u));
}

QuantumDataset make_quantum_training_set(const UnitaryMatrix& u_target, int n_train,
                                         int n_val, std::uint64_t seed) {
    if (n_train < 1 || n_val < 0) throw std::invalid_argument("bad pair counts");
    const int n_qubits = u_target.n_qubits();
    QuantumDataset ds;
    const int total = n_train + n_val;
    Rng rng = stream(seed, "quantum-pairs");
    for (int i = 0; i < total; ++i) {
        StateVector x;
        x.n_qubits = n_qubits;
        x.amplitudes = Vec(u_target.dimension);
        for (std::int64_t k = 0; k < u_target.dimension; ++k) {
            x.amplitudes[k] = cxd(rng.normal(), rng.normal());
        }
        x.amplitudes /= x.amplitudes.norm();
        StateVector y;
        y.n_qubits = n_qubits;
        y.amplitudes = u_target.entries * x.amplitudes;
        ds.pairs.emplace_back(std::move(x), std::move(y));
    }
    ds.train_idx.resize(n_train);
    std::iota(ds.train_idx.begin(), ds.train_idx.end(), 0);
    ds.val_idx.resize(n_val);
    std::iota(ds.val_idx.begin(), ds.val_idx.end(), n_train);
    return ds;
}

// --- adiabatic ramp ---

double RampSchedule::omega_at(double t) const {
    const double s = std::clamp(t / total_time, 0.0, 1.0);
    double ramp = s;
    if (shape == RampShape::SMOOTHSTEP) ramp = s * s * (3.0 - 2.0 * s);
    return omega_initial + (1.0 - omega_initial) * ramp;
}

void RampSchedule::validate(const SqpEdgeParams& params) const {
    double scale = std::abs(params.bias);
    double wsum = 0.0;
    for (const double w : params.weights) wsum += std::abs(w);
    scale = std::max(scale, wsum);
    if (!(omega_initial > 10.0 * std::max(1.0, scale))) {
        throw std::invalid_argument("omega_initial must dominate the gate parameters");
    }
    if (!(total_time > 0.0)) throw std::invalid_argument("total_time must be positive");
    if (!(dt > 0.0) || dt > total_time / 1000.0) {
        throw std::invalid_argument("dt must be positive and at most T/1000");
    }
}

RampSchedule RampSchedule::for_params(const SqpEdgeParams& params, double total_time,
                                      RampShape shape) {
    double scale = std::abs(params.bias);
    for (const double w : params.weights) scale += std::abs(w);
    RampSchedule s;
    s.omega_initial = 100.0 * std::max(1.0, scale);
    s.total_time = total_time;
    // RK4 norm drift per step scales as (E dt)^6; E dt = 0.01 keeps the total
    // well below 1e-8 for the time spans used here.
    s.dt = std::min(total_time / 1000.0, 0.01 / (s.omega_initial + scale));
    s.shape = shape;
    return s;
}

namespace {
// H(t) psi with H(t) = -Omega(t) X_target + diag(a_z) (x) Z_target.
// activations holds a_z indexed by the input bit-string; the target qubit is
// the least significant index bit.
void apply_hamiltonian(const Vec& psi, double omega, const std::vector<double>& acts,
                       Vec& out) {
    const std::int64_t dim = psi.size();
    for (std::int64_t i = 0; i < dim; ++i) {
        const std::int64_t z = i >> 1;
        const double zsign = (i & 1) ? -1.0 : 1.0;
        out[i] = acts[z] * zsign * psi[i] - omega * psi[i ^ 1];
    }
}
}  // namespace

StateVector adiabatic_ramp_evolve(const SqpEdgeParams& params,
                                  const RampSchedule& schedule,
                                  const StateVector& input) {
    const int n_in = static_cast<int>(params.weights.size());
    if (input.n_qubits != n_in + 1) {
        throw std::invalid_argument("input must have n_in + 1 qubits");
    }
    schedule.validate(params);

    StateVector state = input;
    apply_1q_inplace(state.amplitudes, state.n_qubits, hadamard(), n_in);

    // a_z per input bit-string (z read with qubit 0 as MSB).
    const std::int64_t patterns = std::int64_t{1} << n_in;
    std::vector<double> acts(patterns);
    for (std::int64_t z = 0; z < patterns; ++z) {
        double a = -params.bias;
        for (int j = 0; j < n_in; ++j) {
            if ((z >> (n_in - 1 - j)) & 1) a += params.weights[j];
        }
        acts[z] = a;
    }

    const std::int64_t dim = state.dim();
    Vec k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    const cxd mi(0.0, -1.0);
    const double dt = schedule.dt;
    const long steps = static_cast<long>(std::ceil(schedule.total_time / dt));
    double t = 0.0;
    for (long s = 0; s < steps; ++s) {
        const double h = std::min(dt, schedule.total_time - t);
        const double om1 = schedule.omega_at(t);
        const double om2 = schedule.omega_at(t + 0.5 * h);
        const double om3 = schedule.omega_at(t + h);
        // k = -i H psi at the four RK4 stages
        apply_hamiltonian(state.amplitudes, om1, acts, tmp);
        k1 = mi * tmp;
        apply_hamiltonian(Vec(state.amplitudes + 0.5 * h * k1), om2, acts, tmp);
        k2 = mi * tmp;
        apply_hamiltonian(Vec(state.amplitudes + 0.5 * h * k2), om2, acts, tmp);
        k3 = mi * tmp;
        apply_hamiltonian(Vec(state.amplitudes + h * k3), om3, acts, tmp);
        k4 = mi * tmp;
        state.amplitudes += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }

    const double drift = std::abs(state.norm() - 1.0);
    if (drift > 1e-6) {
        throw std::runtime_error("integrator norm drift " + std::to_string(drift) +
                                 " exceeds 1e-6; decrease dt");
    }
    return state;
}

std::pair<StateVector, StateVector> instantaneous_eigenstates(
    const SqpEdgeParams& params, std::uint64_t z_bits, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    const int n_in = static_cast<int>(params.weights.size());
    double a = -params.bias;
    for (int j = 0; j < n_in; ++j) {
        if ((z_bits >> (n_in - 1 - j)) & 1) a += params.weights[j];
    }
    const double u = a / omega;
    const double f_plus = sqp_activation(u);
    const double f_minus = sqp_activation(-u);

    StateVector ground = StateVector::basis(n_in + 1, z_bits << 1);
    StateVector excited = ground;
    const std::int64_t base = static_cast<std::int64_t>(z_bits) << 1;
    ground.amplitudes[base] = std::sqrt(f_minus);
    ground.amplitudes[base + 1] = std::sqrt(f_plus);
    excited.amplitudes[base] = std::sqrt(f_plus);
    excited.amplitudes[base + 1] = -std::sqrt(f_minus);
    return {ground, excited};
}

}  // namespace sqpnet
