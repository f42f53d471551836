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
#include <string>
#include <vector>

#include "sqpnet/networks.hpp"
#include "sqpnet/training.hpp"

namespace sqpnet {

// Uniformly random features in [0, pi] with uniformly random one-hot labels;
// everything lands in the training split.
ClassicalDataset gen_random_dataset(int n_samples, int n_features, int n_classes,
                                    std::uint64_t seed);

struct IrisData {
    ClassicalDataset dataset;  // features min-max scaled to [0, pi] on the
                               // training split; labels one-hot by sorted name
    int raw_rows = 0;
    std::vector<std::string> class_names;
};

// Reads a CSV with four numeric columns and a class label (optional header),
// shuffles with the given seed and splits n_train / rest. Malformed rows are
// collected and reported in the error; exactly three classes are expected.
IrisData load_iris(const std::string& path, int n_train, std::uint64_t seed);

// QR-orthonormalized complex Ginibre matrix with the phase correction that
// makes the distribution Haar.
UnitaryMatrix gen_haar_unitary(int n_qubits, std::uint64_t seed);

struct IsingParams {
    std::vector<double> couplings;  // J_j on bond (j, j+1 mod N), periodic
    std::vector<double> fields;     // h_j
    int n_qubits = 0;

    void validate() const;
};

IsingParams sample_ising_params(int n_qubits, std::uint64_t seed);  // J, h ~ U[-1, 1]

// exp(-i H) with H = sum_j (J_j Z_j Z_{j+1} + h_j X_j). The terms do not
// commute, so this is a true matrix exponential (Hermitian eigendecomposition).
UnitaryMatrix gen_ising_unitary(const IsingParams& params);

// Haar-random pure input states with targets |y(x)> = U_T |x>; the first
// n_train pairs form the training split, the next n_val the validation split.
QuantumDataset make_quantum_training_set(const UnitaryMatrix& u_target, int n_train,
                                         int n_val, std::uint64_t seed);

// --- adiabatic-ramp realization of the perceptron gate ---

enum class RampShape { LINEAR, SMOOTHSTEP };

struct RampSchedule {
    double omega_initial = 0.0;  // Omega(0); Omega(T) = 1 always
    double total_time = 0.0;     // T
    double dt = 0.0;             // integration step, <= T/1000
    RampShape shape = RampShape::SMOOTHSTEP;

    double omega_at(double t) const;
    void validate(const SqpEdgeParams& params) const;

    // Omega(0) = 100 * max(1, |b| + sum |w|) and dt small enough to hold the
    // integrator's norm drift below 1e-8.
    static RampSchedule for_params(const SqpEdgeParams& params, double total_time,
                                   RampShape shape = RampShape::SMOOTHSTEP);
};

// Time evolution of the (n_in+1)-qubit register under the ramped Ising-type
// Hamiltonian realizing the perceptron gate: a Hadamard on the target,
// followed by RK4 integration of
//   H(t) = -Omega(t) X_target + A (x) Z_target
// where A is diagonal on the input register with <z|A|z> = a_z = sum w_j z_j - b
// (couplings chosen so the conditional field on the target equals the gate's
// activation for input bits z). In the slow-ramp limit the result matches
// build_sqp_unitary applied to the same input, block by block up to phase.
// Throws if the integrator's norm drift exceeds 1e-6.
StateVector adiabatic_ramp_evolve(const SqpEdgeParams& params,
                                  const RampSchedule& schedule,
                                  const StateVector& input);

// Instantaneous eigenstate pair of the target block for input bit-string z at
// field strength omega:
//   |phi+> = |z> (x) [ sqrt(f(-a_z/omega)) |0> + sqrt(f(a_z/omega)) |1> ]
//   |phi-> = |z> (x) [ sqrt(f( a_z/omega)) |0> - sqrt(f(-a_z/omega)) |1> ]
// (ground / excited branch of -omega X + a_z Z).
std::pair<StateVector, StateVector> instantaneous_eigenstates(
    const SqpEdgeParams& params, std::uint64_t z_bits, double omega);

}  // namespace sqpnet
