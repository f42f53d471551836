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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace sqpnet {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Basis-index convention, used consistently everywhere in this project:
// qubit 0 is the MOST significant bit of the basis index. For an n-qubit
// register, basis state |q0 q1 ... q_{n-1}> has index
//     i = q0 * 2^{n-1} + q1 * 2^{n-2} + ... + q_{n-1}.
// Appending k fresh qubits in |0...0> therefore maps index i to i << k.
inline int bit_of(std::uint64_t index, int qubit, int n_qubits) {
    return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1ull);
}

// An ordered set of distinct qubit positions. The order fixes how a gate's
// own index bits map onto register qubits: indices[0] is the gate's most
// significant qubit.
struct QubitSubset {
    std::vector<int> indices;

    QubitSubset() = default;
    QubitSubset(std::initializer_list<int> qs) : indices(qs) {}
    explicit QubitSubset(std::vector<int> qs) : indices(std::move(qs)) {}

    int size() const { return static_cast<int>(indices.size()); }
    // Throws std::invalid_argument on out-of-range or duplicate entries.
    void validate(int n_qubits) const;
};

// Pure state over 2^n_qubits complex amplitudes.
struct StateVector {
    int n_qubits = 0;
    Vec amplitudes;

    static StateVector zero(int n_qubits);                       // |0...0>
    static StateVector basis(int n_qubits, std::uint64_t bits);  // |bits>

    std::int64_t dim() const { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }
};

struct DensityMatrix {
    int n_qubits = 0;
    Mat entries;

    static DensityMatrix zero_state(int n_qubits);  // |0...0><0...0|
    static DensityMatrix from_pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(int n_qubits);

    std::int64_t dim() const { return entries.rows(); }
    double trace_real() const { return entries.trace().real(); }

    // Hermiticity / trace-one / eigenvalue-floor checks used by tests and
    // by channel-composition code. Throws std::runtime_error on violation.
    void check_valid(double herm_tol = 1e-10, double trace_tol = 1e-10,
                     double eig_floor = -1e-8) const;
};

// Square complex matrix of power-of-two dimension acting on log2(dim) qubits.
struct UnitaryMatrix {
    std::int64_t dimension = 0;
    Mat entries;

    UnitaryMatrix() = default;
    explicit UnitaryMatrix(Mat m);

    int n_qubits() const;
    // Max-entry norm of U^dag U - I.
    double unitarity_defect() const;
};

// --- core operations (all pure: inputs are untouched) ---

// (I (x) u (x) I) |psi> with u placed on the given target qubits.
StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          const QubitSubset& targets);

// U rho U^dag with U = (I (x) u (x) I).
DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryMatrix& u,
                            const QubitSubset& targets);

// rho (x) |0...0><0...0| on n+k qubits (fresh qubits appended at the end,
// i.e. as new least significant index bits).
DensityMatrix extend_with_zeros(const DensityMatrix& rho, int k);

// |psi> (x) |0...0>, same placement as the density-matrix version.
StateVector extend_with_zeros(const StateVector& psi, int k);

// Reduced density matrix after discarding the given qubits. Remaining qubits
// keep their relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& discard);

// Tr[rho (I (x) O (x) I)] for a Hermitian observable O on the target qubits.
// Throws if O is not Hermitian within 1e-10; asserts the trace is real
// within 1e-10 and returns its real part.
double expectation(const DensityMatrix& rho, const Mat& observable,
                   const QubitSubset& targets);

// <y| rho |y> for a pure target state. Result clamped to [0, 1] after an
// internal 1e-10 slack check.
double fidelity_pure(const StateVector& target, const DensityMatrix& rho);

// --- in-place kernels shared by the operations above and by the network
//     evaluators; amps has length 2^n_qubits ---

// General k-qubit gate by index arithmetic (gather/scatter per group).
void apply_gate_inplace(Vec& amps, int n_qubits, const Mat& u,
                        const std::vector<int>& targets);
void apply_1q_inplace(Vec& amps, int n_qubits, const Eigen::Matrix2cd& u, int qubit);
void apply_cnot_inplace(Vec& amps, int n_qubits, int control, int target);
void apply_cz_inplace(Vec& amps, int n_qubits, int a, int b);

}  // namespace sqpnet
