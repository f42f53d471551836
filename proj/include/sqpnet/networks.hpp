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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sqpnet/quantum.hpp"

namespace sqpnet {

// Three ansatz families:
//   SQP      - feedforward network of sigmoid quantum perceptrons. Each target
//              qubit in layer l carries one perceptron gate controlled on all
//              of layer l-1 (weights w_j, bias b). Fresh qubits per layer;
//              previous layers are traced out.
//   HANNOVER - same feedforward topology, but inter-layer couplings are
//              two-qubit canonical gates exp[-i/2 (tx XX + ty YY + tz ZZ)].
//   HEA      - hardware-efficient ansatz: a fixed register, layers of
//              single-qubit Ry rotations followed by entangling gates over all
//              qubit pairs.
enum class Family { SQP, HANNOVER, HEA };

enum class FeatureMap { EASY, HARD, NONE };

// CLASS_PROBE: one excitation probability P(qubit = 1) per readout target.
// DISTRIBUTION: all 2^{n_out} computational-basis probabilities of the output
// layer (sums to one).
enum class ReadoutMode { CLASS_PROBE, DISTRIBUTION };

// Sign variant of the perceptron block (PLUS is the default protocol form;
// MINUS is the effective gate of the measurement-feedback variant).
enum class SqpSign { PLUS, MINUS };

enum class Entangler { CNOT, CZ };

// Parameters of a single perceptron edge gate: one weight per input-layer
// qubit plus a bias. The activation for an input bit-string x (bits 0/1) is
// a_x = sum_j w_j x_j - b.
struct SqpEdgeParams {
    std::vector<double> weights;
    double bias = 0.0;
};

struct CanonicalParams {
    double theta_x = 0.0;
    double theta_y = 0.0;
    double theta_z = 0.0;
};

struct NetworkSpec {
    Family family = Family::HEA;
    // SQP/HANNOVER: [n_in, hidden widths..., n_out].
    // HEA: {n_qubits, n_layers}.
    std::vector<int> layer_widths;
    FeatureMap feature_map = FeatureMap::EASY;
    ReadoutMode readout = ReadoutMode::DISTRIBUTION;
    // CLASS_PROBE probe qubits, indices relative to the output layer
    // (for HEA the output layer is the whole register). Empty = all.
    std::vector<int> readout_targets;
    SqpSign sign_variant = SqpSign::PLUS;
    Entangler entangler = Entangler::CNOT;

    int n_in() const;        // input-layer width (HEA: register size)
    int n_out() const;       // output-layer width (HEA: register size)
    int total_qubits() const;
    std::vector<int> probe_qubits() const;  // materialized readout targets

    void validate() const;  // throws std::invalid_argument
    std::string id() const; // e.g. "SQP-4-4-3", "HEA-4q-32l"
};

// Flat parameter vector layout, layer-major, then gate-major, then
// parameter-within-gate:
//   SQP      - per layer transition l (1..L), per target qubit t in layer l
//              (ascending): w_1..w_{width(l-1)}, b.
//   HANNOVER - per transition, per target t (ascending), per source s
//              (ascending): theta_x, theta_y, theta_z.
//   HEA      - per layer, per qubit (ascending): the Ry angle.
using ParamVector = std::vector<double>;

int param_count(const NetworkSpec& spec);

// Per-entry sampling/initialization bounds: [0, 2pi) for rotation angles,
// [-5, 5] for perceptron weights and biases.
std::vector<std::pair<double, double>> param_bounds(const NetworkSpec& spec);

// Structured view of a flat parameter vector (one slice per gate, in layout
// order). unflatten followed by flatten is the identity.
std::vector<std::vector<double>> unflatten_params(const NetworkSpec& spec,
                                                  const ParamVector& theta);
ParamVector flatten_params(const NetworkSpec& spec,
                           const std::vector<std::vector<double>>& slices);

// --- gate-level builders ---

// Sigmoid activation f(x) = (1 + x / sqrt(1 + x^2)) / 2, with values in (0,1).
double sqp_activation(double x);

// Angle theta in (0, pi) with sin(theta/2) = sqrt(f(a)), cos(theta/2) = sqrt(1 - f(a)).
double sqp_theta(double a);

// Block-diagonal (n_in+1)-qubit perceptron unitary: for each control
// bit-string x the target block is
//   V+(x) = [[sqrt(1-f), sqrt(f)], [ sqrt(f), -sqrt(1-f)]]   (PLUS)
//   V-(x) = [[sqrt(1-f), sqrt(f)], [-sqrt(f),  sqrt(1-f)]]   (MINUS)
// with f = f(a_x). Controls occupy the gate's high index bits, the target its
// low bit.
UnitaryMatrix build_sqp_unitary(const SqpEdgeParams& params, int n_in, SqpSign sign);

// 4x4 canonical gate exp[-i/2 (tx XX + ty YY + tz ZZ)], assembled as the
// ordered product of the three commuting factors.
UnitaryMatrix build_canonical_unitary(const CanonicalParams& params);

struct Gate {
    UnitaryMatrix u;
    QubitSubset targets;
};

// One HEA layer on n qubits: Ry(angles[q]) on each qubit, then an entangler
// between each pair (c, t), c < t, in lexicographic order (control = c).
std::vector<Gate> build_hea_layer(std::span<const double> angles, int n,
                                  Entangler entangler = Entangler::CNOT);

// --- feature maps (features pre-scaled to [0, pi]) ---

// Angle encoding: Ry(x_j) on qubit j of |0...0>.
StateVector easy_feature_map(std::span<const double> x);

// Entangling phase encoding: two repetitions of [H on every qubit, then a
// diagonal phase layer exp(i sum phi_S(x) prod Z)] with single-qubit phases
// phi_j = x_j and pairwise phases phi_{jk} = (pi - x_j)(pi - x_k) on the
// linear chain (j, j+1).
StateVector hard_feature_map(std::span<const double> x);

// Full matrix of the feature-map circuit (for cross-checks).
UnitaryMatrix feature_map_unitary(FeatureMap map, std::span<const double> x);

StateVector feature_map_state(FeatureMap map, std::span<const double> x);

// --- forward passes ---

// Channel-composed forward pass (the contract path).
// HEA: pure unitary evolution of the register; the result is |psi><psi|.
// SQP/HANNOVER: per layer transition, extend with fresh |0> qubits, apply the
// inter-layer gates, trace out the previous layer; the result lives on the
// output layer only.
DensityMatrix forward(const NetworkSpec& spec, const ParamVector& theta,
                      const DensityMatrix& input);
DensityMatrix forward(const NetworkSpec& spec, const ParamVector& theta,
                      const StateVector& input);
DensityMatrix forward(const NetworkSpec& spec, const ParamVector& theta,
                      std::span<const double> x);

// Readout probabilities for a classical input (CLASS_PROBE or DISTRIBUTION).
using ModelOutput = std::vector<double>;
ModelOutput model_output(const NetworkSpec& spec, const ParamVector& theta,
                         std::span<const double> x);

// Reusable evaluator holding the gate plan and scratch buffers. Evaluates the
// network on pure inputs without forming density matrices: fresh qubits are
// appended and traces deferred to the readout, which is exactly equivalent to
// the channel composition because later gates never touch discarded layers.
// Equality with forward() is covered by tests.
class NetworkEvaluator {
public:
    explicit NetworkEvaluator(NetworkSpec spec);

    const NetworkSpec& spec() const { return spec_; }

    ModelOutput output_probs(const ParamVector& theta, std::span<const double> x);
    ModelOutput output_probs(const ParamVector& theta, const StateVector& input);

    // <target| Tr_env[|Psi><Psi|] |target> where the trace is over everything
    // except the output layer.
    double fidelity(const ParamVector& theta, const StateVector& input,
                    const StateVector& target);

private:
    struct SqpGateRef {
        std::vector<int> controls;
        int target = 0;
        int param_offset = 0;
    };
    struct CanGateRef {
        int q1 = 0, q2 = 0;
        int param_offset = 0;
    };
    struct Transition {
        int new_width = 0;
        std::vector<SqpGateRef> sqp_gates;
        std::vector<CanGateRef> can_gates;
    };

    // Runs the circuit on the all-layer register; returns amplitudes.
    const Vec& run(const ParamVector& theta, const StateVector& input);
    ModelOutput read_probs(const Vec& amps) const;

    NetworkSpec spec_;
    std::vector<Transition> transitions_;  // SQP / HANNOVER
    int final_qubits_ = 0;
    Vec amps_;
};

// In-place perceptron gate application used by the evaluator: conditional
// 2x2 block per control bit-string. Matches apply_unitary(build_sqp_unitary).
void apply_sqp_inplace(Vec& amps, int n_qubits, const std::vector<int>& controls,
                       int target, const SqpEdgeParams& params, SqpSign sign);

}  // namespace sqpnet
