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

#include "sqpnet/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace sqpnet {

namespace {

bool is_power_of_two(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

int log2_exact(std::int64_t x) {
    int n = 0;
    while ((std::int64_t{1} << n) < x) ++n;
    return n;
}

// Bit masks (LSB-based positions) for a qubit subset; targets[0] maps to the
// gate's most significant bit.
std::vector<std::uint64_t> target_masks(const std::vector<int>& targets, int n_qubits) {
    std::vector<std::uint64_t> masks(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j) {
        masks[j] = std::uint64_t{1} << (n_qubits - 1 - targets[j]);
    }
    return masks;
}

}  // namespace

void QubitSubset::validate(int n_qubits) const {
    for (const int q : indices) {
        if (q < 0 || q >= n_qubits) {
            throw std::invalid_argument("qubit index " + std::to_string(q) +
                                        " out of range for " + std::to_string(n_qubits) +
                                        " qubits");
        }
    }
    std::vector<int> sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("duplicate qubit index in subset");
    }
}

StateVector StateVector::zero(int n_qubits) { return basis(n_qubits, 0); }

StateVector StateVector::basis(int n_qubits, std::uint64_t bits) {
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes = Vec::Zero(std::int64_t{1} << n_qubits);
    s.amplitudes[static_cast<std::int64_t>(bits)] = cxd(1.0, 0.0);
    return s;
}

DensityMatrix DensityMatrix::zero_state(int n_qubits) {
    return from_pure(StateVector::zero(n_qubits));
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    DensityMatrix rho;
    rho.n_qubits = psi.n_qubits;
    rho.entries = psi.amplitudes * psi.amplitudes.adjoint();
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    DensityMatrix rho;
    rho.n_qubits = n_qubits;
    const std::int64_t d = std::int64_t{1} << n_qubits;
    rho.entries = Mat::Identity(d, d) / static_cast<double>(d);
    return rho;
}

void DensityMatrix::check_valid(double herm_tol, double trace_tol, double eig_floor) const {
    const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm > herm_tol) {
        throw std::runtime_error("density matrix not Hermitian (defect " +
                                 std::to_string(herm) + ")");
    }
    const cxd tr = entries.trace();
    if (std::abs(tr - cxd(1.0, 0.0)) > trace_tol) {
        throw std::runtime_error("density matrix trace deviates from 1 by " +
                                 std::to_string(std::abs(tr - cxd(1.0, 0.0))));
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(entries, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < eig_floor) {
        throw std::runtime_error("density matrix has eigenvalue " +
                                 std::to_string(es.eigenvalues().minCoeff()) +
                                 " below floor");
    }
}

UnitaryMatrix::UnitaryMatrix(Mat m) {
    if (m.rows() != m.cols() || !is_power_of_two(m.rows())) {
        throw std::invalid_argument("unitary dimension must be a power of two");
    }
    dimension = m.rows();
    entries = std::move(m);
}

int UnitaryMatrix::n_qubits() const { return log2_exact(dimension); }

double UnitaryMatrix::unitarity_defect() const {
    return (entries.adjoint() * entries - Mat::Identity(dimension, dimension))
        .cwiseAbs()
        .maxCoeff();
}

void apply_gate_inplace(Vec& amps, int n_qubits, const Mat& u,
                        const std::vector<int>& targets) {
    const int k = static_cast<int>(targets.size());
    const std::int64_t dim = amps.size();
    const std::int64_t block = std::int64_t{1} << k;
    const auto masks = target_masks(targets, n_qubits);
    std::uint64_t tmask = 0;
    for (const auto m : masks) tmask |= m;

    // Expansion table: gate-local index a -> offset within the register.
    std::vector<std::uint64_t> offset(block, 0);
    for (std::int64_t a = 0; a < block; ++a) {
        for (int j = 0; j < k; ++j) {
            if ((a >> (k - 1 - j)) & 1) offset[a] |= masks[j];
        }
    }

    std::vector<cxd> in(block);
    for (std::int64_t i = 0; i < dim; ++i) {
        if ((static_cast<std::uint64_t>(i) & tmask) != 0) continue;
        for (std::int64_t a = 0; a < block; ++a) in[a] = amps[i | offset[a]];
        for (std::int64_t a = 0; a < block; ++a) {
            cxd acc(0.0, 0.0);
            for (std::int64_t b = 0; b < block; ++b) acc += u(a, b) * in[b];
            amps[i | offset[a]] = acc;
        }
    }
}

void apply_1q_inplace(Vec& amps, int n_qubits, const Eigen::Matrix2cd& u, int qubit) {
    const std::uint64_t mask = std::uint64_t{1} << (n_qubits - 1 - qubit);
    const std::int64_t dim = amps.size();
    for (std::int64_t i = 0; i < dim; ++i) {
        if (static_cast<std::uint64_t>(i) & mask) continue;
        const cxd a0 = amps[i];
        const cxd a1 = amps[i | mask];
        amps[i] = u(0, 0) * a0 + u(0, 1) * a1;
        amps[i | mask] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_cnot_inplace(Vec& amps, int n_qubits, int control, int target) {
    const std::uint64_t cmask = std::uint64_t{1} << (n_qubits - 1 - control);
    const std::uint64_t tmask = std::uint64_t{1} << (n_qubits - 1 - target);
    const std::int64_t dim = amps.size();
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto ui = static_cast<std::uint64_t>(i);
        if ((ui & cmask) && !(ui & tmask)) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

void apply_cz_inplace(Vec& amps, int n_qubits, int a, int b) {
    const std::uint64_t amask = std::uint64_t{1} << (n_qubits - 1 - a);
    const std::uint64_t bmask = std::uint64_t{1} << (n_qubits - 1 - b);
    const std::int64_t dim = amps.size();
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto ui = static_cast<std::uint64_t>(i);
        if ((ui & amask) && (ui & bmask)) amps[i] = -amps[i];
    }
}

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          const QubitSubset& targets) {
    targets.validate(state.n_qubits);
    if (u.dimension != (std::int64_t{1} << targets.size())) {
        throw std::invalid_argument("gate dimension does not match target count");
    }
    StateVector out = state;
    apply_gate_inplace(out.amplitudes, out.n_qubits, u.entries, targets.indices);
    return out;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryMatrix& u,
                            const QubitSubset& targets) {
    targets.validate(rho.n_qubits);
    if (u.dimension != (std::int64_t{1} << targets.size())) {
        throw std::invalid_argument("gate dimension does not match target count");
    }
    DensityMatrix out = rho;
    const std::int64_t d = out.dim();
    // U rho: gate on the row index, column by column.
    Vec col(d);
    for (std::int64_t c = 0; c < d; ++c) {
        col = out.entries.col(c);
        apply_gate_inplace(col, out.n_qubits, u.entries, targets.indices);
        out.entries.col(c) = col;
    }
    // (U rho) U^dag: conjugated gate on the column index, row by row.
    const Mat uconj = u.entries.conjugate();
    Vec row(d);
    for (std::int64_t r = 0; r < d; ++r) {
        row = out.entries.row(r).transpose();
        apply_gate_inplace(row, out.n_qubits, uconj, targets.indices);
        out.entries.row(r) = row.transpose();
    }
    return out;
}

DensityMatrix extend_with_zeros(const DensityMatrix& rho, int k) {
    if (k < 1) throw std::invalid_argument("extend_with_zeros requires k >= 1");
    DensityMatrix out;
    out.n_qubits = rho.n_qubits + k;
    const std::int64_t d = rho.dim();
    out.entries = Mat::Zero(d << k, d << k);
    for (std::int64_t i = 0; i < d; ++i) {
        for (std::int64_t j = 0; j < d; ++j) {
            out.entries(i << k, j << k) = rho.entries(i, j);
        }
    }
    return out;
}

StateVector extend_with_zeros(const StateVector& psi, int k) {
    if (k < 1) throw std::invalid_argument("extend_with_zeros requires k >= 1");
    StateVector out;
    out.n_qubits = psi.n_qubits + k;
    out.amplitudes = Vec::Zero(psi.dim() << k);
    for (std::int64_t i = 0; i < psi.dim(); ++i) {
        out.amplitudes[i << k] = psi.amplitudes[i];
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& discard) {
    discard.validate(rho.n_qubits);
    if (discard.size() >= rho.n_qubits) {
        throw std::invalid_argument("cannot discard every qubit");
    }
    std::vector<bool> dropped(rho.n_qubits, false);
    for (const int q : discard.indices) dropped[q] = true;
    std::vector<int> keep;
    for (int q = 0; q < rho.n_qubits; ++q) {
        if (!dropped[q]) keep.push_back(q);
    }

    const int m = static_cast<int>(keep.size());
    const int kd = discard.size();
    const auto keep_masks = target_masks(keep, rho.n_qubits);
    const auto disc_masks = target_masks(discard.indices, rho.n_qubits);

    // Scatter tables from reduced / traced sub-indices to full indices.
    const std::int64_t md = std::int64_t{1} << m;
    const std::int64_t dd = std::int64_t{1} << kd;
    std::vector<std::uint64_t> keep_offset(md, 0), disc_offset(dd, 0);
    for (std::int64_t i = 0; i < md; ++i) {
        for (int j = 0; j < m; ++j) {
            if ((i >> (m - 1 - j)) & 1) keep_offset[i] |= keep_masks[j];
        }
    }
    for (std::int64_t i = 0; i < dd; ++i) {
        for (int j = 0; j < kd; ++j) {
            if ((i >> (kd - 1 - j)) & 1) disc_offset[i] |= disc_masks[j];
        }
    }

    DensityMatrix out;
    out.n_qubits = m;
    out.entries = Mat::Zero(md, md);
    for (std::int64_t i = 0; i < md; ++i) {
        for (std::int64_t j = 0; j < md; ++j) {
            cxd acc(0.0, 0.0);
            for (std::int64_t t = 0; t < dd; ++t) {
                acc += rho.entries(keep_offset[i] | disc_offset[t],
                                   keep_offset[j] | disc_offset[t]);
            }
            out.entries(i, j) = acc;
        }
    }
    return out;
}

double expectation(const DensityMatrix& rho, const Mat& observable,
                   const QubitSubset& targets) {
    targets.validate(rho.n_qubits);
    if (observable.rows() != observable.cols() ||
        observable.rows() != (std::int64_t{1} << targets.size())) {
        throw std::invalid_argument("observable dimension does not match target count");
    }
    const double herm = (observable - observable.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10) {
        throw std::invalid_argument("observable is not Hermitian (defect " +
                                    std::to_string(herm) + ")");
    }
    // Tr[(I (x) O (x) I) rho]: apply O on the row index, then trace.
    const std::int64_t d = rho.dim();
    cxd tr(0.0, 0.0);
    Vec col(d);
    for (std::int64_t c = 0; c < d; ++c) {
        col = rho.entries.col(c);
        apply_gate_inplace(col, rho.n_qubits, observable, targets.indices);
        tr += col[c];
    }
    if (std::abs(tr.imag()) > 1e-10) {
        throw std::runtime_error("expectation value has imaginary part " +
                                 std::to_string(tr.imag()));
    }
    return tr.real();
}

double fidelity_pure(const StateVector& target, const DensityMatrix& rho) {
    if (target.n_qubits != rho.n_qubits) {
        throw std::invalid_argument("state and density matrix qubit counts differ");
    }
    const cxd val = target.amplitudes.adjoint() * rho.entries * target.amplitudes;
    const double f = val.real();
    if (f < -1e-10 || f > 1.0 + 1e-10) {
        throw std::runtime_error("fidelity " + std::to_string(f) + " outside [0,1] slack");
    }
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace sqpnet
