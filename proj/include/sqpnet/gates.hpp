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

#include <cmath>

#include "sqpnet/quantum.hpp"

namespace sqpnet {

inline Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

inline Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd m;
    m << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
    return m;
}

inline Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

inline Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd m;
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

// R_y(theta) = exp(-i theta Y / 2) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].
inline Eigen::Matrix2cd ry(double theta) {
    Eigen::Matrix2cd m;
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    m << c, -s, s, c;
    return m;
}

inline Eigen::Matrix4cd cnot() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

inline Eigen::Matrix4cd cz() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    m(3, 3) = -1;
    return m;
}

inline Eigen::Matrix2cd projector(int outcome) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(outcome, outcome) = 1;
    return m;
}

}  // namespace sqpnet
