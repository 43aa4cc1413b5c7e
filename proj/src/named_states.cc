// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcorr/named_states.h"

#include <cmath>
#include <stdexcept>

namespace qcorr {

PureState generalized_w(std::span<const Complex> amplitudes) {
    const int n = static_cast<int>(amplitudes.size());
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("generalized W state needs 1..8 amplitudes");
    }
    double norm2 = 0.0;
    for (const Complex &a : amplitudes) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > 1e-12) {
        throw std::domain_error("W-state amplitudes are not normalized");
    }
    CVector amps = CVector::Zero(Eigen::Index{1} << n);
    for (int q = 0; q < n; ++q) {
        amps(Eigen::Index{1} << (n - 1 - q)) = amplitudes[static_cast<size_t>(q)];
    }
    return PureState::normalized(n, std::move(amps));
}

PureState w_state(int n_qubits) {
    std::vector<Complex> a(static_cast<size_t>(n_qubits), Complex(1.0 / std::sqrt(static_cast<double>(n_qubits))));
    return generalized_w(a);
}

std::vector<Complex> gw3_amplitudes(double alpha, double beta, double gamma1, double gamma2) {
    const Complex i(0, 1);
    return {
        std::exp(i * gamma2) * std::sin(alpha) * std::sin(beta),
        std::exp(i * gamma1) * std::sin(alpha) * std::cos(beta),
        Complex(std::cos(alpha)),
    };
}

PureState generalized_ghz(int n_qubits, double theta, double phi) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("generalized GHZ state needs 1..8 qubits");
    }
    CVector amps = CVector::Zero(Eigen::Index{1} << n_qubits);
    amps(0) = std::cos(theta / 2.0);
    amps(amps.size() - 1) += std::exp(Complex(0, phi)) * std::sin(theta / 2.0);
    return PureState::normalized(n_qubits, std::move(amps));
}

PureState bell_phi_plus() {
    CVector amps = CVector::Zero(4);
    amps(0) = amps(3) = 1.0 / std::sqrt(2.0);
    return PureState::normalized(2, std::move(amps));
}

}  // namespace qcorr
