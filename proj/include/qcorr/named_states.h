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

#ifndef QCORR_NAMED_STATES_H
#define QCORR_NAMED_STATES_H

#include <span>

#include "qcorr/state.h"

namespace qcorr {

/// sum_i a_i |0..1_i..0>, where amplitudes[i] sits on the basis state whose
/// single excitation is on qubit i. Throws std::domain_error unless
/// sum |a_i|^2 = 1 within 1e-12.
PureState generalized_w(std::span<const Complex> amplitudes);

/// Uniform-amplitude W state on n qubits.
PureState w_state(int n_qubits);

/// Excitation amplitudes of the three-qubit probe
/// cos(a)|001> + e^{i g1} sin(a)cos(b)|010> + e^{i g2} sin(a)sin(b)|100>,
/// indexed by excited qubit.
std::vector<Complex> gw3_amplitudes(double alpha, double beta, double gamma1, double gamma2);

/// cos(theta/2)|0..0> + e^{i phi} sin(theta/2)|1..1>.
PureState generalized_ghz(int n_qubits, double theta, double phi);

/// (|0..0> + |1..1>)/sqrt(2) on two qubits.
PureState bell_phi_plus();

}  // namespace qcorr

#endif
