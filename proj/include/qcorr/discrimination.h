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

// Identifies an unknown uniform local channel from how the all-Z genuine
// correlator of a probe state changes with noise strength.

#ifndef QCORR_DISCRIMINATION_H
#define QCORR_DISCRIMINATION_H

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcorr/channels.h"
#include "qcorr/state.h"

namespace qcorr {

enum class ProbeKind { kGeneralizedW, kGeneralizedGhz };

struct ProbeState {
    ProbeKind kind = ProbeKind::kGeneralizedW;
    int n_qubits = 3;
    std::vector<Complex> amplitudes;  // gW only; may be empty for traces read from files
    double theta = 0.0;               // gGHZ only
    double phi = 0.0;                 // gGHZ only

    static ProbeState gw(std::vector<Complex> amplitudes);
    static ProbeState gw3(double alpha, double beta, double gamma1, double gamma2);
    static ProbeState gghz(int n_qubits, double theta, double phi);

    PureState state() const;
};

struct ProbeSample {
    double p;
    double c_before;
    double c_after;
};

struct ProbeTrace {
    ProbeState probe;
    std::vector<ProbeSample> z;  // all-Z genuine correlator
    std::vector<ProbeSample> x;  // all-X, optional; needed for gGHZ probes
};

enum class Verdict { kPdc, kAdc, kDpc, kInconclusive };

std::string verdict_name(Verdict v);

struct DiscriminationVerdict {
    Verdict label = Verdict::kInconclusive;
    /// RMS of (predicted - observed) c_after per model, in PDC, ADC, DPC order.
    std::array<double, 3> residuals{};
    /// Least-squares factor s with observed change ~ s * predicted change;
    /// close to 1 for the generating model. 0 when a model predicts no change.
    std::array<double, 3> scale{};
    std::string reason;
};

struct ClassifyOptions {
    double threshold = 0.02;
    double residual_cap = 0.1;
};

/// Throws std::invalid_argument with fewer than 3 distinct p values or
/// correlators outside [0, 1].
DiscriminationVerdict classify(const ProbeTrace &trace, const ClassifyOptions &opts = {});

struct TraceOptions {
    /// Independent Gaussian noise on every measured correlator, clamped to
    /// [0, 1] afterwards.
    double noise_sigma = 0.0;
    uint64_t seed = 0;
    /// Also record the all-X trace (always on for gGHZ probes).
    bool with_x = false;
};

ProbeTrace generate_probe_trace(const ProbeState &probe, ChannelKind channel, std::span<const double> p_values,
                                const TraceOptions &opts = {});

}  // namespace qcorr

#endif
