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

#ifndef QCORR_CHANNELS_H
#define QCORR_CHANNELS_H

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/state.h"

namespace qcorr {

enum class ChannelKind {
    kPhaseDamping,      // pdc
    kDepolarizing,      // dpc
    kAmplitudeDamping,  // adc
};

std::string channel_name(ChannelKind kind);
/// Accepts "pdc", "dpc" or "adc" (case-insensitive).
ChannelKind parse_channel_kind(std::string_view name);

/// Single-qubit Kraus channel with noise strength p.
///
///   PDC: sqrt(1-p/2) I, sqrt(p/2) Z
///   DPC: sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z
///   ADC: [[1, 0], [0, sqrt(1-p)]], [[0, sqrt(p)], [0, 0]]
struct KrausChannel {
    ChannelKind kind;
    double p;
    std::vector<Eigen::Matrix2cd> kraus_ops;

    /// max |sum_k K_k^dag K_k - I|.
    double completeness_error() const;
};

/// Throws std::domain_error unless 0 <= p <= 1.
KrausChannel make_channel(ChannelKind kind, double p);

/// Applies `ch` independently to every qubit in `sites`, one site at a time.
DensityMatrix apply_local(const DensityMatrix &rho, const KrausChannel &ch, const QubitSubset &sites);

/// Applies per_site[q] to qubit q. per_site must have one entry per qubit.
DensityMatrix apply_local(const DensityMatrix &rho, std::span<const KrausChannel> per_site);

DensityMatrix apply_uniform(const DensityMatrix &rho, const KrausChannel &ch);

/// In-place single-site Kraus map on a raw 2^n x 2^n matrix.
void apply_single_site(CMatrix &rho, int n_qubits, int site, std::span<const Eigen::Matrix2cd> kraus_ops);

}  // namespace qcorr

#endif
