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

#include "qcorr/channels.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qcorr {

std::string channel_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::kPhaseDamping:
            return "pdc";
        case ChannelKind::kDepolarizing:
            return "dpc";
        case ChannelKind::kAmplitudeDamping:
            return "adc";
    }
    return "?";
}

ChannelKind parse_channel_kind(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "pdc") {
        return ChannelKind::kPhaseDamping;
    }
    if (lower == "dpc") {
        return ChannelKind::kDepolarizing;
    }
    if (lower == "adc") {
        return ChannelKind::kAmplitudeDamping;
    }
    throw std::invalid_argument("unknown channel '" + std::string(name) + "' (expected pdc|dpc|adc)");
}

double KrausChannel::completeness_error() const {
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (const auto &k : kraus_ops) {
        sum += k.adjoint() * k;
    }
    return (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

KrausChannel make_channel(ChannelKind kind, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("noise strength p must lie in [0, 1], got " + std::to_string(p));
    }
    KrausChannel ch{kind, p, {}};
    switch (kind) {
        case ChannelKind::kPhaseDamping:
            ch.kraus_ops.push_back(std::sqrt(1.0 - p / 2.0) * pauli_matrix(Pauli::I));
            ch.kraus_ops.push_back(std::sqrt(p / 2.0) * pauli_matrix(Pauli::Z));
            break;
        case ChannelKind::kDepolarizing:
            ch.kraus_ops.push_back(std::sqrt(1.0 - p) * pauli_matrix(Pauli::I));
            ch.kraus_ops.push_back(std::sqrt(p / 3.0) * pauli_matrix(Pauli::X));
            ch.kraus_ops.push_back(std::sqrt(p / 3.0) * pauli_matrix(Pauli::Y));
            ch.kraus_ops.push_back(std::sqrt(p / 3.0) * pauli_matrix(Pauli::Z));
            break;
        case ChannelKind::kAmplitudeDamping: {
            Eigen::Matrix2cd k0;
            k0 << 1, 0, 0, std::sqrt(1.0 - p);
            Eigen::Matrix2cd k1;
            k1 << 0, std::sqrt(p), 0, 0;
            ch.kraus_ops.push_back(k0);
            ch.kraus_ops.push_back(k1);
            break;
        }
    }
    return ch;
}

void apply_single_site(CMatrix &rho, int n_qubits, int site, std::span<const Eigen::Matrix2cd> kraus_ops) {
    if (site < 0 || site >= n_qubits) {
        throw std::out_of_range("site outside register");
    }
    const Eigen::Index d = rho.rows();
    const Eigen::Index bit = Eigen::Index{1} << (n_qubits - 1 - site);
    // Visit each 2x2 block rho[r0|r1, c0|c1] where r/c differ only at `bit`.
    for (Eigen::Index r0 = 0; r0 < d; ++r0) {
        if (r0 & bit) {
            continue;
        }
        const Eigen::Index r1 = r0 | bit;
        for (Eigen::Index c0 = 0; c0 < d; ++c0) {
            if (c0 & bit) {
                continue;
            }
            const Eigen::Index c1 = c0 | bit;
            Eigen::Matrix2cd block;
            block << rho(r0, c0), rho(r0, c1), rho(r1, c0), rho(r1, c1);
            Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
            for (const auto &k : kraus_ops) {
                out.noalias() += k * block * k.adjoint();
            }
            rho(r0, c0) = out(0, 0);
            rho(r0, c1) = out(0, 1);
            rho(r1, c0) = out(1, 0);
            rho(r1, c1) = out(1, 1);
        }
    }
}

DensityMatrix apply_local(const DensityMatrix &rho, const KrausChannel &ch, const QubitSubset &sites) {
    if (sites.n_qubits() != rho.n_qubits()) {
        throw std::out_of_range("subset belongs to a register of different size");
    }
    CMatrix m = rho.matrix();
    for (int q : sites.indices()) {
        apply_single_site(m, rho.n_qubits(), q, ch.kraus_ops);
    }
    return DensityMatrix(rho.n_qubits(), std::move(m));
}

DensityMatrix apply_local(const DensityMatrix &rho, std::span<const KrausChannel> per_site) {
    if (static_cast<int>(per_site.size()) != rho.n_qubits()) {
        throw std::invalid_argument("need one channel per qubit");
    }
    CMatrix m = rho.matrix();
    for (int q = 0; q < rho.n_qubits(); ++q) {
        apply_single_site(m, rho.n_qubits(), q, per_site[static_cast<size_t>(q)].kraus_ops);
    }
    return DensityMatrix(rho.n_qubits(), std::move(m));
}

DensityMatrix apply_uniform(const DensityMatrix &rho, const KrausChannel &ch) {
    return apply_local(rho, ch, QubitSubset::all(rho.n_qubits()));
}

}  // namespace qcorr
