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

#include "qcorr/state.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr double kStateTolerance = 1e-12;
constexpr double kNegativeClip = 1e-10;
constexpr double kZeroEigenvalue = 1e-12;

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must lie in [1, " + std::to_string(kMaxQubits) + "]");
    }
}

// Bit of basis index `index` carrying qubit `q` of an n-qubit register.
inline uint64_t bit_of(int q, int n_qubits) {
    return uint64_t{1} << (n_qubits - 1 - q);
}

// Packs the bits of `index` selected by `qubits` into a compact index, first
// listed qubit most significant.
uint64_t gather_bits(uint64_t index, const std::vector<int> &qubits, int n_qubits) {
    uint64_t out = 0;
    for (int q : qubits) {
        out = (out << 1) | ((index & bit_of(q, n_qubits)) ? 1 : 0);
    }
    return out;
}

}  // namespace

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I:
            return '.';
        case Pauli::X:
            return 'x';
        case Pauli::Y:
            return 'y';
        case Pauli::Z:
            return 'z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case '.':
        case 'i':
        case 'I':
            return Pauli::I;
        case 'x':
        case 'X':
            return Pauli::X;
        case 'y':
        case 'Y':
            return Pauli::Y;
        case 'z':
        case 'Z':
            return Pauli::Z;
    }
    throw std::invalid_argument(std::string("not a Pauli label: '") + c + "'");
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
    Eigen::Matrix2cd m;
    const Complex i(0, 1);
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, -i, i, 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

QubitSubset::QubitSubset(std::vector<int> indices, int n_qubits)
    : indices_(std::move(indices)), n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    std::vector<bool> seen(static_cast<size_t>(n_qubits), false);
    for (int q : indices_) {
        if (q < 0 || q >= n_qubits) {
            throw std::out_of_range("qubit index " + std::to_string(q) + " outside register of " +
                                    std::to_string(n_qubits));
        }
        if (seen[static_cast<size_t>(q)]) {
            throw std::invalid_argument("duplicate qubit index " + std::to_string(q));
        }
        seen[static_cast<size_t>(q)] = true;
    }
}

QubitSubset QubitSubset::all(int n_qubits) {
    std::vector<int> idx(static_cast<size_t>(std::max(n_qubits, 0)));
    for (int q = 0; q < n_qubits; ++q) {
        idx[static_cast<size_t>(q)] = q;
    }
    return QubitSubset(std::move(idx), n_qubits);
}

bool QubitSubset::contains(int q) const {
    return std::find(indices_.begin(), indices_.end(), q) != indices_.end();
}

std::vector<int> QubitSubset::complement() const {
    std::vector<int> out;
    for (int q = 0; q < n_qubits_; ++q) {
        if (!contains(q)) {
            out.push_back(q);
        }
    }
    return out;
}

PureState::PureState(int n_qubits, CVector amplitudes) : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    if (amplitudes_.size() != (Eigen::Index{1} << n_qubits)) {
        throw std::invalid_argument("amplitude vector length must be 2^n_qubits");
    }
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > kStateTolerance) {
        throw std::invalid_argument("pure state is not normalized");
    }
}

PureState PureState::normalized(int n_qubits, CVector amplitudes) {
    double norm = amplitudes.norm();
    if (!(norm > 0) || !std::isfinite(norm)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite amplitude vector");
    }
    amplitudes /= norm;
    return PureState(n_qubits, std::move(amplitudes));
}

PureState PureState::basis(int n_qubits, uint64_t index) {
    check_qubit_count(n_qubits);
    CVector amps = CVector::Zero(Eigen::Index{1} << n_qubits);
    if (index >= static_cast<uint64_t>(amps.size())) {
        throw std::out_of_range("basis index outside register");
    }
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(n_qubits, std::move(amps));
}

DensityMatrix::DensityMatrix(int n_qubits, CMatrix elements) : n_qubits_(n_qubits), elements_(std::move(elements)) {
    check_qubit_count(n_qubits);
    Eigen::Index d = Eigen::Index{1} << n_qubits;
    if (elements_.rows() != d || elements_.cols() != d) {
        throw std::invalid_argument("density matrix must be 2^n x 2^n");
    }
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = r; c < d; ++c) {
            if (std::abs(elements_(r, c) - std::conj(elements_(c, r))) > kStateTolerance) {
                throw std::invalid_argument("density matrix is not Hermitian");
            }
        }
    }
    if (std::abs(elements_.trace() - Complex(1.0)) > kStateTolerance) {
        throw std::invalid_argument("density matrix trace differs from 1");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    check_qubit_count(n_qubits);
    Eigen::Index d = Eigen::Index{1} << n_qubits;
    return DensityMatrix(n_qubits, CMatrix::Identity(d, d) / static_cast<double>(d));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(elements_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double DensityMatrix::min_eigenvalue() const {
    return eigenvalues().minCoeff();
}

DensityMatrix pure_to_density(const PureState &psi) {
    const CVector &a = psi.amplitudes();
    CMatrix rho = a * a.adjoint();
    return DensityMatrix(psi.n_qubits(), std::move(rho));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    const CMatrix &ma = a.matrix();
    const CMatrix &mb = b.matrix();
    CMatrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
    for (Eigen::Index r = 0; r < ma.rows(); ++r) {
        for (Eigen::Index c = 0; c < ma.cols(); ++c) {
            out.block(r * mb.rows(), c * mb.cols(), mb.rows(), mb.cols()) = ma(r, c) * mb;
        }
    }
    return DensityMatrix(a.n_qubits() + b.n_qubits(), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix &rho, const QubitSubset &keep) {
    const int n = rho.n_qubits();
    if (keep.n_qubits() != n) {
        throw std::out_of_range("subset belongs to a register of different size");
    }
    if (keep.size() == 0) {
        throw std::invalid_argument("partial trace must keep at least one qubit");
    }
    const std::vector<int> traced = keep.complement();
    const uint64_t d = rho.dim();
    const Eigen::Index dk = Eigen::Index{1} << keep.size();
    CMatrix out = CMatrix::Zero(dk, dk);
    const CMatrix &m = rho.matrix();
    for (uint64_t r = 0; r < d; ++r) {
        const uint64_t tr = gather_bits(r, traced, n);
        const auto kr = static_cast<Eigen::Index>(gather_bits(r, keep.indices(), n));
        for (uint64_t c = 0; c < d; ++c) {
            if (gather_bits(c, traced, n) != tr) {
                continue;
            }
            const auto kc = static_cast<Eigen::Index>(gather_bits(c, keep.indices(), n));
            out(kr, kc) += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    // Restore exact Hermiticity lost to summation order.
    CMatrix herm = (out + out.adjoint()) * 0.5;
    return DensityMatrix(static_cast<int>(keep.size()), std::move(herm));
}

CMatrix partial_transpose(const CMatrix &rho, int n_qubits, const QubitSubset &subsystem) {
    if (subsystem.n_qubits() != n_qubits) {
        throw std::out_of_range("subset belongs to a register of different size");
    }
    uint64_t mask = 0;
    for (int q : subsystem.indices()) {
        mask |= bit_of(q, n_qubits);
    }
    const Eigen::Index d = rho.rows();
    CMatrix out(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            const auto ur = static_cast<uint64_t>(r);
            const auto uc = static_cast<uint64_t>(c);
            const uint64_t nr = (ur & ~mask) | (uc & mask);
            const uint64_t nc = (uc & ~mask) | (ur & mask);
            out(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(nc)) = rho(r, c);
        }
    }
    return out;
}

CMatrix partial_transpose(const DensityMatrix &rho, const QubitSubset &subsystem) {
    return partial_transpose(rho.matrix(), rho.n_qubits(), subsystem);
}

double entropy_of_spectrum(const Eigen::VectorXd &eigenvalues) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        double lambda = eigenvalues(i);
        if (lambda < -kNegativeClip) {
            throw std::domain_error("state has a negative eigenvalue " + std::to_string(lambda));
        }
        if (lambda > kZeroEigenvalue) {
            s -= lambda * std::log2(lambda);
        }
    }
    return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix &rho) {
    return entropy_of_spectrum(rho.eigenvalues());
}

double pauli_expectation(const DensityMatrix &rho, std::span<const Pauli> labels) {
    const int n = rho.n_qubits();
    if (static_cast<int>(labels.size()) != n) {
        throw std::invalid_argument("need exactly one Pauli label per qubit");
    }
    // sigma|r> = phase(r) |r ^ flip>, so tr(sigma rho) = sum_r phase(r) rho(r, r ^ flip).
    uint64_t flip = 0;
    for (int q = 0; q < n; ++q) {
        Pauli p = labels[static_cast<size_t>(q)];
        if (p == Pauli::X || p == Pauli::Y) {
            flip |= bit_of(q, n);
        }
    }
    const CMatrix &m = rho.matrix();
    Complex total = 0.0;
    for (uint64_t r = 0; r < rho.dim(); ++r) {
        Complex phase = 1.0;
        for (int q = 0; q < n; ++q) {
            const bool one = (r & bit_of(q, n)) != 0;
            switch (labels[static_cast<size_t>(q)]) {
                case Pauli::Y:
                    phase *= one ? Complex(0, -1) : Complex(0, 1);
                    break;
                case Pauli::Z:
                    if (one) {
                        phase = -phase;
                    }
                    break;
                default:
                    break;
            }
        }
        total += phase * m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ flip));
    }
    return total.real();
}

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) {
        return 0.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace qcorr
