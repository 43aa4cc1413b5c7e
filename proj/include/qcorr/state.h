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

#ifndef QCORR_STATE_H
#define QCORR_STATE_H

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Largest register the dense representation accepts (256x256 matrices).
inline constexpr int kMaxQubits = 8;

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);
Eigen::Matrix2cd pauli_matrix(Pauli p);

/// Ordered list of distinct 0-based qubit indices of an n-qubit register.
///
/// Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
/// computational-basis index. Construction throws std::out_of_range for an
/// index outside [0, n) and std::invalid_argument for duplicates.
class QubitSubset {
   public:
    QubitSubset(std::vector<int> indices, int n_qubits);

    static QubitSubset all(int n_qubits);
    static QubitSubset pair(int a, int b, int n_qubits) {
        return QubitSubset({a, b}, n_qubits);
    }

    const std::vector<int> &indices() const {
        return indices_;
    }
    int n_qubits() const {
        return n_qubits_;
    }
    size_t size() const {
        return indices_.size();
    }
    bool contains(int q) const;
    /// The qubits of the register that are not in this subset, ascending.
    std::vector<int> complement() const;

    bool operator==(const QubitSubset &other) const = default;

   private:
    std::vector<int> indices_;
    int n_qubits_;
};

class PureState {
   public:
    /// Throws std::invalid_argument unless amplitudes has length 2^n and unit
    /// norm within 1e-12.
    PureState(int n_qubits, CVector amplitudes);

    /// Scales arbitrary non-zero amplitudes to unit norm.
    static PureState normalized(int n_qubits, CVector amplitudes);
    static PureState basis(int n_qubits, uint64_t index);

    int n_qubits() const {
        return n_qubits_;
    }
    size_t dim() const {
        return static_cast<size_t>(amplitudes_.size());
    }
    const CVector &amplitudes() const {
        return amplitudes_;
    }

   private:
    int n_qubits_;
    CVector amplitudes_;
};

class DensityMatrix {
   public:
    /// Throws std::invalid_argument unless the matrix is 2^n square, Hermitian
    /// within 1e-12 elementwise and of unit trace within 1e-12. Positivity is
    /// not checked here; see min_eigenvalue().
    DensityMatrix(int n_qubits, CMatrix elements);

    static DensityMatrix maximally_mixed(int n_qubits);

    int n_qubits() const {
        return n_qubits_;
    }
    size_t dim() const {
        return static_cast<size_t>(elements_.rows());
    }
    const CMatrix &matrix() const {
        return elements_;
    }
    Complex operator()(size_t r, size_t c) const {
        return elements_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    Eigen::VectorXd eigenvalues() const;
    double min_eigenvalue() const;

   private:
    int n_qubits_;
    CMatrix elements_;
};

DensityMatrix pure_to_density(const PureState &psi);

/// Kronecker product; a's qubits come first.
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Reduced state on `keep`, with qubits ordered as listed in `keep`.
DensityMatrix partial_trace(const DensityMatrix &rho, const QubitSubset &keep);

/// Transposes the tensor factors listed in `subsystem`. The result is
/// Hermitian with unit trace but need not be positive, so it is returned as a
/// bare matrix.
CMatrix partial_transpose(const CMatrix &rho, int n_qubits, const QubitSubset &subsystem);
CMatrix partial_transpose(const DensityMatrix &rho, const QubitSubset &subsystem);

/// Eigenvalues in [-1e-10, 0) are treated as zero; anything more negative
/// throws std::domain_error.
double von_neumann_entropy(const DensityMatrix &rho);
double entropy_of_spectrum(const Eigen::VectorXd &eigenvalues);

/// tr(sigma_{l_1} (x) ... (x) sigma_{l_n} rho). One label per qubit.
double pauli_expectation(const DensityMatrix &rho, std::span<const Pauli> labels);

/// Binary entropy in bits, with h(0) = h(1) = 0.
double binary_entropy(double x);

}  // namespace qcorr

#endif
