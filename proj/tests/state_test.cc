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

#include <gtest/gtest.h>

#include <random>

#include "brute_force.h"
#include "qcorr/named_states.h"

using namespace qcorr;

namespace {

DensityMatrix from_brute(int n, const brute::Mat &m) {
    return DensityMatrix(n, m);
}

}  // namespace

TEST(state, basis_zero_density) {
    const DensityMatrix rho = pure_to_density(PureState::basis(1, 0));
    EXPECT_NEAR(std::abs(rho(0, 0) - 1.0), 0, 1e-15);
    EXPECT_NEAR(std::abs(rho(1, 1)), 0, 1e-15);
    EXPECT_NEAR(std::abs(rho(0, 1)), 0, 1e-15);
}

TEST(state, plus_state_density) {
    CVector v(2);
    v << 1, 1;
    const DensityMatrix rho = pure_to_density(PureState::normalized(1, v));
    for (size_t r = 0; r < 2; ++r) {
        for (size_t c = 0; c < 2; ++c) {
            EXPECT_NEAR(std::abs(rho(r, c) - 0.5), 0, 1e-15);
        }
    }
}

TEST(state, w3_outer_product) {
    const DensityMatrix rho = pure_to_density(w_state(3));
    for (size_t r = 0; r < 8; ++r) {
        for (size_t c = 0; c < 8; ++c) {
            const bool on = (r == 1 || r == 2 || r == 4) && (c == 1 || c == 2 || c == 4);
            EXPECT_NEAR(std::abs(rho(r, c) - (on ? 1.0 / 3 : 0.0)), 0, 1e-15) << r << "," << c;
        }
    }
}

TEST(state, unnormalized_pure_state_rejected) {
    CVector v(2);
    v << 1, 1;
    EXPECT_THROW(PureState(1, v), std::invalid_argument);
}

TEST(state, partial_trace_of_product) {
    std::mt19937_64 rng(5);
    const brute::Mat a = brute::random_pure(1, rng);
    const brute::Mat b = brute::random_pure(2, rng);
    const DensityMatrix rho = from_brute(3, brute::kron(a, b));
    const DensityMatrix ra = partial_trace(rho, QubitSubset({0}, 3));
    EXPECT_LT((ra.matrix() - a).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(state, partial_trace_w3_pair) {
    const DensityMatrix pair = partial_trace(pure_to_density(w_state(3)), QubitSubset({0, 1}, 3));
    const std::vector<Pauli> zz{Pauli::Z, Pauli::Z};
    EXPECT_NEAR(pauli_expectation(pair, zz), -1.0 / 3, 1e-14);
}

TEST(state, partial_trace_maximally_mixed) {
    const DensityMatrix r = partial_trace(DensityMatrix::maximally_mixed(3), QubitSubset({1}, 3));
    EXPECT_NEAR(std::abs(r(0, 0) - 0.5), 0, 1e-15);
    EXPECT_NEAR(std::abs(r(1, 1) - 0.5), 0, 1e-15);
    EXPECT_NEAR(std::abs(r(0, 1)), 0, 1e-15);
}

TEST(state, partial_trace_matches_index_loops) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const brute::Mat m = brute::random_pure(4, rng);
        const DensityMatrix rho = from_brute(4, m);
        for (const std::vector<int> &keep :
             std::vector<std::vector<int>>{{0}, {2}, {1, 3}, {0, 2, 3}, {0, 3}, {1, 2}}) {
            const DensityMatrix got = partial_trace(rho, QubitSubset(keep, 4));
            EXPECT_LT((got.matrix() - brute::partial_trace(m, 4, keep)).cwiseAbs().maxCoeff(), 1e-13);
            EXPECT_NEAR(got.matrix().trace().real(), 1.0, 1e-10);
            EXPECT_GT(got.min_eigenvalue(), -1e-10);
        }
    }
}

TEST(state, partial_transpose_bell) {
    const DensityMatrix bell = pure_to_density(bell_phi_plus());
    const CMatrix pt = partial_transpose(bell, QubitSubset({1}, 2));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(pt);
    EXPECT_NEAR(es.eigenvalues().minCoeff(), -0.5, 1e-14);
}

TEST(state, partial_transpose_product_and_mixed) {
    std::mt19937_64 rng(3);
    const brute::Mat a = brute::random_pure(1, rng);
    const brute::Mat b = brute::random_pure(1, rng);
    const DensityMatrix prod = from_brute(2, brute::kron(a, b));
    const CMatrix pt = partial_transpose(prod, QubitSubset({1}, 2));
    Eigen::SelfAdjointEigenSolver<CMatrix> e1(pt), e2(prod.matrix());
    EXPECT_LT((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff(), 1e-14);
    const DensityMatrix mm = DensityMatrix::maximally_mixed(2);
    EXPECT_LT((partial_transpose(mm, QubitSubset({0}, 2)) - mm.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(state, entropy_values) {
    EXPECT_NEAR(von_neumann_entropy(pure_to_density(w_state(3))), 0.0, 1e-10);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(1)), 1.0, 1e-14);
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 0.75;
    d(1, 1) = 0.25;
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix(1, d)), 0.811278124459, 1e-10);
}

TEST(state, entropy_rejects_negative_spectrum) {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.1;
    d(1, 1) = -0.1;
    EXPECT_THROW(von_neumann_entropy(DensityMatrix(1, d)), std::domain_error);
}

TEST(state, pauli_expectation_examples) {
    const std::vector<Pauli> xyz{Pauli::X, Pauli::Y, Pauli::Z};
    EXPECT_NEAR(pauli_expectation(DensityMatrix::maximally_mixed(3), xyz), 0.0, 1e-15);
    const std::vector<Pauli> zzz(3, Pauli::Z);
    EXPECT_NEAR(pauli_expectation(pure_to_density(w_state(3)), zzz), -1.0, 1e-14);
    const std::vector<Pauli> zz(2, Pauli::Z);
    for (double theta : {0.3, 1.1, 2.5}) {
        const DensityMatrix ghz = pure_to_density(generalized_ghz(4, theta, 0.7));
        const DensityMatrix pair = partial_trace(ghz, QubitSubset({1, 3}, 4));
        EXPECT_NEAR(pauli_expectation(pair, zz), 1.0, 1e-14);
    }
}

TEST(state, pauli_expectation_matches_kronecker) {
    std::mt19937_64 rng(17);
    const brute::Mat m = brute::random_pure(3, rng);
    const DensityMatrix rho = from_brute(3, m);
    const std::string chars = "ixyz";
    for (int code = 0; code < 64; ++code) {
        std::string s;
        std::vector<Pauli> labels;
        for (int i = 0, c = code; i < 3; ++i, c /= 4) {
            s.push_back(chars[static_cast<size_t>(c % 4)]);
            labels.push_back(static_cast<Pauli>(c % 4));
        }
        EXPECT_NEAR(pauli_expectation(rho, labels), brute::expectation(m, s), 1e-13) << s;
    }
}
