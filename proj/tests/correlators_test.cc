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

#include "qcorr/correlators.h"

#include <gtest/gtest.h>

#include <random>

#include "brute_force.h"
#include "qcorr/channels.h"
#include "qcorr/named_states.h"

using namespace qcorr;

TEST(correlators, index_parse) {
    const CorrelatorIndex idx = CorrelatorIndex::parse("xy.z");
    EXPECT_EQ(idx.size(), 4);
    EXPECT_EQ(idx.str(), "xy.z");
    EXPECT_FALSE(idx.genuine());
    EXPECT_TRUE(CorrelatorIndex::parse("zzz").genuine());
    EXPECT_THROW(CorrelatorIndex::parse("xq"), std::invalid_argument);
}

TEST(correlators, index_width_must_match) {
    EXPECT_THROW(correlator(pure_to_density(w_state(3)), CorrelatorIndex::parse("zz")), std::invalid_argument);
}

TEST(correlators, basic_values) {
    EXPECT_NEAR(correlator(DensityMatrix::maximally_mixed(3), CorrelatorIndex::parse("xyz")), 0.0, 1e-15);
    const DensityMatrix w = pure_to_density(w_state(3));
    EXPECT_NEAR(correlator(w, CorrelatorIndex::parse("zzz")), 1.0, 1e-14);
    EXPECT_NEAR(raw_correlator(w, CorrelatorIndex::parse("zzz")), -1.0, 1e-14);
    // <W|X X I|W>: X X swaps |010> and |100>, overlap 2/3.
    EXPECT_NEAR(correlator(w, CorrelatorIndex::parse("xx.")), 2.0 / 3, 1e-14);
}

TEST(correlators, w3_max_is_zzz) {
    const CorrelatorMax m = genuine_max(pure_to_density(w_state(3)));
    EXPECT_NEAR(m.value, 1.0, 1e-14);
    EXPECT_EQ(m.argmax.str(), "zzz");
}

TEST(correlators, gghz_equator_max) {
    const DensityMatrix ghz = pure_to_density(generalized_ghz(3, M_PI / 2, 0.0));
    const CorrelatorMax m = genuine_max(ghz);
    EXPECT_NEAR(m.value, 1.0, 1e-14);
    EXPECT_EQ(m.argmax.str(), "xxx");
    EXPECT_NEAR(correlator(ghz, CorrelatorIndex::parse("zzz")), 0.0, 1e-14);
}

TEST(correlators, maximally_mixed_max) {
    EXPECT_NEAR(genuine_max(DensityMatrix::maximally_mixed(3)).value, 0.0, 1e-15);
    EXPECT_NEAR(genuine_max(DensityMatrix::maximally_mixed(3), SearchMode::kFullSearch).value, 0.0, 1e-15);
}

TEST(correlators, nongenuine_examples) {
    const DensityMatrix mm = DensityMatrix::maximally_mixed(3);
    EXPECT_NEAR(nongenuine_max(mm, QubitSubset({0, 2}, 3)).value, 0.0, 1e-15);
    const CorrelatorMax w = nongenuine_max(pure_to_density(w_state(3)), QubitSubset({0, 1}, 3));
    EXPECT_NEAR(w.value, 2.0 / 3, 1e-14);
    EXPECT_EQ(w.argmax.str(), "xx");
    for (double theta : {0.2, 1.7}) {
        const DensityMatrix ghz = pure_to_density(generalized_ghz(4, theta, 1.0));
        const CorrelatorMax m = nongenuine_max(ghz, QubitSubset({1, 2}, 4));
        EXPECT_NEAR(m.value, 1.0, 1e-14);
        EXPECT_EQ(m.argmax.str(), "zz");
    }
    EXPECT_THROW(nongenuine_max(mm, QubitSubset::all(3)), std::invalid_argument);
}

TEST(correlators, w3_set_is_symmetric) {
    const CorrelatorSet set = correlator_set(pure_to_density(w_state(3)));
    ASSERT_EQ(set.levels.size(), 3u);
    for (const auto &level : set.levels) {
        for (const auto &e : level) {
            EXPECT_NEAR(e.max.value, level.front().max.value, 1e-14);
        }
    }
    EXPECT_EQ(set.levels[0].size(), 3u);
    EXPECT_EQ(set.levels[1].size(), 3u);
}

TEST(correlators, set_small_cases) {
    const CorrelatorSet one = correlator_set(pure_to_density(PureState::basis(1, 0)));
    ASSERT_EQ(one.levels.size(), 1u);
    EXPECT_NEAR(one.levels[0][0].max.value, 1.0, 1e-15);
    const CorrelatorSet mm = correlator_set(DensityMatrix::maximally_mixed(2));
    for (const auto &level : mm.levels) {
        for (const auto &e : level) {
            EXPECT_NEAR(e.max.value, 0.0, 1e-15);
        }
    }
}

TEST(correlators, distributed_gghz_zz) {
    for (int n = 2; n <= 5; ++n) {
        const DensityMatrix ghz = pure_to_density(generalized_ghz(n, 0.9, 0.4));
        EXPECT_NEAR(distributed_correlator(ghz, {Pauli::Z, Pauli::Z}, 0), n - 1.0, 1e-13);
        EXPECT_NEAR(distributed_correlator(ghz, {Pauli::Z, Pauli::Z}, n - 1), n - 1.0, 1e-13);
    }
    EXPECT_NEAR(distributed_correlator(DensityMatrix::maximally_mixed(3), {Pauli::X, Pauli::Z}), 0.0, 1e-15);
}

// The pair ZZ values of the three-qubit gW probe, by hand:
//   (1,2): cos^2 a - sin^2 a,  (1,3): -cos^2 a + sin^2 a (cos^2 b - sin^2 b).
// Phase damping leaves both unchanged. The sum is 2 only for the product
// member a = 0.
TEST(correlators, gw3_distributed_zz_invariant_under_pdc) {
    for (double a : {0.0, 0.4, 1.1}) {
        for (double b : {0.3, 0.8}) {
            const double want =
                std::abs(std::cos(2 * a)) + std::abs(-std::pow(std::cos(a), 2) + std::pow(std::sin(a), 2) * std::cos(2 * b));
            const DensityMatrix rho = pure_to_density(generalized_w(gw3_amplitudes(a, b, 0.2, 1.3)));
            for (double p : {0.0, 0.25, 0.6, 1.0}) {
                const DensityMatrix out = apply_uniform(rho, make_channel(ChannelKind::kPhaseDamping, p));
                EXPECT_NEAR(distributed_correlator(out, {Pauli::Z, Pauli::Z}), want, 1e-13);
            }
        }
    }
    const DensityMatrix product = pure_to_density(generalized_w(gw3_amplitudes(0.0, 0.5, 0.0, 0.0)));
    EXPECT_NEAR(distributed_correlator(product, {Pauli::Z, Pauli::Z}), 2.0, 1e-14);
}

TEST(correlators, properties_on_random_states) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u;
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + t % 3;
        DensityMatrix rho(n, brute::random_pure(n, rng));
        rho = apply_uniform(rho, make_channel(static_cast<ChannelKind>(t % 3), u(rng)));
        const CorrelatorMax same = genuine_max(rho);
        const CorrelatorMax full = genuine_max(rho, SearchMode::kFullSearch);
        EXPECT_GE(same.value, -1e-15);
        EXPECT_LE(same.value, 1.0 + 1e-12);
        EXPECT_GE(full.value, same.value - 1e-15);
        EXPECT_NEAR(correlator(rho, full.argmax), full.value, 1e-14);
    }
}

TEST(correlators, full_search_matches_enumeration) {
    std::mt19937_64 rng(22);
    const brute::Mat m = brute::random_pure(3, rng);
    double best = 0;
    const std::string xyz = "xyz";
    for (int code = 0; code < 27; ++code) {
        std::string s;
        for (int i = 0, c = code; i < 3; ++i, c /= 3) {
            s.push_back(xyz[static_cast<size_t>(c % 3)]);
        }
        best = std::max(best, std::abs(brute::expectation(m, s)));
    }
    EXPECT_NEAR(genuine_max(DensityMatrix(3, m), SearchMode::kFullSearch).value, best, 1e-13);
}
