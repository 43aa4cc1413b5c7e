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

#include "qcorr/sampling.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "brute_force.h"
#include "qcorr/correlators.h"

using namespace qcorr;

TEST(sampling, single_sample_normalized) {
    for (uint64_t seed : {0ULL, 1ULL, 987654321ULL}) {
        SamplerConfig cfg;
        cfg.n_qubits = 4;
        cfg.count = 1;
        cfg.master_seed = seed;
        const auto states = sample_haar(cfg);
        ASSERT_EQ(states.size(), 1u);
        EXPECT_NEAR(states[0].amplitudes().norm(), 1.0, 1e-12);
    }
}

TEST(sampling, same_seed_same_stream) {
    SamplerConfig cfg;
    cfg.count = 50;
    cfg.master_seed = 42;
    const auto a = sample_haar(cfg);
    const auto b = sample_haar(cfg);
    for (size_t i = 0; i < a.size(); ++i) {
        EXPECT_TRUE(a[i].amplitudes() == b[i].amplitudes());
    }
    cfg.ensemble = Ensemble::kWClass;
    const auto c = sample_w_class(cfg);
    const auto d = sample_w_class(cfg);
    for (size_t i = 0; i < c.size(); ++i) {
        EXPECT_TRUE(c[i].amplitudes() == d[i].amplitudes());
    }
    // Index access gives the same state as the bulk draw.
    EXPECT_TRUE(sample_state(cfg, 7).amplitudes() == c[7].amplitudes());
}

TEST(sampling, haar_marginal_purity) {
    // E tr(rho_A^2) = (d_A + d_B) / (d_A d_B + 1) = 4/5 for two qubits.
    SamplerConfig cfg;
    cfg.n_qubits = 2;
    cfg.count = 10000;
    cfg.master_seed = 2024;
    double total = 0;
    for (const PureState &psi : sample_haar(cfg)) {
        const brute::Mat rho = psi.amplitudes() * psi.amplitudes().adjoint();
        const brute::Mat ra = brute::partial_trace(rho, 2, {0});
        total += (ra * ra).trace().real();
    }
    EXPECT_NEAR(total / cfg.count, 0.8, 0.01);
}

TEST(sampling, w_class_support) {
    SamplerConfig cfg;
    cfg.ensemble = Ensemble::kWClass;
    cfg.count = 200;
    cfg.master_seed = 5;
    for (bool real : {false, true}) {
        cfg.wclass_real_amplitudes = real;
        for (const PureState &psi : sample_w_class(cfg)) {
            EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-12);
            for (int idx : {3, 5, 6, 7}) {
                EXPECT_EQ(psi.amplitudes()(idx), Complex(0, 0)) << idx;
            }
            if (real) {
                EXPECT_EQ(psi.amplitudes().imag().cwiseAbs().maxCoeff(), 0.0);
            }
        }
    }
}

TEST(sampling, w_class_needs_three_qubits) {
    SamplerConfig cfg;
    cfg.ensemble = Ensemble::kWClass;
    cfg.n_qubits = 4;
    EXPECT_THROW(cfg.validate(), std::domain_error);
    EXPECT_THROW(sample_w_class(cfg), std::domain_error);
}

TEST(sampling, w_class_differs_from_haar) {
    // Two-sample comparison of the genuine maximum: the gap in means must
    // exceed five standard errors.
    SamplerConfig cfg;
    cfg.count = 500;
    cfg.master_seed = 9;
    auto moments = [&](Ensemble e) {
        cfg.ensemble = e;
        std::vector<double> v;
        for (int64_t i = 0; i < cfg.count; ++i) {
            v.push_back(genuine_max(pure_to_density(sample_state(cfg, static_cast<uint64_t>(i)))).value);
        }
        const DistributionSummary s = summarize(v);
        return std::pair{s.mean, s.std_dev};
    };
    const auto [mh, sh] = moments(Ensemble::kHaar);
    const auto [mw, sw] = moments(Ensemble::kWClass);
    const double se = std::sqrt((sh * sh + sw * sw) / cfg.count);
    EXPECT_GT(std::abs(mh - mw), 5 * se) << mh << " vs " << mw;
}

TEST(sampling, histogram_normalized) {
    const std::vector<double> v{0.0, 0.1, 0.1, 0.5, 1.0};
    const Histogram h = histogram(v, 4);
    ASSERT_EQ(h.edges.size(), 5u);
    EXPECT_NEAR(std::accumulate(h.frequencies.begin(), h.frequencies.end(), 0.0), 1.0, 1e-12);
    EXPECT_NEAR(h.frequencies[0], 0.6, 1e-12);
    EXPECT_NEAR(h.frequencies[3], 0.2, 1e-12);  // 1.0 falls in the closed last bin
    const std::vector<double> same(4, 0.3);
    const Histogram d = histogram(same, 3);
    EXPECT_NEAR(std::accumulate(d.frequencies.begin(), d.frequencies.end(), 0.0), 1.0, 1e-12);
}

TEST(sampling, summarize_statistics) {
    const std::vector<double> v{1, 2, 2, 3, 7, std::nan("")};
    const DistributionSummary s = summarize(v, 5);
    EXPECT_EQ(s.n, 5);
    EXPECT_EQ(s.failures, 1);
    EXPECT_NEAR(s.mean, 3.0, 1e-14);
    // Population variance: (4 + 1 + 1 + 0 + 16) / 5.
    EXPECT_NEAR(s.std_dev, std::sqrt(22.0 / 5), 1e-14);
    EXPECT_NEAR(s.median, 2.0, 1e-14);
    EXPECT_NEAR(s.skewness, 3 * (3.0 - 2.0) / std::sqrt(22.0 / 5), 1e-13);
    // Third central moment: (-8 - 1 - 1 + 0 + 64) / 5.
    EXPECT_NEAR(s.moment_skewness, (54.0 / 5) / std::pow(22.0 / 5, 1.5), 1e-13);
    EXPECT_EQ(s.min, 1.0);
    EXPECT_EQ(s.max, 7.0);
}

TEST(sampling, decay_rate_examples) {
    const std::vector<double> p{0.2, 0.4, 0.6};
    const std::vector<double> flat{0.5, 0.5, 0.5};
    EXPECT_NEAR(decay_rate(p, flat), 0.0, 1e-15);
    const std::vector<double> line{1.0, 0.8, 0.6};
    EXPECT_NEAR(decay_rate(p, line), -1.0, 1e-12);
    EXPECT_NEAR(decay_magnitude(decay_rate(p, line)), 1.0, 1e-12);
    // Pair slopes (0.4-0.2, 0.6-0.2, 0.6-0.4): -1, -0.5, 0.
    const std::vector<double> bent{1.0, 0.8, 0.8};
    EXPECT_NEAR(decay_rate(p, bent), -0.5, 1e-12);
    const std::vector<double> one{0.2};
    EXPECT_THROW(decay_rate(one, one), std::domain_error);
}

TEST(sampling, fit_bounds_identity_line) {
    std::vector<double> x, y;
    for (int i = 0; i <= 100; ++i) {
        x.push_back(i / 100.0);
        y.push_back(i / 100.0);
    }
    const BoundFit f = fit_bounds(x, y, 10);
    EXPECT_NEAR(f.m_u, 1.0, 1e-12);
    EXPECT_NEAR(f.m_l, 1.0, 1e-12);
    EXPECT_NEAR(f.c_u, 0.0, 1e-12);
    EXPECT_NEAR(f.c_l, 0.0, 1e-12);
    EXPECT_NEAR(f.residual, 0.0, 1e-12);
}

TEST(sampling, fit_bounds_wedge) {
    // Points fill the wedge 0.5 x <= y <= x.
    std::vector<double> x, y;
    for (int i = 1; i <= 200; ++i) {
        for (double f : {0.5, 0.7, 1.0}) {
            x.push_back(i / 200.0);
            y.push_back(f * i / 200.0);
        }
    }
    const BoundFit b = fit_bounds(x, y, 20);
    EXPECT_NEAR(b.m_u, 1.0, 1e-9);
    EXPECT_NEAR(b.m_l, 0.5, 1e-9);
    EXPECT_EQ(b.used_bins, 20);
}

TEST(sampling, fit_bounds_too_few_bins) {
    const std::vector<double> x{0.1, 0.2}, y{0.1, 0.2};
    EXPECT_THROW(fit_bounds(x, y, 10), std::invalid_argument);
}

TEST(sampling, sweep_independent_of_threads) {
    SweepSpec spec;
    spec.sampler.count = 40;
    spec.sampler.master_seed = 77;
    spec.channel = ChannelKind::kAmplitudeDamping;
    spec.p_values = {0.1, 0.5};
    spec.measures = {MeasureKind::kCmax, MeasureKind::kClassicalDiscord, MeasureKind::kEoF};
    spec.threads = 1;
    const auto a = ensemble_sweep(spec);
    spec.threads = 4;
    const auto b = ensemble_sweep(spec);
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].mean, b[i].mean);
        EXPECT_EQ(a[i].std_dev, b[i].std_dev);
        EXPECT_EQ(a[i].histogram.frequencies, b[i].histogram.frequencies);
    }
}

TEST(sampling, dpc_discord_mean_falls_with_p) {
    SweepSpec spec;
    spec.sampler.count = 150;
    spec.sampler.master_seed = 3;
    spec.channel = ChannelKind::kDepolarizing;
    spec.p_values = {0.0, 0.2, 0.4, 0.6};
    spec.measures = {MeasureKind::kClassicalDiscord};
    const auto s = ensemble_sweep(spec);
    for (size_t i = 1; i < s.size(); ++i) {
        EXPECT_LE(s[i].mean, s[i - 1].mean + 1e-12);
    }
}

TEST(sampling, koashi_winter_inline_check) {
    SweepSpec spec;
    spec.sampler.count = 30;
    spec.sampler.master_seed = 8;
    spec.measures = {MeasureKind::kEoF, MeasureKind::kClassicalDiscord};
    const EnsembleValues ev = evaluate_ensemble(spec, 0.3);
    EXPECT_EQ(ev.koashi_winter_checked, 30);
    EXPECT_EQ(ev.koashi_winter_violations, 0);
    EXPECT_LE(ev.koashi_winter_max_gap, 1e-8);
}
