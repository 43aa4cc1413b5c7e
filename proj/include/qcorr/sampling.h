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

#ifndef QCORR_SAMPLING_H
#define QCORR_SAMPLING_H

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/channels.h"
#include "qcorr/measures.h"
#include "qcorr/state.h"

namespace qcorr {

enum class Ensemble { kHaar, kWClass };

std::string ensemble_name(Ensemble e);
Ensemble parse_ensemble(std::string_view name);

struct SamplerConfig {
    int n_qubits = 3;
    Ensemble ensemble = Ensemble::kHaar;
    int64_t count = 1000;
    uint64_t master_seed = 0;
    /// W-class only: draw real Gaussian amplitudes instead of complex ones.
    bool wclass_real_amplitudes = false;

    /// Throws std::invalid_argument (or std::domain_error for a W-class
    /// register that is not 3 qubits).
    void validate() const;
};

/// splitmix64 finalizer over (master_seed, index). Every sample owns its
/// generator, so results do not depend on how samples are scheduled.
uint64_t sample_seed(uint64_t master_seed, uint64_t index);

/// The index-th state of the configured ensemble.
PureState sample_state(const SamplerConfig &cfg, uint64_t index);

std::vector<PureState> sample_haar(const SamplerConfig &cfg);
/// Throws std::domain_error unless cfg.n_qubits == 3.
std::vector<PureState> sample_w_class(const SamplerConfig &cfg);

struct Histogram {
    std::vector<double> edges;        // bins + 1 entries
    std::vector<double> frequencies;  // sums to 1
};

/// Uniform bins over [min, max] of the data; the last bin is closed.
Histogram histogram(std::span<const double> values, int bins);

struct DistributionSummary {
    MeasureSpec measure;
    ChannelKind channel = ChannelKind::kPhaseDamping;
    double p = 0.0;
    int64_t n = 0;
    int64_t failures = 0;
    double mean = 0.0;
    double std_dev = 0.0;  // population
    double median = 0.0;
    double skewness = 0.0;  // 3 (mean - median) / std_dev
    double moment_skewness = 0.0;
    double min = 0.0;
    double max = 0.0;
    Histogram histogram;
};

/// Statistics of the finite entries of `values`; NaN entries count as
/// failures.
DistributionSummary summarize(std::span<const double> values, int bins = 50);

struct SweepSpec {
    SamplerConfig sampler;
    ChannelKind channel = ChannelKind::kPhaseDamping;
    std::vector<double> p_values;
    std::vector<MeasureSpec> measures;
    int nodal = 0;
    int bins = 50;
    int threads = 1;
};

struct EnsembleValues {
    double p = 0.0;
    /// values[m][i] is measure m on sample i; NaN if evaluation failed.
    std::vector<std::vector<double>> values;
    /// Opportunistic bound check, run when both EoF and partner-side CD
    /// are among the requested measures.
    int64_t koashi_winter_checked = 0;
    int64_t koashi_winter_violations = 0;
    /// Largest lhs - bound seen; negative when every check holds strictly.
    double koashi_winter_max_gap = -std::numeric_limits<double>::infinity();
};

EnsembleValues evaluate_ensemble(const SweepSpec &spec, double p);

/// One summary per (p, measure), p-major.
std::vector<DistributionSummary> ensemble_sweep(const SweepSpec &spec);

/// Mean over ordered pairs p1 < p2 of (mean(p2) - mean(p1)) / (p2 - p1).
/// Throws std::domain_error with fewer than two points.
double decay_rate(std::span<const double> p_values, std::span<const double> means);
double decay_rate(std::span<const DistributionSummary> summaries);

/// Decay quoted as a positive rate.
inline double decay_magnitude(double slope_average) {
    return -slope_average;
}

struct BoundFit {
    double m_u = 0.0;
    double c_u = 0.0;
    double m_l = 0.0;
    double c_l = 0.0;
    int bin_count = 0;
    int used_bins = 0;
    double residual = 0.0;  // RMS over both lines
};

/// Bins x uniformly, takes the point of largest and smallest y in every
/// non-empty bin and fits a least-squares line through each set. Bins
/// holding fewer than min_bin_fraction of all points are skipped, which
/// keeps the sparse tails from steering the lines. Throws
/// std::invalid_argument when fewer than 3 bins are usable.
BoundFit fit_bounds(std::span<const double> x, std::span<const double> y, int bin_count,
                    double min_bin_fraction = 0.0);

}  // namespace qcorr

#endif
