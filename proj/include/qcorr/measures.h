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

// Bipartite correlation measures on two-qubit states and their sums over
// nodal pairs. All entropies are in bits.

#ifndef QCORR_MEASURES_H
#define QCORR_MEASURES_H

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcorr/correlators.h"
#include "qcorr/state.h"

namespace qcorr {

/// Rank-1 projector pair (I +- n.sigma)/2 with n at Bloch angles (theta, phi).
struct MeasurementBasis {
    double theta = 0.0;
    double phi = 0.0;

    Eigen::Vector3d direction() const;
    /// Folds arbitrary angles into theta in [0, pi], phi in [0, 2 pi).
    static MeasurementBasis canonical(double theta, double phi);
};

enum class MeasureKind {
    kCmax,
    kGenuineCmax,
    kClassicalDiscord,
    kLocalWork,
    kQuantumDiscord,
    kMutualInfo,
    kLogNegativity,
    kEoF,
};

/// Short names: cmax, gcmax, cd, lw, qd, mi, ln, eof.
std::string measure_name(MeasureKind kind);
MeasureKind parse_measure_kind(std::string_view name);

enum class MeasuredSide { kFirst, kSecond };

struct DiscordOptions {
    int phi_points = 60;
    int theta_points = 30;
    bool refine = true;
    int starts = 3;
    double tolerance = 1e-7;
    int max_iterations = 400;
};

struct OptimizedMeasure {
    double value = 0.0;
    /// One basis per measured qubit (one for discord, two for local work).
    std::vector<MeasurementBasis> basis;
    bool converged = true;
};

/// Local-Bloch form rho = 1/4 (I + r.sigma x I + I x s.sigma + T_kl sigma_k x sigma_l).
struct BlochForm {
    Eigen::Vector3d r;
    Eigen::Vector3d s;
    Eigen::Matrix3d t;
};
BlochForm bloch_form(const DensityMatrix &rho2);

double mutual_information(const DensityMatrix &rho2);

OptimizedMeasure classical_discord(const DensityMatrix &rho2, MeasuredSide side, const DiscordOptions &opts = {});

/// I - CD with the same measured side, clipped at 0.
OptimizedMeasure quantum_discord(const DensityMatrix &rho2, MeasuredSide side, const DiscordOptions &opts = {});

enum class LocalWorkVariant {
    kTwoSided,  // 2 - min S after dephasing both qubits in product bases
    kOneSided,  // 2 - min S after dephasing only the measured side
};

OptimizedMeasure local_work(const DensityMatrix &rho2, LocalWorkVariant variant = LocalWorkVariant::kTwoSided,
                            MeasuredSide side = MeasuredSide::kSecond, const DiscordOptions &opts = {});

double log_negativity(const DensityMatrix &rho2);
double concurrence(const DensityMatrix &rho2);
double entanglement_of_formation(const DensityMatrix &rho2);

enum class Direction {
    kPartner,  // measure the non-nodal qubit of each pair
    kNodal,    // measure the nodal qubit
};

struct MeasureOptions {
    Direction direction = Direction::kPartner;
    LocalWorkVariant lw_variant = LocalWorkVariant::kTwoSided;
    /// Report local work in units of log2(4), i.e. in [0, 1].
    bool lw_normalized = false;
    SearchMode cmax_mode = SearchMode::kSamePauli;
    DiscordOptions discord;
};

/// A measure together with its options. The text form is the short name
/// followed by modifiers that differ from the defaults, e.g. "cd:nodal",
/// "lw:one_sided:normalized", "cmax:full".
struct MeasureSpec {
    MeasureKind kind = MeasureKind::kCmax;
    MeasureOptions options;

    MeasureSpec() = default;
    MeasureSpec(MeasureKind k) : kind(k) {}  // NOLINT: implicit on purpose
    MeasureSpec(MeasureKind k, MeasureOptions o) : kind(k), options(std::move(o)) {}

    std::string label() const;
};

/// Throws std::invalid_argument on unknown names or modifiers that do not
/// apply to the measure.
MeasureSpec parse_measure_spec(std::string_view text);

/// Two-qubit reductions (nodal, i) for every i != nodal, in ascending i.
/// The nodal qubit is always the first factor.
std::vector<DensityMatrix> nodal_pairs(const DensityMatrix &rho, int nodal);

/// The pairwise measure on one nodal pair (nodal qubit first).
double pair_measure(const DensityMatrix &pair, MeasureKind kind, const MeasureOptions &opts = {});

/// Sum of the pairwise measure over all nodal pairs. kGenuineCmax has no
/// distributed form and returns the genuine maximum of the whole state.
double distributed_measure(const DensityMatrix &rho, MeasureKind kind, int nodal = 0,
                           const MeasureOptions &opts = {});

double distributed_measure(const DensityMatrix &rho, const MeasureSpec &spec, int nodal = 0);

struct KoashiWinter {
    double lhs;
    double bound;
    bool holds;
};

/// sum_i EoF(nodal, B_i) + CD(nodal, B_{i+1}) measured on B_{i+1}, cyclic,
/// against (N-1) S(nodal). Requires N >= 3.
KoashiWinter koashi_winter_check(const DensityMatrix &rho, int nodal = 0, const DiscordOptions &opts = {});

}  // namespace qcorr

#endif
