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

#ifndef QCORR_CORRELATORS_H
#define QCORR_CORRELATORS_H

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcorr/state.h"

namespace qcorr {

/// Per-site Pauli labels selecting one correlator; identity marks a neutral
/// site. At least one label is non-identity.
class CorrelatorIndex {
   public:
    explicit CorrelatorIndex(std::vector<Pauli> labels);

    /// Parses strings like "zzz" or "xy.z"; '.' is the identity.
    static CorrelatorIndex parse(std::string_view text);
    static CorrelatorIndex uniform(Pauli p, int n_sites);

    const std::vector<Pauli> &labels() const {
        return labels_;
    }
    int size() const {
        return static_cast<int>(labels_.size());
    }
    bool genuine() const;
    std::string str() const;

    bool operator==(const CorrelatorIndex &other) const = default;

   private:
    std::vector<Pauli> labels_;
};

enum class SearchMode {
    kSamePauli,   // all-X, all-Y, all-Z
    kFullSearch,  // every assignment of X/Y/Z per site, up to kMaxFullSearchSites
};

inline constexpr int kMaxFullSearchSites = 6;

SearchMode parse_search_mode(std::string_view name);

/// |tr(sigma_idx rho)|, the rescaled correlator in [0, 1].
double correlator(const DensityMatrix &rho, const CorrelatorIndex &idx);
/// Signed tr(sigma_idx rho) in [-1, 1].
double raw_correlator(const DensityMatrix &rho, const CorrelatorIndex &idx);

struct CorrelatorMax {
    double value = 0.0;
    CorrelatorIndex argmax;
    /// Other candidates within 1e-12 of the maximum, in search order.
    std::vector<CorrelatorIndex> ties;
};

/// Maximum over genuine correlators on all sites of rho. Ties resolve to the
/// first candidate in X < Y < Z order, leftmost site most significant.
CorrelatorMax genuine_max(const DensityMatrix &rho, SearchMode mode = SearchMode::kSamePauli);

/// genuine_max of the reduced state on `keep`; requires |keep| < n.
CorrelatorMax nongenuine_max(const DensityMatrix &rho, const QubitSubset &keep,
                             SearchMode mode = SearchMode::kSamePauli);

/// The family of maximal correlators over every subset size.
struct CorrelatorSet {
    struct Entry {
        QubitSubset subset;
        CorrelatorMax max;
    };
    /// levels[k-1] lists every k-qubit subset (lexicographic) with its maximum.
    std::vector<std::vector<Entry>> levels;
};

CorrelatorSet correlator_set(const DensityMatrix &rho, SearchMode mode = SearchMode::kSamePauli);

/// Sum over partners i != nodal of the pair correlator on (nodal, i), with
/// `labels.first` on the nodal qubit.
double distributed_correlator(const DensityMatrix &rho, std::pair<Pauli, Pauli> labels, int nodal = 0);

/// Sum over partners of the pairwise maximal correlator.
double distributed_cmax(const DensityMatrix &rho, int nodal = 0, SearchMode mode = SearchMode::kSamePauli);

}  // namespace qcorr

#endif
