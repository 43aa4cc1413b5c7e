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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr double kTieTolerance = 1e-12;

std::vector<CorrelatorIndex> candidates(int n_sites, SearchMode mode) {
    std::vector<CorrelatorIndex> out;
    if (mode == SearchMode::kSamePauli) {
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            out.push_back(CorrelatorIndex::uniform(p, n_sites));
        }
        return out;
    }
    if (n_sites > kMaxFullSearchSites) {
        throw std::invalid_argument("full correlator search supports at most " +
                                    std::to_string(kMaxFullSearchSites) + " sites");
    }
    int total = 1;
    for (int i = 0; i < n_sites; ++i) {
        total *= 3;
    }
    out.reserve(static_cast<size_t>(total));
    for (int code = 0; code < total; ++code) {
        std::vector<Pauli> labels(static_cast<size_t>(n_sites));
        int rest = code;
        for (int site = n_sites - 1; site >= 0; --site) {
            labels[static_cast<size_t>(site)] = static_cast<Pauli>(1 + rest % 3);
            rest /= 3;
        }
        out.emplace_back(std::move(labels));
    }
    return out;
}

void subsets_of_size(int n, int k, int start, std::vector<int> &current, std::vector<std::vector<int>> &out) {
    if (static_cast<int>(current.size()) == k) {
        out.push_back(current);
        return;
    }
    for (int q = start; q < n; ++q) {
        current.push_back(q);
        subsets_of_size(n, k, q + 1, current, out);
        current.pop_back();
    }
}

}  // namespace

CorrelatorIndex::CorrelatorIndex(std::vector<Pauli> labels) : labels_(std::move(labels)) {
    if (std::none_of(labels_.begin(), labels_.end(), [](Pauli p) { return p != Pauli::I; })) {
        throw std::invalid_argument("correlator index needs at least one non-identity label");
    }
}

CorrelatorIndex CorrelatorIndex::parse(std::string_view text) {
    std::vector<Pauli> labels;
    labels.reserve(text.size());
    for (char c : text) {
        labels.push_back(pauli_from_char(c));
    }
    return CorrelatorIndex(std::move(labels));
}

CorrelatorIndex CorrelatorIndex::uniform(Pauli p, int n_sites) {
    return CorrelatorIndex(std::vector<Pauli>(static_cast<size_t>(n_sites), p));
}

bool CorrelatorIndex::genuine() const {
    return std::none_of(labels_.begin(), labels_.end(), [](Pauli p) { return p == Pauli::I; });
}

std::string CorrelatorIndex::str() const {
    std::string s;
    for (Pauli p : labels_) {
        s.push_back(pauli_char(p));
    }
    return s;
}

SearchMode parse_search_mode(std::string_view name) {
    if (name == "same" || name == "same_pauli") {
        return SearchMode::kSamePauli;
    }
    if (name == "full" || name == "full_search") {
        return SearchMode::kFullSearch;
    }
    throw std::invalid_argument("unknown search mode '" + std::string(name) + "' (expected same|full)");
}

double raw_correlator(const DensityMatrix &rho, const CorrelatorIndex &idx) {
    if (idx.size() != rho.n_qubits()) {
        throw std::invalid_argument("correlator index has " + std::to_string(idx.size()) + " labels for a " +
                                    std::to_string(rho.n_qubits()) + "-qubit state");
    }
    return pauli_expectation(rho, idx.labels());
}

double correlator(const DensityMatrix &rho, const CorrelatorIndex &idx) {
    return std::min(1.0, std::abs(raw_correlator(rho, idx)));
}

CorrelatorMax genuine_max(const DensityMatrix &rho, SearchMode mode) {
    std::vector<CorrelatorIndex> cands = candidates(rho.n_qubits(), mode);
    std::vector<double> values(cands.size());
    for (size_t i = 0; i < cands.size(); ++i) {
        values[i] = correlator(rho, cands[i]);
    }
    size_t best = 0;
    for (size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best] + kTieTolerance) {
            best = i;
        }
    }
    CorrelatorMax out{values[best], cands[best], {}};
    for (size_t i = 0; i < values.size(); ++i) {
        if (i != best && std::abs(values[i] - values[best]) <= kTieTolerance) {
            out.ties.push_back(cands[i]);
        }
    }
    return out;
}

CorrelatorMax nongenuine_max(const DensityMatrix &rho, const QubitSubset &keep, SearchMode mode) {
    if (static_cast<int>(keep.size()) >= rho.n_qubits()) {
        throw std::invalid_argument("non-genuine maximum needs a proper subset of the qubits");
    }
    return genuine_max(partial_trace(rho, keep), mode);
}

CorrelatorSet correlator_set(const DensityMatrix &rho, SearchMode mode) {
    const int n = rho.n_qubits();
    CorrelatorSet out;
    out.levels.resize(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<int>> subsets;
        std::vector<int> current;
        subsets_of_size(n, k, 0, current, subsets);
        for (auto &s : subsets) {
            QubitSubset subset(std::move(s), n);
            CorrelatorMax m = k == n ? genuine_max(rho, mode) : nongenuine_max(rho, subset, mode);
            out.levels[static_cast<size_t>(k - 1)].push_back({std::move(subset), std::move(m)});
        }
    }
    return out;
}

double distributed_correlator(const DensityMatrix &rho, std::pair<Pauli, Pauli> labels, int nodal) {
    const int n = rho.n_qubits();
    if (nodal < 0 || nodal >= n) {
        throw std::out_of_range("nodal qubit outside register");
    }
    const CorrelatorIndex idx({labels.first, labels.second});
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i != nodal) {
            total += correlator(partial_trace(rho, QubitSubset::pair(nodal, i, n)), idx);
        }
    }
    return total;
}

double distributed_cmax(const DensityMatrix &rho, int nodal, SearchMode mode) {
    const int n = rho.n_qubits();
    if (nodal < 0 || nodal >= n) {
        throw std::out_of_range("nodal qubit outside register");
    }
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i != nodal) {
            total += genuine_max(partial_trace(rho, QubitSubset::pair(nodal, i, n)), mode).value;
        }
    }
    return total;
}

}  // namespace qcorr
