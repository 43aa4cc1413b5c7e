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

// Experiment configuration, execution and persistence.

#ifndef QCORR_HARNESS_H
#define QCORR_HARNESS_H

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcorr/channels.h"
#include "qcorr/measures.h"
#include "qcorr/sampling.h"

namespace qcorr {

enum class ExperimentType {
    kSweep,           // distribution summaries per (N, ensemble, channel, measure, p)
    kWTrace,          // all-Z genuine correlator of |W^N> against p
    kBounds,          // D^CD vs D^I bound lines
    kDecay,           // decay rates of ensemble means
    kDiscrimination,  // channel identification success rates
    kKoashiWinter,    // bound check over noisy ensembles
    kOracleCheck,     // closed forms against the channel engine
};

std::string experiment_type_name(ExperimentType t);

struct ExperimentConfig {
    std::string id;
    ExperimentType type = ExperimentType::kSweep;
    std::vector<int> n_qubits{3};
    std::vector<Ensemble> ensembles{Ensemble::kHaar};
    int64_t count = 1000;
    uint64_t seed = 0;
    bool wclass_real_amplitudes = false;
    std::vector<ChannelKind> channels;
    std::vector<double> p_values;
    std::vector<MeasureSpec> measures;
    int nodal = 0;  // 0-based here, 1-based in JSON
    int bins = 50;
    int fit_bins = 30;
    double min_bin_fraction = 0.01;
    int trials = 100;
    double noise_sigma = 0.0;
    double threshold = 0.02;
    std::string output_dir;
};

/// Strict parse: unknown keys, bad enum names, p outside [0, 1] and missing
/// fields required by the experiment type all throw std::invalid_argument.
ExperimentConfig parse_config(const nlohmann::json &j);
ExperimentConfig load_config(const std::filesystem::path &path);

/// Canonical JSON with every field spelled out; keys sorted.
nlohmann::json config_to_json(const ExperimentConfig &cfg);

/// FNV-1a 64 over the canonical JSON, output_dir excluded. Hex string.
std::string config_hash(const ExperimentConfig &cfg);

struct RunOptions {
    int threads = 1;
    /// Overrides cfg.output_dir when non-empty.
    std::filesystem::path output_dir;
};

struct RunManifest {
    std::string experiment_id;
    std::string config_hash;
    std::string artifact_version;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> outputs;  // file names relative to the output directory
    nlohmann::json summary;

    nlohmann::json to_json() const;
};

/// Writes every output plus <id>_manifest.json. On failure the files
/// written so far are removed and the error is rethrown with context.
RunManifest run_experiment(const ExperimentConfig &cfg, const RunOptions &opts = {});

/// --out flag, then $QCORR_OUTPUT_DIR, then cfg.output_dir, then "results".
std::filesystem::path resolve_output_dir(const ExperimentConfig &cfg, const std::string &flag);

/// Bundled recipes live in $QCORR_RECIPE_DIR or the source tree's recipes/.
std::filesystem::path recipe_dir();
std::vector<std::string> list_recipes();
ExperimentConfig load_recipe(const std::string &name);

struct OracleCell {
    std::string check;
    int n;
    int k;
    double p;
    double max_dev;
};

struct OracleCheckOptions {
    std::vector<int> n_values{2, 3, 4, 5};
    std::vector<double> p_values{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    int states = 100;
    uint64_t seed = 0;
    double tolerance = 1e-10;
    /// Builds the channels used on the numeric side; swap in a faulty one
    /// to check that the sweep notices.
    std::function<KrausChannel(ChannelKind, double)> channel_factory = make_channel;
};

struct OracleReport {
    std::vector<OracleCell> cells;
    double tolerance = 1e-10;

    bool passed() const;
    double max_deviation(const std::string &check) const;
    std::string csv() const;
};

OracleReport verify_oracles(const OracleCheckOptions &opts = {});

}  // namespace qcorr

#endif
