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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcorr/channels.h"
#include "qcorr/correlators.h"
#include "qcorr/discrimination.h"
#include "qcorr/harness.h"
#include "qcorr/io.h"
#include "qcorr/measures.h"
#include "qcorr/named_states.h"
#include "qcorr/oracles.h"
#include "qcorr/sampling.h"

using nlohmann::json;
using namespace qcorr;

namespace {

struct Globals {
    std::optional<uint64_t> seed;
    int threads = 1;
    std::string out;
};

int run_config(ExperimentConfig cfg, const Globals &g) {
    if (g.seed) {
        cfg.seed = *g.seed;
    }
    RunOptions opts;
    opts.threads = g.threads;
    opts.output_dir = resolve_output_dir(cfg, g.out);
    const RunManifest m = run_experiment(cfg, opts);
    std::cout << m.to_json().dump(2) << "\n";
    if (cfg.type == ExperimentType::kOracleCheck && !m.summary.value("passed", false)) {
        return 1;
    }
    if (cfg.type == ExperimentType::kKoashiWinter && m.summary.value("violations", int64_t{0}) != 0) {
        return 1;
    }
    return 0;
}

json basis_json(const std::vector<MeasurementBasis> &bases) {
    json out = json::array();
    for (const MeasurementBasis &b : bases) {
        const Eigen::Vector3d d = b.direction();
        out.push_back({{"theta", b.theta}, {"phi", b.phi}, {"direction", {d.x(), d.y(), d.z()}}});
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Classical correlators and correlation measures of noisy multiqubit states"};
    app.require_subcommand(1);
    Globals g;
    uint64_t seed_value = 0;
    auto *seed_opt = app.add_option("--seed", seed_value, "Override the experiment seed");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 256));
    app.add_option("--out", g.out, "Output directory (default: $QCORR_OUTPUT_DIR, then the config, then results)");

    // sweep
    auto *sweep = app.add_subcommand("sweep", "Run an experiment config");
    std::string config_path;
    sweep->add_option("--config", config_path, "Experiment JSON")->required();

    // recipe
    auto *recipe = app.add_subcommand("recipe", "Run a bundled recipe");
    std::string recipe_name;
    recipe->add_option("name", recipe_name, "Recipe name; 'list' prints the available ones")->required();

    // oracle
    auto *oracle = app.add_subcommand("oracle", "Print a closed-form correlator multiplier");
    std::string oracle_channel;
    int oracle_n = 0, oracle_k = 0;
    double oracle_p = 0.0;
    oracle->add_option("--channel", oracle_channel, "pdc|dpc|adc")->required();
    oracle->add_option("--N", oracle_n, "Number of qubits")->required()->check(CLI::Range(1, kMaxQubits));
    oracle->add_option("--k", oracle_k, "Correlator sites")->required()->check(CLI::Range(1, kMaxQubits));
    oracle->add_option("--p", oracle_p, "Noise strength")->required()->check(CLI::Range(0.0, 1.0));

    // oracle-check
    auto *oracle_check = app.add_subcommand("oracle-check", "Compare every closed form against the channel engine");
    int oc_states = 100;
    oracle_check->add_option("--states", oc_states, "Haar states per cell")->check(CLI::PositiveNumber);

    // measure
    auto *measure = app.add_subcommand("measure", "Evaluate a correlation measure on a state file");
    std::string state_path, kind_name, direction = "right";
    int nodal = 1;
    measure->add_option("--state", state_path, "State JSON")->required();
    measure->add_option("--kind", kind_name, "cd|lw|mi|qd|ln|eof|cmax|gcmax, with modifiers such as lw:one_sided")
        ->required();
    measure->add_option("--nodal", nodal, "Nodal qubit (1-based)");
    measure->add_option("--direction", direction, "right measures the partner, left the nodal qubit")
        ->check(CLI::IsMember({"left", "right"}));

    // correlators
    auto *corr = app.add_subcommand("correlators", "Pauli correlators of a state file");
    std::string corr_state, corr_index, corr_mode = "same";
    corr->add_option("--state", corr_state, "State JSON")->required();
    corr->add_option("--index", corr_index, "Pauli string such as zzz or xy.z; omit for the maximum");
    corr->add_option("--mode", corr_mode, "same|full")->check(CLI::IsMember({"same", "full"}));

    // discriminate
    auto *disc = app.add_subcommand("discriminate", "Identify the channel from a correlator trace");
    std::string trace_path, disc_channel = "adc", probe_kind = "gw";
    bool simulate = false;
    int disc_n = 3;
    double alpha = 0.6, beta = 0.9, gamma1 = 0.0, gamma2 = 0.0, theta = 1.0, phi = 0.0, sigma = 0.0;
    double threshold = 0.02;
    std::vector<double> p_values;
    disc->add_option("--trace", trace_path, "CSV with p, c_before, c_after (optionally x_before, x_after)");
    disc->add_flag("--simulate", simulate, "Generate the trace from a channel");
    disc->add_option("--channel", disc_channel, "pdc|dpc|adc (with --simulate)");
    disc->add_option("--probe", probe_kind, "gw|gghz")->check(CLI::IsMember({"gw", "gghz"}));
    disc->add_option("--N", disc_n, "Probe qubits")->check(CLI::Range(2, kMaxQubits));
    disc->add_option("--alpha", alpha, "gW3 amplitude angle");
    disc->add_option("--beta", beta, "gW3 amplitude angle");
    disc->add_option("--gamma1", gamma1, "gW3 phase");
    disc->add_option("--gamma2", gamma2, "gW3 phase");
    disc->add_option("--theta", theta, "gGHZ angle");
    disc->add_option("--phi", phi, "gGHZ phase");
    disc->add_option("--p", p_values, "Noise strengths")->delimiter(',');
    disc->add_option("--noise", sigma, "Gaussian measurement noise on each correlator")->check(CLI::NonNegativeNumber);
    disc->add_option("--threshold", threshold, "Minimum residual margin")->check(CLI::NonNegativeNumber);

    // fit-bounds
    auto *fit = app.add_subcommand("fit-bounds", "Fit upper and lower bound lines to (D^I, D^CD) pairs");
    std::string fit_path;
    int fit_bins = 30;
    double min_fraction = 0.01;
    fit->add_option("csv", fit_path, "Two-column CSV: mutual information, classical discord")->required();
    fit->add_option("--bins", fit_bins, "Bins along the x axis")->check(CLI::Range(3, 100000));
    fit->add_option("--min-bin-fraction", min_fraction, "Skip bins holding less than this share of points");

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count() > 0) {
        g.seed = seed_value;
    }

    try {
        if (sweep->parsed()) {
            return run_config(load_config(config_path), g);
        }
        if (recipe->parsed()) {
            if (recipe_name == "list") {
                for (const std::string &n : list_recipes()) {
                    std::cout << n << "\n";
                }
                return 0;
            }
            return run_config(load_recipe(recipe_name), g);
        }
        if (oracle->parsed()) {
            if (oracle_k > oracle_n) {
                throw std::invalid_argument("--k must not exceed --N");
            }
            const ChannelKind ch = parse_channel_kind(oracle_channel);
            json out{{"channel", channel_name(ch)}, {"N", oracle_n}, {"k", oracle_k}, {"p", oracle_p}};
            switch (ch) {
                case ChannelKind::kPhaseDamping:
                    out["xy_multiplier"] = pdc_xy_multiplier(oracle_n, oracle_k, oracle_p);
                    out["z_multiplier"] = 1.0;
                    break;
                case ChannelKind::kDepolarizing:
                    out["multiplier"] = dpc_genuine_multiplier(oracle_k, oracle_p, Convention::kSigned);
                    break;
                case ChannelKind::kAmplitudeDamping:
                    out["xy_multiplier"] = adc_xy_multiplier(oracle_k, oracle_p);
                    break;
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (oracle_check->parsed()) {
            OracleCheckOptions o;
            o.states = oc_states;
            if (g.seed) {
                o.seed = *g.seed;
            }
            const OracleReport r = verify_oracles(o);
            std::cout << r.csv();
            return r.passed() ? 0 : 1;
        }
        if (measure->parsed()) {
            const DensityMatrix rho = load_state(state_path);
            MeasureSpec spec = parse_measure_spec(kind_name);
            if (direction == "left") {
                spec.options.direction = Direction::kNodal;
            }
            if (nodal < 1 || nodal > rho.n_qubits()) {
                throw std::invalid_argument("--nodal must lie in 1.." + std::to_string(rho.n_qubits()));
            }
            json out{{"kind", spec.label()}, {"n_qubits", rho.n_qubits()}, {"nodal", nodal}};
            const bool optimized = spec.kind == MeasureKind::kClassicalDiscord ||
                                   spec.kind == MeasureKind::kQuantumDiscord || spec.kind == MeasureKind::kLocalWork;
            if (rho.n_qubits() == 2 && optimized) {
                // Report the optimal basis for a single pair.
                const DensityMatrix pair = nodal_pairs(rho, nodal - 1).front();
                const MeasuredSide side =
                    spec.options.direction == Direction::kPartner ? MeasuredSide::kSecond : MeasuredSide::kFirst;
                OptimizedMeasure m;
                if (spec.kind == MeasureKind::kClassicalDiscord) {
                    m = classical_discord(pair, side, spec.options.discord);
                } else if (spec.kind == MeasureKind::kQuantumDiscord) {
                    m = quantum_discord(pair, side, spec.options.discord);
                } else {
                    m = local_work(pair, spec.options.lw_variant, side, spec.options.discord);
                    if (spec.options.lw_normalized) {
                        m.value /= 2.0;
                    }
                }
                out["value"] = m.value;
                out["argmax_basis"] = basis_json(m.basis);
                out["converged"] = m.converged;
            } else {
                out["value"] = distributed_measure(rho, spec, nodal - 1);
                out["converged"] = true;
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (corr->parsed()) {
            const DensityMatrix rho = load_state(corr_state);
            const SearchMode mode = parse_search_mode(corr_mode);
            json out{{"n_qubits", rho.n_qubits()}};
            if (!corr_index.empty()) {
                const CorrelatorIndex idx = CorrelatorIndex::parse(corr_index);
                out["index"] = idx.str();
                out["value"] = correlator(rho, idx);
                out["raw"] = raw_correlator(rho, idx);
            } else {
                const CorrelatorMax m = genuine_max(rho, mode);
                out["mode"] = corr_mode;
                out["cmax"] = m.value;
                out["argmax"] = m.argmax.str();
                if (rho.n_qubits() >= 2) {
                    out["distributed_cmax"] = distributed_cmax(rho, 0, mode);
                }
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (disc->parsed()) {
            ProbeState probe;
            if (probe_kind == "gghz") {
                probe = ProbeState::gghz(disc_n, theta, phi);
            } else if (disc_n == 3) {
                probe = ProbeState::gw3(alpha, beta, gamma1, gamma2);
            } else {
                std::vector<Complex> amps(static_cast<size_t>(disc_n), Complex(1.0 / std::sqrt(disc_n), 0.0));
                probe = ProbeState::gw(amps);
            }
            ProbeTrace trace;
            if (simulate == !trace_path.empty()) {
                throw std::invalid_argument("give exactly one of --trace and --simulate");
            }
            if (simulate) {
                if (p_values.empty()) {
                    for (int i = 0; i <= 10; ++i) {
                        p_values.push_back(i / 10.0);
                    }
                }
                TraceOptions to;
                to.noise_sigma = sigma;
                to.seed = g.seed.value_or(0);
                trace = generate_probe_trace(probe, parse_channel_kind(disc_channel), p_values, to);
            } else {
                const NumericCsv csv = read_numeric_csv(trace_path);
                const auto &p = csv.column("p");
                const auto &cb = csv.column("c_before");
                const auto &ca = csv.column("c_after");
                trace.probe = probe;
                for (size_t i = 0; i < p.size(); ++i) {
                    trace.z.push_back({p[i], cb[i], ca[i]});
                }
                bool has_x = false;
                for (const std::string &h : csv.header) {
                    has_x = has_x || h == "x_before";
                }
                if (has_x) {
                    const auto &xb = csv.column("x_before");
                    const auto &xa = csv.column("x_after");
                    for (size_t i = 0; i < p.size(); ++i) {
                        trace.x.push_back({p[i], xb[i], xa[i]});
                    }
                }
            }
            ClassifyOptions co;
            co.threshold = threshold;
            const DiscriminationVerdict v = classify(trace, co);
            json out{{"verdict", verdict_name(v.label)},
                     {"reason", v.reason},
                     {"residuals", {{"PDC", v.residuals[0]}, {"ADC", v.residuals[1]}, {"DPC", v.residuals[2]}}},
                     {"threshold", threshold}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (fit->parsed()) {
            const NumericCsv csv = read_numeric_csv(fit_path);
            if (csv.columns.size() != 2) {
                throw std::invalid_argument(fit_path + ": expected two columns");
            }
            const BoundFit f = fit_bounds(csv.columns[0], csv.columns[1], fit_bins, min_fraction);
            json out{{"m_u", f.m_u},         {"c_u", f.c_u},           {"m_l", f.m_l},
                     {"c_l", f.c_l},         {"bins", f.bin_count},    {"used_bins", f.used_bins},
                     {"residual", f.residual}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
