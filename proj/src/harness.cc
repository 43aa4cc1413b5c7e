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

#include "qcorr/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <ctime>
#include <random>
#include <set>
#include <stdexcept>

#include "qcorr/correlators.h"
#include "qcorr/discrimination.h"
#include "qcorr/io.h"
#include "qcorr/named_states.h"
#include "qcorr/oracles.h"

#ifndef QCORR_VERSION
#define QCORR_VERSION "0.0.0"
#endif

#ifndef QCORR_DEFAULT_RECIPE_DIR
#define QCORR_DEFAULT_RECIPE_DIR "recipes"
#endif

namespace qcorr {

namespace {

using nlohmann::json;

const std::set<std::string> &allowed_keys() {
    static const std::set<std::string> keys{
        "id",       "type",        "n_qubits", "ensemble", "count",     "seed",        "wclass_real_amplitudes",
        "channels", "p_values",    "measures", "nodal",    "bins",      "fit_bins",    "min_bin_fraction",
        "trials",   "noise_sigma", "threshold", "output_dir",
    };
    return keys;
}

ExperimentType parse_type(const std::string &s) {
    for (ExperimentType t : {ExperimentType::kSweep, ExperimentType::kWTrace, ExperimentType::kBounds,
                             ExperimentType::kDecay, ExperimentType::kDiscrimination, ExperimentType::kKoashiWinter,
                             ExperimentType::kOracleCheck}) {
        if (experiment_type_name(t) == s) {
            return t;
        }
    }
    throw std::invalid_argument("unknown experiment type '" + s + "'");
}

// Accepts a scalar or a list.
template <typename T>
std::vector<T> as_list(const json &j) {
    std::vector<T> out;
    if (j.is_array()) {
        for (const auto &e : j) {
            out.push_back(e.get<T>());
        }
    } else {
        out.push_back(j.get<T>());
    }
    return out;
}

void require(bool ok, const std::string &msg) {
    if (!ok) {
        throw std::invalid_argument(msg);
    }
}

std::string file_token(std::string s) {
    for (char &c : s) {
        if (c == ':') {
            c = '-';
        }
    }
    return s;
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

uint64_t fnv1a64(const std::string &s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class OutputSet {
   public:
    explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
    }

    void write(const std::string &name, const std::string &contents) {
        const auto path = dir_ / name;
        // Record first so a partially written file is still cleaned up.
        written_.push_back(name);
        write_text_file(path, contents);
    }

    void remove_all() noexcept {
        for (const std::string &name : written_) {
            std::error_code ec;
            std::filesystem::remove(dir_ / name, ec);
        }
        written_.clear();
    }

    const std::vector<std::string> &names() const {
        return written_;
    }

   private:
    std::filesystem::path dir_;
    std::vector<std::string> written_;
};

SamplerConfig sampler_for(const ExperimentConfig &cfg, int n, Ensemble e) {
    SamplerConfig s;
    s.n_qubits = n;
    s.ensemble = e;
    s.count = cfg.count;
    // Each (N, ensemble) block gets its own stream; channels and p values
    // reuse it, so they see the same input states.
    s.master_seed = sample_seed(cfg.seed, static_cast<uint64_t>(n) * 8 + static_cast<uint64_t>(e));
    s.wclass_real_amplitudes = cfg.wclass_real_amplitudes;
    return s;
}

std::string block_stem(const ExperimentConfig &cfg, const std::string &what, ChannelKind ch, int n, Ensemble e) {
    std::string stem = cfg.id + "_" + file_token(what) + "_" + channel_name(ch) + "_N" + std::to_string(n);
    if (e != Ensemble::kHaar) {
        stem += "_" + ensemble_name(e);
    }
    return stem;
}

void run_sweep(const ExperimentConfig &cfg, const RunOptions &opts, OutputSet &out, json &summary) {
    CsvTable table({"ensemble", "channel", "N", "measure", "p", "n", "failures", "mean", "std", "median", "skewness",
                    "moment_skewness"});
    int64_t kw_checked = 0, kw_violations = 0, failures = 0;
    for (int n : cfg.n_qubits) {
        for (Ensemble e : cfg.ensembles) {
            for (ChannelKind ch : cfg.channels) {
                SweepSpec spec;
                spec.sampler = sampler_for(cfg, n, e);
                spec.channel = ch;
                spec.measures = cfg.measures;
                spec.nodal = cfg.nodal;
                spec.bins = cfg.bins;
                spec.threads = opts.threads;
                std::vector<CsvTable> per_measure(
                    cfg.measures.size(),
                    CsvTable({"p", "mean", "std", "median", "skewness", "moment_skewness", "n", "failures"}));
                for (double p : cfg.p_values) {
                    const EnsembleValues ev = evaluate_ensemble(spec, p);
                    kw_checked += ev.koashi_winter_checked;
                    kw_violations += ev.koashi_winter_violations;
                    for (size_t m = 0; m < cfg.measures.size(); ++m) {
                        const DistributionSummary s = summarize(ev.values[m], cfg.bins);
                        const std::string label = cfg.measures[m].label();
                        failures += s.failures;
                        per_measure[m].row().add(p).add(s.mean).add(s.std_dev).add(s.median).add(s.skewness);
                        per_measure[m].add(s.moment_skewness).add(s.n).add(s.failures);
                        table.row().add(ensemble_name(e)).add(channel_name(ch)).add(n).add(label).add(p).add(s.n);
                        table.add(s.failures).add(s.mean).add(s.std_dev).add(s.median).add(s.skewness);
                        table.add(s.moment_skewness);

                        CsvTable hist({"bin_lo", "bin_hi", "frequency"});
                        for (size_t b = 0; b < s.histogram.frequencies.size(); ++b) {
                            hist.row()
                                .add(s.histogram.edges[b])
                                .add(s.histogram.edges[b + 1])
                                .add(s.histogram.frequencies[b]);
                        }
                        out.write(block_stem(cfg, label, ch, n, e) + "_p" + format_number(p) + "_hist.csv",
                                  hist.str());
                    }
                }
                for (size_t m = 0; m < cfg.measures.size(); ++m) {
                    out.write(block_stem(cfg, cfg.measures[m].label(), ch, n, e) + ".csv", per_measure[m].str());
                }
            }
        }
    }
    out.write(cfg.id + "_table.csv", table.str());
    summary["failures"] = failures;
    summary["koashi_winter_checked"] = kw_checked;
    summary["koashi_winter_violations"] = kw_violations;
}

void run_w_trace(const ExperimentConfig &cfg, OutputSet &out, json &summary) {
    for (int n : cfg.n_qubits) {
        std::vector<std::string> header{"p"};
        for (ChannelKind ch : cfg.channels) {
            header.push_back(channel_name(ch));
        }
        CsvTable zz(header), cmax(header);
        const DensityMatrix w = pure_to_density(w_state(n));
        const CorrelatorIndex zidx = CorrelatorIndex::uniform(Pauli::Z, n);
        bool zz_attains_max = true;
        for (double p : cfg.p_values) {
            zz.row().add(p);
            cmax.row().add(p);
            for (ChannelKind ch : cfg.channels) {
                const DensityMatrix rho = apply_uniform(w, make_channel(ch, p));
                const double cz = correlator(rho, zidx);
                const double cm = genuine_max(rho).value;
                zz_attains_max = zz_attains_max && std::abs(cm - cz) <= 1e-12;
                zz.add(cz);
                cmax.add(cm);
            }
        }
        const std::string stem = cfg.n_qubits.size() == 1 ? cfg.id : cfg.id + "_N" + std::to_string(n);
        out.write(stem + ".csv", zz.str());
        out.write(stem + "_cmax.csv", cmax.str());
        summary["zz_attains_cmax_N" + std::to_string(n)] = zz_attains_max;
    }
}

size_t find_kind(const std::vector<MeasureSpec> &ms, MeasureKind k) {
    for (size_t i = 0; i < ms.size(); ++i) {
        if (ms[i].kind == k) {
            return i;
        }
    }
    return ms.size();
}

void run_bounds(const ExperimentConfig &cfg, const RunOptions &opts, OutputSet &out) {
    const size_t xi = find_kind(cfg.measures, MeasureKind::kMutualInfo);
    const size_t yi = find_kind(cfg.measures, MeasureKind::kClassicalDiscord);
    CsvTable fits({"channel", "N", "p", "m_u", "c_u", "m_l", "c_l", "bins", "used_bins", "residual"});
    for (int n : cfg.n_qubits) {
        for (ChannelKind ch : cfg.channels) {
            SweepSpec spec;
            spec.sampler = sampler_for(cfg, n, Ensemble::kHaar);
            spec.channel = ch;
            spec.measures = cfg.measures;
            spec.nodal = cfg.nodal;
            spec.threads = opts.threads;
            for (double p : cfg.p_values) {
                const EnsembleValues ev = evaluate_ensemble(spec, p);
                std::vector<std::string> header;
                for (const MeasureSpec &m : cfg.measures) {
                    header.push_back(m.label());
                }
                CsvTable scatter(header);
                std::vector<double> x, y;
                for (size_t i = 0; i < ev.values[xi].size(); ++i) {
                    scatter.row();
                    for (size_t m = 0; m < cfg.measures.size(); ++m) {
                        scatter.add(ev.values[m][i]);
                    }
                    if (std::isfinite(ev.values[xi][i]) && std::isfinite(ev.values[yi][i])) {
                        x.push_back(ev.values[xi][i]);
                        y.push_back(ev.values[yi][i]);
                    }
                }
                const BoundFit f = fit_bounds(x, y, cfg.fit_bins, cfg.min_bin_fraction);
                fits.row().add(channel_name(ch)).add(n).add(p).add(f.m_u).add(f.c_u).add(f.m_l).add(f.c_l);
                fits.add(f.bin_count).add(f.used_bins).add(f.residual);
                out.write(block_stem(cfg, "scatter", ch, n, Ensemble::kHaar) + "_p" + format_number(p) + ".csv",
                          scatter.str());
            }
        }
    }
    out.write(cfg.id + ".csv", fits.str());
}

void run_decay(const ExperimentConfig &cfg, const RunOptions &opts, OutputSet &out) {
    CsvTable means({"ensemble", "channel", "N", "measure", "p", "mean"});
    CsvTable rates({"ensemble", "channel", "N", "measure", "average_slope", "R"});
    for (int n : cfg.n_qubits) {
        for (Ensemble e : cfg.ensembles) {
            for (ChannelKind ch : cfg.channels) {
                SweepSpec spec;
                spec.sampler = sampler_for(cfg, n, e);
                spec.channel = ch;
                spec.p_values = cfg.p_values;
                spec.measures = cfg.measures;
                spec.nodal = cfg.nodal;
                spec.bins = cfg.bins;
                spec.threads = opts.threads;
                const std::vector<DistributionSummary> sums = ensemble_sweep(spec);
                for (size_t m = 0; m < cfg.measures.size(); ++m) {
                    std::vector<DistributionSummary> series;
                    for (const DistributionSummary &s : sums) {
                        if (s.measure.label() == cfg.measures[m].label()) {
                            series.push_back(s);
                            means.row().add(ensemble_name(e)).add(channel_name(ch)).add(n);
                            means.add(s.measure.label()).add(s.p).add(s.mean);
                        }
                    }
                    const double slope = decay_rate(series);
                    rates.row().add(ensemble_name(e)).add(channel_name(ch)).add(n).add(cfg.measures[m].label());
                    rates.add(slope).add(decay_magnitude(slope));
                }
            }
        }
    }
    out.write(cfg.id + "_means.csv", means.str());
    out.write(cfg.id + ".csv", rates.str());
}

Verdict expected_verdict(ChannelKind ch) {
    switch (ch) {
        case ChannelKind::kPhaseDamping:
            return Verdict::kPdc;
        case ChannelKind::kAmplitudeDamping:
            return Verdict::kAdc;
        case ChannelKind::kDepolarizing:
            return Verdict::kDpc;
    }
    throw std::logic_error("unreachable");
}

void run_discrimination(const ExperimentConfig &cfg, OutputSet &out, json &summary) {
    CsvTable table({"channel", "N", "noise_sigma", "trials", "correct", "inconclusive", "fraction_correct"});
    double worst = 1.0;
    for (int n : cfg.n_qubits) {
        for (ChannelKind ch : cfg.channels) {
            int64_t correct = 0, inconclusive = 0;
            for (int t = 0; t < cfg.trials; ++t) {
                // Probe amplitudes depend on the trial only, so every channel
                // sees the same probes.
                std::mt19937_64 rng(sample_seed(cfg.seed, static_cast<uint64_t>(t)));
                std::normal_distribution<double> normal(0.0, 1.0);
                std::vector<Complex> amps(static_cast<size_t>(n));
                double norm2 = 0.0;
                for (Complex &a : amps) {
                    const double re = normal(rng);
                    const double im = normal(rng);
                    a = Complex(re, im);
                    norm2 += std::norm(a);
                }
                for (Complex &a : amps) {
                    a /= std::sqrt(norm2);
                }
                TraceOptions to;
                to.noise_sigma = cfg.noise_sigma;
                to.seed = sample_seed(cfg.seed ^ (0x5bd1e995ULL * (static_cast<uint64_t>(ch) + 1)),
                                      static_cast<uint64_t>(t) * 16 + static_cast<uint64_t>(n));
                const ProbeTrace trace = generate_probe_trace(ProbeState::gw(amps), ch, cfg.p_values, to);
                ClassifyOptions co;
                co.threshold = cfg.threshold;
                const DiscriminationVerdict v = classify(trace, co);
                correct += v.label == expected_verdict(ch) ? 1 : 0;
                inconclusive += v.label == Verdict::kInconclusive ? 1 : 0;
                if (t == 0) {
                    CsvTable tr({"p", "c_before", "c_after"});
                    for (const ProbeSample &s : trace.z) {
                        tr.row().add(s.p).add(s.c_before).add(s.c_after);
                    }
                    out.write(block_stem(cfg, "trace", ch, n, Ensemble::kHaar) + ".csv", tr.str());
                }
            }
            const double frac = static_cast<double>(correct) / cfg.trials;
            worst = std::min(worst, frac);
            table.row().add(channel_name(ch)).add(n).add(cfg.noise_sigma).add(cfg.trials).add(correct);
            table.add(inconclusive).add(frac);
        }
    }
    out.write(cfg.id + ".csv", table.str());
    summary["worst_fraction_correct"] = worst;
}

void run_koashi_winter(const ExperimentConfig &cfg, const RunOptions &opts, OutputSet &out, json &summary) {
    CsvTable table({"channel", "N", "p", "checked", "violations", "max_gap"});
    int64_t violations = 0;
    for (int n : cfg.n_qubits) {
        for (ChannelKind ch : cfg.channels) {
            SweepSpec spec;
            spec.sampler = sampler_for(cfg, n, Ensemble::kHaar);
            spec.channel = ch;
            spec.measures = {MeasureKind::kEoF, MeasureKind::kClassicalDiscord};
            spec.nodal = cfg.nodal;
            spec.threads = opts.threads;
            for (double p : cfg.p_values) {
                const EnsembleValues ev = evaluate_ensemble(spec, p);
                violations += ev.koashi_winter_violations;
                table.row().add(channel_name(ch)).add(n).add(p).add(ev.koashi_winter_checked);
                table.add(ev.koashi_winter_violations).add(ev.koashi_winter_max_gap);
            }
        }
    }
    out.write(cfg.id + ".csv", table.str());
    summary["violations"] = violations;
}

}  // namespace

std::string experiment_type_name(ExperimentType t) {
    switch (t) {
        case ExperimentType::kSweep:
            return "sweep";
        case ExperimentType::kWTrace:
            return "w_trace";
        case ExperimentType::kBounds:
            return "bounds";
        case ExperimentType::kDecay:
            return "decay";
        case ExperimentType::kDiscrimination:
            return "discrimination";
        case ExperimentType::kKoashiWinter:
            return "koashi_winter";
        case ExperimentType::kOracleCheck:
            return "oracle_check";
    }
    throw std::logic_error("unreachable");
}

ExperimentConfig parse_config(const json &j) {
    require(j.is_object(), "experiment config must be a JSON object");
    for (const auto &[key, _] : j.items()) {
        require(allowed_keys().count(key) == 1, "unknown config key '" + key + "'");
    }
    require(j.contains("id") && j.contains("type"), "config needs 'id' and 'type'");
    ExperimentConfig cfg;
    try {
        cfg.id = j.at("id").get<std::string>();
        cfg.type = parse_type(j.at("type").get<std::string>());
        if (j.contains("n_qubits")) {
            cfg.n_qubits = as_list<int>(j.at("n_qubits"));
        }
        if (j.contains("ensemble")) {
            cfg.ensembles.clear();
            for (const std::string &e : as_list<std::string>(j.at("ensemble"))) {
                cfg.ensembles.push_back(parse_ensemble(e));
            }
        }
        if (j.contains("count")) {
            cfg.count = j.at("count").get<int64_t>();
        }
        if (j.contains("seed")) {
            cfg.seed = j.at("seed").get<uint64_t>();
        }
        if (j.contains("wclass_real_amplitudes")) {
            cfg.wclass_real_amplitudes = j.at("wclass_real_amplitudes").get<bool>();
        }
        if (j.contains("channels")) {
            for (const std::string &c : as_list<std::string>(j.at("channels"))) {
                cfg.channels.push_back(parse_channel_kind(c));
            }
        }
        if (j.contains("p_values")) {
            cfg.p_values = as_list<double>(j.at("p_values"));
        }
        if (j.contains("measures")) {
            for (const std::string &m : as_list<std::string>(j.at("measures"))) {
                cfg.measures.push_back(parse_measure_spec(m));
            }
        }
        if (j.contains("nodal")) {
            cfg.nodal = j.at("nodal").get<int>() - 1;
        }
        if (j.contains("bins")) {
            cfg.bins = j.at("bins").get<int>();
        }
        if (j.contains("fit_bins")) {
            cfg.fit_bins = j.at("fit_bins").get<int>();
        }
        if (j.contains("min_bin_fraction")) {
            cfg.min_bin_fraction = j.at("min_bin_fraction").get<double>();
        }
        if (j.contains("trials")) {
            cfg.trials = j.at("trials").get<int>();
        }
        if (j.contains("noise_sigma")) {
            cfg.noise_sigma = j.at("noise_sigma").get<double>();
        }
        if (j.contains("threshold")) {
            cfg.threshold = j.at("threshold").get<double>();
        }
        if (j.contains("output_dir")) {
            cfg.output_dir = j.at("output_dir").get<std::string>();
        }
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("config field has the wrong type: ") + e.what());
    }

    require(!cfg.id.empty() && cfg.id.find_first_of("/\\: ") == std::string::npos,
            "id must be a non-empty file-name-safe string");
    require(!cfg.n_qubits.empty(), "n_qubits must not be empty");
    for (int n : cfg.n_qubits) {
        require(n >= 2 && n <= kMaxQubits, "n_qubits entries must lie in 2..8");
        require(cfg.nodal >= 0 && cfg.nodal < n, "nodal must lie in 1..n_qubits");
    }
    require(!cfg.ensembles.empty(), "ensemble must not be empty");
    require(cfg.count >= 1, "count must be >= 1");
    require(cfg.bins >= 1, "bins must be >= 1");
    require(cfg.fit_bins >= 3, "fit_bins must be >= 3");
    require(cfg.min_bin_fraction >= 0.0 && cfg.min_bin_fraction < 1.0, "min_bin_fraction must lie in [0, 1)");
    require(cfg.trials >= 1, "trials must be >= 1");
    require(cfg.noise_sigma >= 0.0, "noise_sigma must be >= 0");
    require(cfg.threshold >= 0.0, "threshold must be >= 0");
    require(!cfg.p_values.empty(), "p_values must not be empty");
    for (double p : cfg.p_values) {
        require(p >= 0.0 && p <= 1.0, "p_values must lie in [0, 1]");
    }
    for (Ensemble e : cfg.ensembles) {
        if (e == Ensemble::kWClass) {
            for (int n : cfg.n_qubits) {
                require(n == 3, "w_class ensembles need n_qubits = 3");
            }
        }
    }
    if (cfg.type != ExperimentType::kOracleCheck) {
        require(!cfg.channels.empty(), "channels must not be empty");
    }
    switch (cfg.type) {
        case ExperimentType::kSweep:
        case ExperimentType::kDecay:
            require(!cfg.measures.empty(), "measures must not be empty");
            if (cfg.type == ExperimentType::kDecay) {
                require(std::set<double>(cfg.p_values.begin(), cfg.p_values.end()).size() >= 2,
                        "decay needs at least two distinct p values");
            }
            break;
        case ExperimentType::kBounds:
            require(find_kind(cfg.measures, MeasureKind::kMutualInfo) < cfg.measures.size() &&
                        find_kind(cfg.measures, MeasureKind::kClassicalDiscord) < cfg.measures.size(),
                    "bounds needs 'mi' and 'cd' among the measures");
            break;
        case ExperimentType::kDiscrimination:
            require(std::set<double>(cfg.p_values.begin(), cfg.p_values.end()).size() >= 3,
                    "discrimination needs at least three distinct p values");
            break;
        case ExperimentType::kKoashiWinter:
            for (int n : cfg.n_qubits) {
                require(n >= 3, "koashi_winter needs n_qubits >= 3");
            }
            break;
        case ExperimentType::kWTrace:
        case ExperimentType::kOracleCheck:
            break;
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception &e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
    try {
        return parse_config(j);
    } catch (const std::invalid_argument &e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

json config_to_json(const ExperimentConfig &cfg) {
    json j;
    j["id"] = cfg.id;
    j["type"] = experiment_type_name(cfg.type);
    j["n_qubits"] = cfg.n_qubits;
    json ens = json::array();
    for (Ensemble e : cfg.ensembles) {
        ens.push_back(ensemble_name(e));
    }
    j["ensemble"] = ens;
    j["count"] = cfg.count;
    j["seed"] = cfg.seed;
    j["wclass_real_amplitudes"] = cfg.wclass_real_amplitudes;
    json chans = json::array();
    for (ChannelKind c : cfg.channels) {
        chans.push_back(channel_name(c));
    }
    j["channels"] = chans;
    j["p_values"] = cfg.p_values;
    json ms = json::array();
    for (const MeasureSpec &m : cfg.measures) {
        ms.push_back(m.label());
    }
    j["measures"] = ms;
    j["nodal"] = cfg.nodal + 1;
    j["bins"] = cfg.bins;
    j["fit_bins"] = cfg.fit_bins;
    j["min_bin_fraction"] = cfg.min_bin_fraction;
    j["trials"] = cfg.trials;
    j["noise_sigma"] = cfg.noise_sigma;
    j["threshold"] = cfg.threshold;
    j["output_dir"] = cfg.output_dir;
    return j;
}

std::string config_hash(const ExperimentConfig &cfg) {
    json j = config_to_json(cfg);
    j.erase("output_dir");
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
}

json RunManifest::to_json() const {
    return {
        {"experiment_id", experiment_id}, {"config_hash", config_hash}, {"artifact_version", artifact_version},
        {"started_at", started_at},       {"finished_at", finished_at}, {"outputs", outputs},
        {"summary", summary},
    };
}

RunManifest run_experiment(const ExperimentConfig &cfg, const RunOptions &opts) {
    const std::filesystem::path dir = opts.output_dir.empty()
                                          ? std::filesystem::path(cfg.output_dir.empty() ? "results" : cfg.output_dir)
                                          : opts.output_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    }

    RunManifest manifest;
    manifest.experiment_id = cfg.id;
    manifest.config_hash = config_hash(cfg);
    manifest.artifact_version = QCORR_VERSION;
    manifest.started_at = utc_now();
    manifest.summary = json::object();

    OutputSet out(dir);
    try {
        switch (cfg.type) {
            case ExperimentType::kSweep:
                run_sweep(cfg, opts, out, manifest.summary);
                break;
            case ExperimentType::kWTrace:
                run_w_trace(cfg, out, manifest.summary);
                break;
            case ExperimentType::kBounds:
                run_bounds(cfg, opts, out);
                break;
            case ExperimentType::kDecay:
                run_decay(cfg, opts, out);
                break;
            case ExperimentType::kDiscrimination:
                run_discrimination(cfg, out, manifest.summary);
                break;
            case ExperimentType::kKoashiWinter:
                run_koashi_winter(cfg, opts, out, manifest.summary);
                break;
            case ExperimentType::kOracleCheck: {
                OracleCheckOptions o;
                o.n_values = cfg.n_qubits;
                o.p_values = cfg.p_values;
                o.states = static_cast<int>(cfg.count);
                o.seed = cfg.seed;
                const OracleReport report = verify_oracles(o);
                out.write(cfg.id + ".csv", report.csv());
                manifest.summary["passed"] = report.passed();
                double worst = 0.0;
                for (const OracleCell &c : report.cells) {
                    worst = std::max(worst, c.max_dev);
                }
                manifest.summary["max_deviation"] = worst;
                break;
            }
        }
        manifest.outputs = out.names();
        manifest.finished_at = utc_now();
        json mj = manifest.to_json();
        mj["config"] = config_to_json(cfg);
        out.write(cfg.id + "_manifest.json", mj.dump(2) + "\n");
    } catch (const std::exception &e) {
        out.remove_all();
        throw std::runtime_error("experiment '" + cfg.id + "' failed: " + e.what());
    }
    return manifest;
}

std::filesystem::path resolve_output_dir(const ExperimentConfig &cfg, const std::string &flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char *env = std::getenv("QCORR_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    if (!cfg.output_dir.empty()) {
        return cfg.output_dir;
    }
    return "results";
}

std::filesystem::path recipe_dir() {
    if (const char *env = std::getenv("QCORR_RECIPE_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return QCORR_DEFAULT_RECIPE_DIR;
}

std::vector<std::string> list_recipes() {
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto &entry : std::filesystem::directory_iterator(recipe_dir(), ec)) {
        if (entry.path().extension() == ".json") {
            names.push_back(entry.path().stem().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

ExperimentConfig load_recipe(const std::string &name) {
    const auto path = recipe_dir() / (name + ".json");
    if (!std::filesystem::exists(path)) {
        throw std::invalid_argument("no recipe named '" + name + "' in " + recipe_dir().string());
    }
    return load_config(path);
}

bool OracleReport::passed() const {
    return std::all_of(cells.begin(), cells.end(), [this](const OracleCell &c) { return c.max_dev <= tolerance; });
}

double OracleReport::max_deviation(const std::string &check) const {
    double worst = 0.0;
    for (const OracleCell &c : cells) {
        if (c.check == check) {
            worst = std::max(worst, c.max_dev);
        }
    }
    return worst;
}

std::string OracleReport::csv() const {
    CsvTable t({"check", "N", "k", "p", "max_abs_dev", "pass"});
    for (const OracleCell &c : cells) {
        t.row().add(c.check).add(c.n).add(c.k).add(c.p).add(c.max_dev).add(c.max_dev <= tolerance ? 1 : 0);
    }
    return t.str();
}

OracleReport verify_oracles(const OracleCheckOptions &opts) {
    OracleReport report;
    report.tolerance = opts.tolerance;
    auto xy_labels = [](int n, int k) {
        std::vector<Pauli> l(static_cast<size_t>(n), Pauli::I);
        for (int j = 0; j < k; ++j) {
            l[static_cast<size_t>(j)] = j % 2 == 0 ? Pauli::X : Pauli::Y;
        }
        return CorrelatorIndex(l);
    };
    auto same_labels = [](int n, int k, Pauli p) {
        std::vector<Pauli> l(static_cast<size_t>(n), Pauli::I);
        for (int j = 0; j < k; ++j) {
            l[static_cast<size_t>(j)] = p;
        }
        return CorrelatorIndex(l);
    };

    for (int n : opts.n_values) {
        SamplerConfig sc;
        sc.n_qubits = n;
        sc.count = opts.states;
        sc.master_seed = sample_seed(opts.seed, static_cast<uint64_t>(n));
        std::vector<DensityMatrix> states;
        for (int i = 0; i < opts.states; ++i) {
            states.push_back(pure_to_density(sample_state(sc, static_cast<uint64_t>(i))));
        }
        // Random gW amplitudes and gGHZ angles for the state-specific checks.
        std::mt19937_64 rng(sample_seed(opts.seed ^ 0x9e3779b97f4a7c15ULL, static_cast<uint64_t>(n)));
        std::normal_distribution<double> normal(0.0, 1.0);
        std::uniform_real_distribution<double> angle(0.0, 1.0);
        std::vector<std::vector<Complex>> gw_amps;
        std::vector<std::pair<double, double>> ghz_angles;
        for (int i = 0; i < opts.states; ++i) {
            std::vector<Complex> a(static_cast<size_t>(n));
            double norm2 = 0.0;
            for (Complex &c : a) {
                const double re = normal(rng);
                const double im = normal(rng);
                c = Complex(re, im);
                norm2 += std::norm(c);
            }
            for (Complex &c : a) {
                c /= std::sqrt(norm2);
            }
            gw_amps.push_back(std::move(a));
            const double theta = std::numbers::pi * angle(rng);
            const double phi = 2.0 * std::numbers::pi * angle(rng);
            ghz_angles.emplace_back(theta, phi);
        }

        for (double p : opts.p_values) {
            const KrausChannel pdc = opts.channel_factory(ChannelKind::kPhaseDamping, p);
            const KrausChannel dpc = opts.channel_factory(ChannelKind::kDepolarizing, p);
            const KrausChannel adc = opts.channel_factory(ChannelKind::kAmplitudeDamping, p);
            std::vector<DensityMatrix> after_pdc, after_dpc, after_adc;
            for (const DensityMatrix &rho : states) {
                after_pdc.push_back(apply_uniform(rho, pdc));
                after_dpc.push_back(apply_uniform(rho, dpc));
                after_adc.push_back(apply_uniform(rho, adc));
            }
            for (int k = 1; k <= n; ++k) {
                double dev_pdc_xy = 0, dev_pdc_z = 0, dev_dpc = 0, dev_adc = 0, dev_split = 0;
                const CorrelatorIndex xy = xy_labels(n, k);
                const CorrelatorIndex allx = same_labels(n, k, Pauli::X);
                const CorrelatorIndex allz = same_labels(n, k, Pauli::Z);
                const double m_pdc = pdc_xy_multiplier(n, k, p);
                const double m_split = k == 2 ? pdc_pair_multiplier(n, p) : 0.0;
                const double m_dpc = dpc_genuine_multiplier(k, p, Convention::kSigned);
                const double m_adc = adc_xy_multiplier(k, p);
                for (size_t s = 0; s < states.size(); ++s) {
                    for (const CorrelatorIndex &idx : {xy, allx}) {
                        const double c0 = raw_correlator(states[s], idx);
                        const double cp = raw_correlator(after_pdc[s], idx);
                        dev_pdc_xy = std::max(dev_pdc_xy, std::abs(cp - m_pdc * c0));
                        if (k == 2) {
                            dev_split = std::max(dev_split, std::abs(cp - m_split * c0));
                        }
                        dev_adc = std::max(dev_adc, std::abs(raw_correlator(after_adc[s], idx) - m_adc * c0));
                    }
                    dev_pdc_z = std::max(dev_pdc_z,
                                         std::abs(raw_correlator(after_pdc[s], allz) - raw_correlator(states[s], allz)));
                    for (Pauli q : {Pauli::X, Pauli::Y, Pauli::Z}) {
                        const CorrelatorIndex idx = same_labels(n, k, q);
                        dev_dpc = std::max(dev_dpc, std::abs(raw_correlator(after_dpc[s], idx) -
                                                             m_dpc * raw_correlator(states[s], idx)));
                    }
                }
                report.cells.push_back({"pdc_xy", n, k, p, dev_pdc_xy});
                if (k == 2) {
                    report.cells.push_back({"pdc_pair_split", n, k, p, dev_split});
                }
                report.cells.push_back({"pdc_z_invariance", n, k, p, dev_pdc_z});
                report.cells.push_back({"dpc_same_pauli", n, k, p, dev_dpc});
                report.cells.push_back({"adc_xy", n, k, p, dev_adc});

                double dev_gwz = 0.0;
                const CorrelatorIndex zk = same_labels(n, k, Pauli::Z);
                for (const auto &a : gw_amps) {
                    const DensityMatrix noisy = apply_uniform(pure_to_density(generalized_w(a)), adc);
                    dev_gwz = std::max(dev_gwz, std::abs(raw_correlator(noisy, zk) -
                                                         gw_adc_z_correlator(a, k, p, Convention::kSigned)));
                }
                report.cells.push_back({"gw_adc_z", n, k, p, dev_gwz});
            }

            double dev_state = 0.0;
            for (const auto &a : gw_amps) {
                const DensityMatrix noisy = apply_uniform(pure_to_density(generalized_w(a)), adc);
                dev_state =
                    std::max(dev_state, (noisy.matrix() - gw_adc_final_state(a, p).matrix()).cwiseAbs().maxCoeff());
            }
            report.cells.push_back({"gw_adc_state", n, n, p, dev_state});

            double dev_ghz = 0.0;
            const CorrelatorIndex zz = same_labels(n, 2, Pauli::Z);
            for (auto [theta, phi] : ghz_angles) {
                const DensityMatrix noisy = apply_uniform(pure_to_density(generalized_ghz(n, theta, phi)), adc);
                dev_ghz = std::max(dev_ghz, std::abs(raw_correlator(noisy, zz) - gghz_adc_zz(theta, p)));
            }
            report.cells.push_back({"gghz_adc_zz", n, 2, p, dev_ghz});
        }
    }
    return report;
}

}  // namespace qcorr
