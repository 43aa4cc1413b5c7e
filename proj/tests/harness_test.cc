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

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "qcorr/io.h"
#include "qcorr/named_states.h"

using namespace qcorr;
using nlohmann::json;

namespace {

std::filesystem::path fresh_dir(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / ("qcorr_harness_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

json sweep_json() {
    return json::parse(R"({
        "id": "t", "type": "sweep", "n_qubits": [3], "count": 20, "seed": 5,
        "channels": ["pdc"], "p_values": [0.2, 0.4], "measures": ["cmax", "mi"], "nodal": 1
    })");
}

}  // namespace

TEST(io, format_number) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1.0 / 3), "0.333333333");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1e-12), "1e-12");
    EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(io, csv_table) {
    CsvTable t({"a", "b"});
    t.row().add(1).add(0.5);
    t.row().add("x").add(int64_t{7});
    EXPECT_EQ(t.str(), "a,b\n1,0.5\nx,7\n");
    CsvTable bad({"a", "b"});
    bad.row().add(1);
    EXPECT_THROW(bad.str(), std::logic_error);
}

TEST(io, state_json_round_trip) {
    const PureState w = w_state(3);
    const DensityMatrix a = state_from_json(state_to_json(w));
    const DensityMatrix b = state_from_json(state_to_json(a));
    EXPECT_LT((a.matrix() - pure_to_density(w).matrix()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(state_from_json(json::parse(R"({"n_qubits": 1, "amplitudes": [[1,0],[0,0]], "x": 1})")),
                 std::invalid_argument);
    EXPECT_THROW(state_from_json(json::parse(R"({"n_qubits": 1, "amplitudes": [[1,0]]})")), std::invalid_argument);
}

TEST(harness, parse_valid_config) {
    const ExperimentConfig cfg = parse_config(sweep_json());
    EXPECT_EQ(cfg.id, "t");
    EXPECT_EQ(cfg.type, ExperimentType::kSweep);
    EXPECT_EQ(cfg.nodal, 0);
    ASSERT_EQ(cfg.measures.size(), 2u);
    EXPECT_EQ(cfg.measures[1].kind, MeasureKind::kMutualInfo);
}

TEST(harness, parse_rejects_bad_configs) {
    auto with = [](const std::string &key, json value) {
        json j = sweep_json();
        j[key] = std::move(value);
        return j;
    };
    EXPECT_THROW(parse_config(with("measures", json::array())), std::invalid_argument);
    EXPECT_THROW(parse_config(with("measure", "cmax")), std::invalid_argument);
    EXPECT_THROW(parse_config(with("p_values", json::array({0.2, 1.2}))), std::invalid_argument);
    EXPECT_THROW(parse_config(with("channels", json::array({"bitflip"}))), std::invalid_argument);
    EXPECT_THROW(parse_config(with("measures", json::array({"cmx"}))), std::invalid_argument);
    EXPECT_THROW(parse_config(with("nodal", 4)), std::invalid_argument);
    EXPECT_THROW(parse_config(with("count", "many")), std::invalid_argument);
    json wclass = with("ensemble", "w_class");
    wclass["n_qubits"] = json::array({4});
    EXPECT_THROW(parse_config(wclass), std::invalid_argument);
    json bounds = with("type", "bounds");
    bounds["measures"] = json::array({"cmax"});
    EXPECT_THROW(parse_config(bounds), std::invalid_argument);
}

TEST(harness, config_hash_stability) {
    const json a = sweep_json();
    // Same content, keys in another order.
    const json b = json::parse(R"({
        "nodal": 1, "measures": ["cmax", "mi"], "p_values": [0.2, 0.4], "channels": ["pdc"],
        "seed": 5, "count": 20, "n_qubits": [3], "type": "sweep", "id": "t"
    })");
    EXPECT_EQ(config_hash(parse_config(a)), config_hash(parse_config(b)));
    json c = a;
    c["seed"] = 6;
    EXPECT_NE(config_hash(parse_config(a)), config_hash(parse_config(c)));
    json d = a;
    d["output_dir"] = "/tmp/elsewhere";
    EXPECT_EQ(config_hash(parse_config(a)), config_hash(parse_config(d)));
    EXPECT_EQ(config_hash(parse_config(a)).size(), 16u);
    // Canonical JSON parses back to the same hash.
    EXPECT_EQ(config_hash(parse_config(config_to_json(parse_config(a)))), config_hash(parse_config(a)));
}

TEST(harness, sweep_outputs_and_rerun) {
    const auto dir = fresh_dir("sweep");
    RunOptions opts;
    opts.output_dir = dir;
    const ExperimentConfig cfg = parse_config(sweep_json());
    const RunManifest m = run_experiment(cfg, opts);
    EXPECT_EQ(m.config_hash, config_hash(cfg));
    ASSERT_FALSE(m.outputs.empty());
    for (const std::string &f : m.outputs) {
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    }
    const NumericCsv cmax = read_numeric_csv(dir / "t_cmax_pdc_N3.csv");
    EXPECT_EQ(cmax.header,
              (std::vector<std::string>{"p", "mean", "std", "median", "skewness", "moment_skewness", "n", "failures"}));
    EXPECT_EQ(cmax.column("p"), (std::vector<double>{0.2, 0.4}));
    const std::string first = read_text_file(dir / "t_table.csv");
    opts.threads = 3;
    run_experiment(cfg, opts);
    EXPECT_EQ(read_text_file(dir / "t_table.csv"), first);
    const json manifest = json::parse(read_text_file(dir / "t_manifest.json"));
    EXPECT_EQ(manifest.at("config_hash"), m.config_hash);
    EXPECT_EQ(manifest.at("experiment_id"), "t");
}

TEST(harness, fig1_recipe_layout) {
    const auto dir = fresh_dir("fig1");
    RunOptions opts;
    opts.output_dir = dir;
    const ExperimentConfig cfg = load_recipe("fig1_wstate");
    const RunManifest m = run_experiment(cfg, opts);
    const NumericCsv csv = read_numeric_csv(dir / "fig1_wstate.csv");
    EXPECT_EQ(csv.header, (std::vector<std::string>{"p", "pdc", "adc", "dpc"}));
    EXPECT_EQ(csv.columns[0].size(), 21u);
    for (double v : csv.column("pdc")) {
        EXPECT_NEAR(v, 1.0, 1e-12);
    }
    EXPECT_TRUE(m.summary.at("zz_attains_cmax_N3").get<bool>());
}

TEST(harness, table1_recipe_layout) {
    const auto dir = fresh_dir("table1");
    RunOptions opts;
    opts.output_dir = dir;
    ExperimentConfig cfg = load_recipe("table1_pdc");
    cfg.count = 30;
    run_experiment(cfg, opts);
    const std::string table = read_text_file(dir / "table1_pdc_table.csv");
    EXPECT_EQ(table.substr(0, table.find('\n')),
              "ensemble,channel,N,measure,p,n,failures,mean,std,median,skewness,moment_skewness");
    // Three N values by three p values.
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 10);
    for (int n : {3, 4, 5}) {
        EXPECT_TRUE(std::filesystem::exists(dir / ("table1_pdc_cmax_pdc_N" + std::to_string(n) + ".csv")));
        EXPECT_TRUE(std::filesystem::exists(dir / ("table1_pdc_cmax_pdc_N" + std::to_string(n) + "_p0.2_hist.csv")));
    }
}

TEST(harness, decay_outputs) {
    const auto dir = fresh_dir("decay");
    RunOptions opts;
    opts.output_dir = dir;
    json j = sweep_json();
    j["type"] = "decay";
    j["p_values"] = {0.0, 0.5, 1.0};
    j["measures"] = {"cmax"};
    run_experiment(parse_config(j), opts);
    // ensemble,channel,N,measure,p,mean; mean is the last field.
    std::istringstream in(read_text_file(dir / "t_means.csv"));
    std::string line;
    std::getline(in, line);
    std::vector<double> m;
    while (std::getline(in, line)) {
        m.push_back(std::stod(line.substr(line.rfind(',') + 1)));
    }
    ASSERT_EQ(m.size(), 3u);
    const double expect = ((m[1] - m[0]) / 0.5 + (m[2] - m[0]) + (m[2] - m[1]) / 0.5) / 3;
    const std::string rates = read_text_file(dir / "t.csv");
    EXPECT_EQ(rates.substr(0, rates.find('\n')), "ensemble,channel,N,measure,average_slope,R");
    std::istringstream rs(rates.substr(rates.find('\n') + 1));
    std::string field;
    std::vector<std::string> f;
    while (std::getline(rs, field, ',')) {
        f.push_back(field);
    }
    ASSERT_EQ(f.size(), 6u);
    EXPECT_NEAR(std::stod(f[4]), expect, 1e-7);
    EXPECT_NEAR(std::stod(f[5]), -expect, 1e-7);
}

TEST(harness, failed_run_removes_partial_outputs) {
    const auto dir = fresh_dir("partial");
    // A directory where the manifest should go makes the last write fail.
    std::filesystem::create_directories(dir / "fig1_wstate_manifest.json");
    RunOptions opts;
    opts.output_dir = dir;
    EXPECT_THROW(run_experiment(load_recipe("fig1_wstate"), opts), std::runtime_error);
    EXPECT_FALSE(std::filesystem::exists(dir / "fig1_wstate.csv"));
    EXPECT_FALSE(std::filesystem::exists(dir / "fig1_wstate_cmax.csv"));
}

TEST(harness, output_dir_precedence) {
    ExperimentConfig cfg = parse_config(sweep_json());
    unsetenv("QCORR_OUTPUT_DIR");
    EXPECT_EQ(resolve_output_dir(cfg, ""), "results");
    cfg.output_dir = "from_cfg";
    EXPECT_EQ(resolve_output_dir(cfg, ""), "from_cfg");
    setenv("QCORR_OUTPUT_DIR", "from_env", 1);
    EXPECT_EQ(resolve_output_dir(cfg, ""), "from_env");
    EXPECT_EQ(resolve_output_dir(cfg, "from_flag"), "from_flag");
    unsetenv("QCORR_OUTPUT_DIR");
}

TEST(harness, recipes_all_parse) {
    const auto names = list_recipes();
    for (const char *want : {"fig1_wstate", "table1_pdc", "table1_dpc", "table1_adc", "table2", "table3",
                             "table_ghz_w", "table4", "decay_rates", "koashi_winter", "discrimination",
                             "oracle_check"}) {
        EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
        EXPECT_NO_THROW(load_recipe(want)) << want;
    }
    EXPECT_THROW(load_recipe("no_such_recipe"), std::invalid_argument);
}

TEST(harness, oracle_sweep_passes) {
    OracleCheckOptions o;
    o.n_values = {2, 3};
    o.states = 10;
    const OracleReport r = verify_oracles(o);
    EXPECT_TRUE(r.passed());
    for (const char *check : {"pdc_xy", "pdc_pair_split", "pdc_z_invariance", "dpc_same_pauli", "adc_xy",
                              "gw_adc_state", "gw_adc_z", "gghz_adc_zz"}) {
        EXPECT_LE(r.max_deviation(check), 1e-10) << check;
    }
}

TEST(harness, oracle_sweep_catches_faulty_pdc) {
    // Second PDC Kraus operator swapped from Z to X: Z correlators now decay.
    OracleCheckOptions o;
    o.n_values = {2, 3};
    o.states = 10;
    o.channel_factory = [](ChannelKind k, double p) {
        KrausChannel ch = make_channel(k, p);
        if (k == ChannelKind::kPhaseDamping) {
            ch.kraus_ops[1] = std::sqrt(p / 2) * pauli_matrix(Pauli::X);
        }
        return ch;
    };
    const OracleReport r = verify_oracles(o);
    EXPECT_FALSE(r.passed());
    EXPECT_GT(r.max_deviation("pdc_z_invariance"), 1e-3);
}

TEST(harness, oracle_sweep_sign_flip_is_harmless) {
    // K -> -K leaves K rho K^dag unchanged, so a sign bug cannot be seen.
    OracleCheckOptions o;
    o.n_values = {2};
    o.states = 5;
    o.channel_factory = [](ChannelKind k, double p) {
        KrausChannel ch = make_channel(k, p);
        ch.kraus_ops[1] = -ch.kraus_ops[1];
        return ch;
    };
    EXPECT_TRUE(verify_oracles(o).passed());
}
