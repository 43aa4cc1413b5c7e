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

#include "qcorr/discrimination.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "qcorr/correlators.h"
#include "qcorr/named_states.h"

namespace qcorr {

namespace {

constexpr size_t kModels = 3;

void check_samples(const std::vector<ProbeSample> &samples, const char *what) {
    for (const ProbeSample &s : samples) {
        for (double c : {s.c_before, s.c_after}) {
            if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) {
                throw std::invalid_argument(std::string(what) + " correlators must lie in [0, 1]");
            }
        }
        if (!(s.p >= 0.0 && s.p <= 1.0)) {
            throw std::invalid_argument("noise strengths must lie in [0, 1]");
        }
    }
}

// Predicted c_after under each model, PDC / ADC / DPC.
std::array<double, kModels> predict_z(const ProbeState &probe, const ProbeSample &s) {
    const int n = probe.n_qubits;
    const double dpc = s.c_before * std::pow(std::abs(1.0 - 4.0 * s.p / 3.0), n);
    double adc = 0.0;
    if (probe.kind == ProbeKind::kGeneralizedW) {
        // The raw noiseless value is -c_before for every gW state.
        adc = std::abs(s.p - (1.0 - s.p) * s.c_before);
    } else {
        const double c2 = std::pow(std::cos(probe.theta / 2.0), 2);
        adc = std::abs(c2 + (1.0 - c2) * std::pow(2.0 * s.p - 1.0, n));
    }
    return {s.c_before, adc, dpc};
}

std::array<double, kModels> predict_x(const ProbeState &probe, const ProbeSample &s) {
    const int n = probe.n_qubits;
    return {
        s.c_before * std::pow(1.0 - s.p, n),
        s.c_before * std::pow(1.0 - s.p, n / 2.0),
        s.c_before * std::pow(std::abs(1.0 - 4.0 * s.p / 3.0), n),
    };
}

struct Accumulator {
    std::array<double, kModels> sq{};
    std::array<double, kModels> obs_dot_pred{};
    std::array<double, kModels> pred_sq{};
    size_t count = 0;

    void add(const ProbeSample &s, const std::array<double, kModels> &pred) {
        const double observed = s.c_before - s.c_after;
        for (size_t m = 0; m < kModels; ++m) {
            const double r = pred[m] - s.c_after;
            sq[m] += r * r;
            const double change = s.c_before - pred[m];
            obs_dot_pred[m] += observed * change;
            pred_sq[m] += change * change;
        }
        ++count;
    }
};

}  // namespace

ProbeState ProbeState::gw(std::vector<Complex> amplitudes) {
    ProbeState p;
    p.kind = ProbeKind::kGeneralizedW;
    p.n_qubits = static_cast<int>(amplitudes.size());
    p.amplitudes = std::move(amplitudes);
    return p;
}

ProbeState ProbeState::gw3(double alpha, double beta, double gamma1, double gamma2) {
    return gw(gw3_amplitudes(alpha, beta, gamma1, gamma2));
}

ProbeState ProbeState::gghz(int n_qubits, double theta, double phi) {
    ProbeState p;
    p.kind = ProbeKind::kGeneralizedGhz;
    p.n_qubits = n_qubits;
    p.theta = theta;
    p.phi = phi;
    return p;
}

PureState ProbeState::state() const {
    if (kind == ProbeKind::kGeneralizedW) {
        return generalized_w(amplitudes);
    }
    return generalized_ghz(n_qubits, theta, phi);
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::kPdc:
            return "PDC";
        case Verdict::kAdc:
            return "ADC";
        case Verdict::kDpc:
            return "DPC";
        case Verdict::kInconclusive:
            return "inconclusive";
    }
    throw std::logic_error("unreachable");
}

DiscriminationVerdict classify(const ProbeTrace &trace, const ClassifyOptions &opts) {
    std::set<double> distinct;
    for (const ProbeSample &s : trace.z) {
        distinct.insert(s.p);
    }
    if (distinct.size() < 3) {
        throw std::invalid_argument("discrimination needs at least 3 distinct noise values");
    }
    if (trace.probe.n_qubits < 1) {
        throw std::invalid_argument("probe needs at least one qubit");
    }
    check_samples(trace.z, "z-trace");
    check_samples(trace.x, "x-trace");

    const bool ghz = trace.probe.kind == ProbeKind::kGeneralizedGhz;
    Accumulator acc;
    for (const ProbeSample &s : trace.z) {
        acc.add(s, predict_z(trace.probe, s));
    }
    if (ghz) {
        for (const ProbeSample &s : trace.x) {
            acc.add(s, predict_x(trace.probe, s));
        }
    }

    DiscriminationVerdict v;
    for (size_t m = 0; m < kModels; ++m) {
        v.residuals[m] = std::sqrt(acc.sq[m] / static_cast<double>(acc.count));
        v.scale[m] = acc.pred_sq[m] > 1e-15 ? acc.obs_dot_pred[m] / acc.pred_sq[m] : 0.0;
    }
    std::array<size_t, kModels> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v.residuals[a] < v.residuals[b]; });
    const double best = v.residuals[order[0]];
    const double margin = v.residuals[order[1]] - best;
    if (best > opts.residual_cap) {
        v.reason = "no model fits within the residual cap";
        return v;
    }
    if (margin < opts.threshold) {
        v.reason = "best and second-best models are too close";
        return v;
    }
    const Verdict label = std::array<Verdict, kModels>{Verdict::kPdc, Verdict::kAdc, Verdict::kDpc}[order[0]];
    if (ghz && trace.x.empty() && label != Verdict::kPdc) {
        v.reason = "gGHZ probe needs an all-X trace to separate ADC from DPC";
        return v;
    }
    v.label = label;
    v.reason = "ok";
    return v;
}

ProbeTrace generate_probe_trace(const ProbeState &probe, ChannelKind channel, std::span<const double> p_values,
                                const TraceOptions &opts) {
    const DensityMatrix rho0 = pure_to_density(probe.state());
    const int n = rho0.n_qubits();
    const CorrelatorIndex zz = CorrelatorIndex::uniform(Pauli::Z, n);
    const CorrelatorIndex xx = CorrelatorIndex::uniform(Pauli::X, n);
    const bool with_x = opts.with_x || probe.kind == ProbeKind::kGeneralizedGhz;

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto measure = [&](double exact) {
        if (opts.noise_sigma <= 0.0) {
            return exact;
        }
        return std::clamp(exact + opts.noise_sigma * normal(rng), 0.0, 1.0);
    };

    ProbeTrace trace;
    trace.probe = probe;
    trace.probe.n_qubits = n;
    const double z0 = correlator(rho0, zz);
    const double x0 = with_x ? correlator(rho0, xx) : 0.0;
    for (double p : p_values) {
        const DensityMatrix rho = apply_uniform(rho0, make_channel(channel, p));
        const double zb = measure(z0);
        const double za = measure(correlator(rho, zz));
        trace.z.push_back({p, zb, za});
        if (with_x) {
            const double xb = measure(x0);
            const double xa = measure(correlator(rho, xx));
            trace.x.push_back({p, xb, xa});
        }
    }
    return trace;
}

}  // namespace qcorr
