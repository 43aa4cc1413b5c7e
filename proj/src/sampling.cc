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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace qcorr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

uint64_t splitmix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct Line {
    double m;
    double c;
};

Line least_squares(const std::vector<std::pair<double, double>> &pts) {
    const double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 0.0) {
        throw std::invalid_argument("bound fit needs spread in x");
    }
    const double m = sxy / sxx;
    return {m, my - m * mx};
}

}  // namespace

std::string ensemble_name(Ensemble e) {
    return e == Ensemble::kHaar ? "haar" : "w_class";
}

Ensemble parse_ensemble(std::string_view name) {
    if (name == "haar") {
        return Ensemble::kHaar;
    }
    if (name == "w_class") {
        return Ensemble::kWClass;
    }
    throw std::invalid_argument("unknown ensemble '" + std::string(name) + "'");
}

void SamplerConfig::validate() const {
    if (count < 1) {
        throw std::invalid_argument("sample count must be >= 1");
    }
    if (ensemble == Ensemble::kWClass && n_qubits != 3) {
        throw std::domain_error("W-class ensemble is defined for 3 qubits only");
    }
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("n_qubits outside 1..8");
    }
}

uint64_t sample_seed(uint64_t master_seed, uint64_t index) {
    return splitmix64(master_seed ^ splitmix64(index));
}

PureState sample_state(const SamplerConfig &cfg, uint64_t index) {
    cfg.validate();
    std::mt19937_64 rng(sample_seed(cfg.master_seed, index));
    std::normal_distribution<double> normal(0.0, 1.0);
    const Eigen::Index dim = Eigen::Index{1} << cfg.n_qubits;
    CVector amps = CVector::Zero(dim);
    if (cfg.ensemble == Ensemble::kHaar) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            amps(i) = Complex(re, im);
        }
    } else {
        for (Eigen::Index i : {0, 1, 2, 4}) {
            const double re = normal(rng);
            const double im = cfg.wclass_real_amplitudes ? 0.0 : normal(rng);
            amps(i) = Complex(re, im);
        }
    }
    return PureState::normalized(cfg.n_qubits, std::move(amps));
}

std::vector<PureState> sample_haar(const SamplerConfig &cfg) {
    SamplerConfig c = cfg;
    c.ensemble = Ensemble::kHaar;
    c.validate();
    std::vector<PureState> out;
    out.reserve(static_cast<size_t>(c.count));
    for (int64_t i = 0; i < c.count; ++i) {
        out.push_back(sample_state(c, static_cast<uint64_t>(i)));
    }
    return out;
}

std::vector<PureState> sample_w_class(const SamplerConfig &cfg) {
    SamplerConfig c = cfg;
    c.ensemble = Ensemble::kWClass;
    c.validate();
    std::vector<PureState> out;
    out.reserve(static_cast<size_t>(c.count));
    for (int64_t i = 0; i < c.count; ++i) {
        out.push_back(sample_state(c, static_cast<uint64_t>(i)));
    }
    return out;
}

Histogram histogram(std::span<const double> values, int bins) {
    if (bins < 1) {
        throw std::invalid_argument("histogram needs at least one bin");
    }
    Histogram h;
    h.frequencies.assign(static_cast<size_t>(bins), 0.0);
    if (values.empty()) {
        h.edges.assign(static_cast<size_t>(bins) + 1, 0.0);
        return h;
    }
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (hi <= lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / bins;
    for (int i = 0; i <= bins; ++i) {
        h.edges.push_back(i == bins ? hi : lo + width * i);
    }
    for (double v : values) {
        auto b = static_cast<int>((v - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        h.frequencies[static_cast<size_t>(b)] += 1.0;
    }
    for (double &f : h.frequencies) {
        f /= static_cast<double>(values.size());
    }
    return h;
}

DistributionSummary summarize(std::span<const double> values, int bins) {
    std::vector<double> v;
    v.reserve(values.size());
    DistributionSummary s;
    for (double x : values) {
        if (std::isfinite(x)) {
            v.push_back(x);
        } else {
            ++s.failures;
        }
    }
    s.n = static_cast<int64_t>(v.size());
    if (v.empty()) {
        s.mean = s.std_dev = s.median = s.skewness = s.moment_skewness = kNaN;
        s.min = s.max = kNaN;
        s.histogram = histogram(v, bins);
        return s;
    }
    double sum = 0.0;
    for (double x : v) {
        sum += x;
    }
    s.mean = sum / static_cast<double>(v.size());
    double m2 = 0.0, m3 = 0.0;
    for (double x : v) {
        const double d = x - s.mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= static_cast<double>(v.size());
    m3 /= static_cast<double>(v.size());
    s.std_dev = std::sqrt(m2);
    s.histogram = histogram(v, bins);

    std::sort(v.begin(), v.end());
    const size_t mid = v.size() / 2;
    s.median = v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
    s.min = v.front();
    s.max = v.back();
    if (s.std_dev > 0.0) {
        s.skewness = 3.0 * (s.mean - s.median) / s.std_dev;
        s.moment_skewness = m3 / (m2 * s.std_dev);
    }
    return s;
}

EnsembleValues evaluate_ensemble(const SweepSpec &spec, double p) {
    spec.sampler.validate();
    const KrausChannel channel = make_channel(spec.channel, p);
    const auto count = static_cast<size_t>(spec.sampler.count);
    const size_t nm = spec.measures.size();

    auto find_measure = [&](auto pred) {
        for (size_t m = 0; m < nm; ++m) {
            if (pred(spec.measures[m])) {
                return m;
            }
        }
        return nm;
    };
    const size_t eof_idx = find_measure([](const MeasureSpec &m) { return m.kind == MeasureKind::kEoF; });
    const size_t cd_idx = find_measure([](const MeasureSpec &m) {
        return m.kind == MeasureKind::kClassicalDiscord && m.options.direction == Direction::kPartner;
    });
    const bool want_kw = spec.sampler.n_qubits >= 3 && eof_idx < nm && cd_idx < nm;

    EnsembleValues out;
    out.p = p;
    out.values.assign(nm, std::vector<double>(count, kNaN));
    std::vector<double> nodal_entropy(want_kw ? count : 0, kNaN);

    auto work = [&](size_t begin, size_t stride) {
        for (size_t i = begin; i < count; i += stride) {
            try {
                const DensityMatrix rho =
                    apply_uniform(pure_to_density(sample_state(spec.sampler, static_cast<uint64_t>(i))), channel);
                const std::vector<DensityMatrix> pairs =
                    spec.sampler.n_qubits >= 2 ? nodal_pairs(rho, spec.nodal) : std::vector<DensityMatrix>{};
                for (size_t m = 0; m < nm; ++m) {
                    const MeasureSpec &ms = spec.measures[m];
                    double v = 0.0;
                    if (ms.kind == MeasureKind::kGenuineCmax) {
                        v = genuine_max(rho, ms.options.cmax_mode).value;
                    } else {
                        for (const DensityMatrix &pr : pairs) {
                            v += pair_measure(pr, ms.kind, ms.options);
                        }
                    }
                    out.values[m][i] = v;
                }
                if (want_kw) {
                    const int n = rho.n_qubits();
                    nodal_entropy[i] = von_neumann_entropy(partial_trace(rho, QubitSubset({spec.nodal}, n)));
                }
            } catch (const std::exception &) {
                for (size_t m = 0; m < nm; ++m) {
                    out.values[m][i] = kNaN;
                }
            }
        }
    };

    const size_t threads = static_cast<size_t>(std::max(1, spec.threads));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < threads; ++t) {
            pool.emplace_back(work, t, threads);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    if (want_kw) {
        const auto &eof = out.values[eof_idx];
        const auto &cd = out.values[cd_idx];
        const double n = spec.sampler.n_qubits;
        for (size_t i = 0; i < count; ++i) {
            if (std::isfinite(eof[i]) && std::isfinite(cd[i]) && std::isfinite(nodal_entropy[i])) {
                ++out.koashi_winter_checked;
                const double gap = eof[i] + cd[i] - (n - 1) * nodal_entropy[i];
                out.koashi_winter_max_gap = std::max(out.koashi_winter_max_gap, gap);
                if (gap > 1e-8) {
                    ++out.koashi_winter_violations;
                }
            }
        }
    }
    return out;
}

std::vector<DistributionSummary> ensemble_sweep(const SweepSpec &spec) {
    std::vector<DistributionSummary> out;
    for (double p : spec.p_values) {
        const EnsembleValues ev = evaluate_ensemble(spec, p);
        for (size_t m = 0; m < spec.measures.size(); ++m) {
            DistributionSummary s = summarize(ev.values[m], spec.bins);
            s.measure = spec.measures[m];
            s.channel = spec.channel;
            s.p = p;
            out.push_back(std::move(s));
        }
    }
    return out;
}

double decay_rate(std::span<const double> p_values, std::span<const double> means) {
    if (p_values.size() != means.size()) {
        throw std::invalid_argument("p grid and means differ in length");
    }
    if (p_values.size() < 2) {
        throw std::domain_error("decay rate needs at least two noise values");
    }
    double total = 0.0;
    int pairs = 0;
    for (size_t i = 0; i < p_values.size(); ++i) {
        for (size_t j = 0; j < p_values.size(); ++j) {
            if (p_values[j] > p_values[i]) {
                total += (means[j] - means[i]) / (p_values[j] - p_values[i]);
                ++pairs;
            }
        }
    }
    if (pairs == 0) {
        throw std::domain_error("decay rate needs two distinct noise values");
    }
    return total / pairs;
}

double decay_rate(std::span<const DistributionSummary> summaries) {
    std::vector<double> p, m;
    for (const DistributionSummary &s : summaries) {
        p.push_back(s.p);
        m.push_back(s.mean);
    }
    return decay_rate(p, m);
}

BoundFit fit_bounds(std::span<const double> x, std::span<const double> y, int bin_count, double min_bin_fraction) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("x and y differ in length");
    }
    if (bin_count < 3) {
        throw std::invalid_argument("bound fit needs at least 3 bins");
    }
    if (x.empty()) {
        throw std::invalid_argument("bound fit needs data");
    }
    auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = (hi - lo) / bin_count;

    constexpr size_t kNone = std::numeric_limits<size_t>::max();
    std::vector<size_t> top(static_cast<size_t>(bin_count), kNone);
    std::vector<size_t> bottom(static_cast<size_t>(bin_count), kNone);
    std::vector<size_t> occupancy(static_cast<size_t>(bin_count), 0);
    for (size_t i = 0; i < x.size(); ++i) {
        int b = width > 0.0 ? static_cast<int>((x[i] - lo) / width) : 0;
        b = std::clamp(b, 0, bin_count - 1);
        const auto bi = static_cast<size_t>(b);
        ++occupancy[bi];
        if (top[bi] == kNone || y[i] > y[top[bi]]) {
            top[bi] = i;
        }
        if (bottom[bi] == kNone || y[i] < y[bottom[bi]]) {
            bottom[bi] = i;
        }
    }
    std::vector<std::pair<double, double>> upper, lower;
    for (size_t b = 0; b < top.size(); ++b) {
        if (top[b] != kNone && static_cast<double>(occupancy[b]) >= min_bin_fraction * static_cast<double>(x.size())) {
            upper.emplace_back(x[top[b]], y[top[b]]);
            lower.emplace_back(x[bottom[b]], y[bottom[b]]);
        }
    }
    if (upper.size() < 3) {
        throw std::invalid_argument("bound fit needs at least 3 populated bins");
    }
    const Line u = least_squares(upper);
    const Line l = least_squares(lower);
    double ss = 0.0;
    for (auto [px, py] : upper) {
        ss += std::pow(py - (u.m * px + u.c), 2);
    }
    for (auto [px, py] : lower) {
        ss += std::pow(py - (l.m * px + l.c), 2);
    }
    BoundFit fit;
    fit.m_u = u.m;
    fit.c_u = u.c;
    fit.m_l = l.m;
    fit.c_l = l.c;
    fit.bin_count = bin_count;
    fit.used_bins = static_cast<int>(upper.size());
    fit.residual = std::sqrt(ss / static_cast<double>(upper.size() + lower.size()));
    return fit;
}

}  // namespace qcorr
