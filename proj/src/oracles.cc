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

#include "qcorr/oracles.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

void check_p(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("noise strength p must lie in [0, 1]");
    }
}

double apply_convention(double v, Convention conv) {
    return conv == Convention::kRescaled ? std::abs(v) : v;
}

double check_normalized(std::span<const Complex> amplitudes) {
    double norm2 = 0.0;
    for (const Complex &a : amplitudes) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > 1e-12) {
        throw std::domain_error("gW amplitudes are not normalized");
    }
    return norm2;
}

int64_t factorial(int n) {
    int64_t f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

}  // namespace

int64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    if (n > 62) {
        throw std::invalid_argument("binomial supports n <= 62");
    }
    k = std::min(k, n - k);
    // c * (n-k+i) can pass 2^63 before the division near n = 62.
    __int128 c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return static_cast<int64_t>(c);
}

double pdc_xy_multiplier(int n, int k, double p) {
    check_p(p);
    if (k < 0 || k > n || n < 1) {
        throw std::invalid_argument("need 0 <= k <= n and n >= 1");
    }
    double total = 0.0;
    for (int r = 0; r <= n; ++r) {
        int64_t bracket = 0;
        for (int q = 0; q <= std::min(r, k); ++q) {
            // C(n-k, r-q) vanishes when r-q > n-k.
            const int64_t term = binomial(k, q) * binomial(n - k, r - q);
            bracket += (q % 2 == 0) ? term : -term;
        }
        if (bracket != 0) {
            total += static_cast<double>(bracket) * std::pow(p / 2.0, r) * std::pow(1.0 - p / 2.0, n - r);
        }
    }
    return total;
}

double pdc_correlator_multiplier(int n, const CorrelatorIndex &idx, double p) {
    int xy = 0;
    for (Pauli l : idx.labels()) {
        if (l == Pauli::X || l == Pauli::Y) {
            ++xy;
        }
    }
    return xy == 0 ? 1.0 : pdc_xy_multiplier(n, xy, p);
}

double pdc_pair_multiplier(int n, double p) {
    check_p(p);
    if (n < 2) {
        throw std::invalid_argument("pair multiplier needs n >= 2");
    }
    double total = std::pow(1.0 - p / 2.0, n - 1) * (1.0 - 5.0 * p / 2.0 + n * p / 2.0);
    for (int r = 2; r <= n; ++r) {
        int64_t bracket = 0;
        for (int q = 0; q <= 2; ++q) {
            const int64_t term = binomial(2, q) * binomial(n - 2, r - q);
            bracket += (q % 2 == 0) ? term : -term;
        }
        total += static_cast<double>(bracket) * std::pow(p / 2.0, r) * std::pow(1.0 - p / 2.0, n - r);
    }
    return total;
}

double pdc_distributed_correlator(std::span<const double> noiseless_pairs, std::pair<Pauli, Pauli> labels, int n,
                                  double p) {
    auto in_plane = [](Pauli l) { return l == Pauli::X || l == Pauli::Y; };
    const int xy = (in_plane(labels.first) ? 1 : 0) + (in_plane(labels.second) ? 1 : 0);
    double multiplier = 1.0;
    if (xy == 2) {
        multiplier = pdc_pair_multiplier(n, p);
    } else if (xy == 1) {
        multiplier = pdc_xy_multiplier(n, 1, p);
    }
    double sum = 0.0;
    for (double c : noiseless_pairs) {
        sum += c;
    }
    return multiplier * sum;
}

double dpc_genuine_multiplier(int n, double p, Convention conv) {
    check_p(p);
    return apply_convention(std::pow(1.0 - 4.0 * p / 3.0, n), conv);
}

double dpc_multinomial_multiplier(int n, double p) {
    check_p(p);
    if (n < 0 || n > 20) {
        throw std::invalid_argument("multinomial form supports 0 <= n <= 20");
    }
    const int64_t nf = factorial(n);
    double total = 0.0;
    for (int r = 0; r <= n; ++r) {
        for (int s = 0; s <= n - r; ++s) {
            for (int t = 0; t <= n - r - s; ++t) {
                const int u = n - r - s - t;
                const int64_t coeff = nf / (factorial(r) * factorial(s) * factorial(t) * factorial(u));
                const double sign = ((t + u) % 2 == 0) ? 1.0 : -1.0;
                total += sign * static_cast<double>(coeff) * std::pow(1.0 - p, r) * std::pow(p / 3.0, s + t + u);
            }
        }
    }
    return total;
}

double adc_xy_multiplier(int k, double p) {
    check_p(p);
    if (k < 0) {
        throw std::invalid_argument("k must be non-negative");
    }
    return std::pow(1.0 - p, k / 2.0);
}

double adc_distributed_xy(std::span<const double> noiseless_pairs, double p) {
    check_p(p);
    double sum = 0.0;
    for (double c : noiseless_pairs) {
        sum += c;
    }
    return (1.0 - p) * sum;
}

DensityMatrix gw_adc_final_state(std::span<const Complex> amplitudes, double p) {
    check_p(p);
    check_normalized(amplitudes);
    const int n = static_cast<int>(amplitudes.size());
    const Eigen::Index d = Eigen::Index{1} << n;
    CVector gw = CVector::Zero(d);
    for (int q = 0; q < n; ++q) {
        gw(Eigen::Index{1} << (n - 1 - q)) = amplitudes[static_cast<size_t>(q)];
    }
    CMatrix rho = (1.0 - p) * (gw * gw.adjoint());
    rho(0, 0) += p;
    return DensityMatrix(n, std::move(rho));
}

double gw_adc_z_correlator(std::span<const Complex> amplitudes, std::span<const int> window, double p,
                           Convention conv) {
    check_p(p);
    check_normalized(amplitudes);
    const int n = static_cast<int>(amplitudes.size());
    double inside = 0.0;
    for (int q : window) {
        if (q < 0 || q >= n) {
            throw std::out_of_range("window qubit outside register");
        }
        inside += std::norm(amplitudes[static_cast<size_t>(q)]);
    }
    return apply_convention(p + (1.0 - p) * (1.0 - 2.0 * inside), conv);
}

double gw_adc_z_correlator(std::span<const Complex> amplitudes, int k, double p, Convention conv) {
    if (k < 1 || k > static_cast<int>(amplitudes.size())) {
        throw std::invalid_argument("window size outside [1, n]");
    }
    std::vector<int> window(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        window[static_cast<size_t>(i)] = i;
    }
    return gw_adc_z_correlator(amplitudes, std::span<const int>(window), p, conv);
}

double gw_adc_pair_xx(std::span<const Complex> amplitudes, int partner, double p, Convention conv) {
    check_p(p);
    check_normalized(amplitudes);
    if (partner <= 0 || partner >= static_cast<int>(amplitudes.size())) {
        throw std::out_of_range("partner must be a non-nodal qubit");
    }
    const Complex a0 = amplitudes[0];
    const Complex ai = amplitudes[static_cast<size_t>(partner)];
    return apply_convention((1.0 - p) * (a0 * std::conj(ai) + ai * std::conj(a0)).real(), conv);
}

double gghz_adc_zz(double theta, double p) {
    check_p(p);
    return 1.0 - 2.0 * p * (1.0 - p) * (1.0 - std::cos(theta));
}

double gghz_adc_distributed_zz(int n, double theta, double p) {
    return (n - 1) * gghz_adc_zz(theta, p);
}

double gghz_noiseless_all_x(double theta, double phi) {
    return std::sin(theta) * std::cos(phi);
}

ChannelPredictions discrimination_closed_forms(std::span<const Complex> amplitudes, double p, Convention conv) {
    check_p(p);
    check_normalized(amplitudes);
    const int n = static_cast<int>(amplitudes.size());
    // Every gW term carries one excitation inside the all-site window.
    constexpr double noiseless = -1.0;
    return {
        apply_convention(noiseless, conv),
        apply_convention(p + (1.0 - p) * noiseless, conv),
        apply_convention(std::pow(1.0 - 4.0 * p / 3.0, n) * noiseless, conv),
    };
}

}  // namespace qcorr
