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

// Closed-form maps from noiseless to noisy correlators under uniform local
// noise. These are kept independent of the channel engine so that each can
// check the other.

#ifndef QCORR_ORACLES_H
#define QCORR_ORACLES_H

#include <cstdint>
#include <span>
#include <utility>

#include "qcorr/correlators.h"
#include "qcorr/state.h"

namespace qcorr {

/// Rescaled results are absolute values, matching correlator(); signed
/// results keep the sign of the raw expectation value.
enum class Convention { kRescaled, kSigned };

/// Exact binomial coefficient; 0 when k < 0 or k > n. Requires n <= 62.
int64_t binomial(int n, int k);

/// Phase damping on all n qubits, k-site correlator with every site in the
/// xy-plane:
///   sum_r [sum_q (-1)^q C(k,q) C(n-k, r-q)] (p/2)^r (1-p/2)^(n-r).
/// The bracket is accumulated in integers before conversion.
double pdc_xy_multiplier(int n, int k, double p);

/// Multiplier for an arbitrary correlator under phase damping: all-Z (and
/// any Z-only sites) are invariant, only xy sites count towards k.
double pdc_correlator_multiplier(int n, const CorrelatorIndex &idx, double p);

/// Pair-correlator multiplier in the split form used for distributed
/// correlators: the r = 0, 1 terms collapse to
/// (1-p/2)^(n-1) (1 - 5p/2 + np/2) and r >= 2 keep the binomial sum.
double pdc_pair_multiplier(int n, double p);

/// Distributed pair correlator after phase damping from the noiseless pair
/// values. Pairs with both labels in the xy-plane use pdc_pair_multiplier,
/// one xy label gives a single-site factor, all-Z is unchanged.
double pdc_distributed_correlator(std::span<const double> noiseless_pairs, std::pair<Pauli, Pauli> labels, int n,
                                  double p);

/// (1 - 4p/3)^n. Rescaled convention returns |1 - 4p/3|^n.
double dpc_genuine_multiplier(int n, double p, Convention conv = Convention::kRescaled);

/// Direct multinomial evaluation of the depolarizing multiplier,
///   sum_{r+s+t+u=n} (-1)^(t+u) n!/(r!s!t!u!) (1-p)^r (p/3)^(s+t+u),
/// kept separate from dpc_genuine_multiplier as a cross-check.
double dpc_multinomial_multiplier(int n, double p);

/// (1-p)^(k/2) for a k-site xy-plane correlator under amplitude damping.
double adc_xy_multiplier(int k, double p);

/// (1-p) * sum of noiseless xy-plane pair correlators.
double adc_distributed_xy(std::span<const double> noiseless_pairs, double p);

/// (1-p)|gW><gW| + p|0..0><0..0|. amplitudes[i] is the excitation amplitude
/// on qubit i.
DensityMatrix gw_adc_final_state(std::span<const Complex> amplitudes, double p);

/// All-Z correlator on the qubits in `window` of the ADC-damped gW state:
///   p + (1-p) (1 - 2 sum_{i in window} |a_i|^2).
/// Throws std::domain_error if the amplitudes are not normalized.
double gw_adc_z_correlator(std::span<const Complex> amplitudes, std::span<const int> window, double p,
                           Convention conv = Convention::kRescaled);

/// Window = the first k qubits.
double gw_adc_z_correlator(std::span<const Complex> amplitudes, int k, double p,
                           Convention conv = Convention::kRescaled);

/// C_xx = C_yy on the pair (0, i): (1-p)(a_0 a_i^* + a_i a_0^*).
double gw_adc_pair_xx(std::span<const Complex> amplitudes, int partner, double p,
                      Convention conv = Convention::kRescaled);

/// 1 - 2p(1-p)(1 - cos theta), the ZZ correlator of any gGHZ pair under ADC.
double gghz_adc_zz(double theta, double p);
double gghz_adc_distributed_zz(int n, double theta, double p);

/// <X...X> = sin(theta) cos(phi) for gGHZ on any number of qubits. Under
/// ADC it scales by (1-p)^(n/2), under DPC by (1-4p/3)^n.
double gghz_noiseless_all_x(double theta, double phi);

struct ChannelPredictions {
    double pdc;
    double adc;
    double dpc;
};

/// All-Z genuine correlator of the damped gW^n probe for each channel. The
/// noiseless value is |-1| = 1 for every normalized gW state.
ChannelPredictions discrimination_closed_forms(std::span<const Complex> amplitudes, double p,
                                               Convention conv = Convention::kRescaled);

}  // namespace qcorr

#endif
