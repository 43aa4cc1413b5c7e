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

#include "qcorr/measures.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcorr/nelder_mead.h"

namespace qcorr {

namespace {

constexpr double kPi = std::numbers::pi;

void require_two_qubits(const DensityMatrix &rho) {
    if (rho.n_qubits() != 2) {
        throw std::domain_error("measure is defined on two-qubit states only");
    }
}

// Entropy of a qubit with Bloch vector v.
double bloch_entropy(const Eigen::Vector3d &v) {
    const double len = std::min(1.0, v.norm());
    return binary_entropy((1.0 + len) / 2.0);
}

double shannon(std::span<const double> probs) {
    double h = 0.0;
    for (double q : probs) {
        if (q > 1e-15) {
            h -= q * std::log2(q);
        }
    }
    return h;
}

// Pieces of rho seen from the measured side M and the unmeasured side U.
struct Sided {
    Eigen::Vector3d m;
    Eigen::Vector3d u;
    Eigen::Matrix3d c;  // rows indexed by M's Pauli
};

Sided sided(const BlochForm &b, MeasuredSide side) {
    if (side == MeasuredSide::kFirst) {
        return {b.r, b.s, b.t};
    }
    return {b.s, b.r, b.t.transpose()};
}

// Average entropy of U after measuring M along n, plus the outcome entropy
// when `with_outcomes` is set (dephased-state entropy).
double conditional_entropy(const Sided &sd, const Eigen::Vector3d &n, bool with_outcomes) {
    const double nm = n.dot(sd.m);
    const Eigen::Vector3d tn = sd.c.transpose() * n;
    double total = 0.0;
    std::array<double, 2> probs{};
    for (int k = 0; k < 2; ++k) {
        const double sign = k == 0 ? 1.0 : -1.0;
        const double w = 1.0 + sign * nm;
        probs[static_cast<size_t>(k)] = w / 2.0;
        if (w <= 1e-14) {
            continue;
        }
        total += (w / 2.0) * bloch_entropy((sd.u + sign * tn) / w);
    }
    if (with_outcomes) {
        total += shannon(probs);
    }
    return total;
}

double product_dephased_entropy(const BlochForm &b, const Eigen::Vector3d &na, const Eigen::Vector3d &nb) {
    const double ra = na.dot(b.r);
    const double sb = nb.dot(b.s);
    const double tab = na.dot(b.t * nb);
    std::array<double, 4> probs{};
    size_t i = 0;
    for (double a : {1.0, -1.0}) {
        for (double c : {1.0, -1.0}) {
            probs[i++] = std::max(0.0, (1.0 + a * ra + c * sb + a * c * tab) / 4.0);
        }
    }
    return shannon(probs);
}

struct GridPoint {
    double value;
    std::vector<double> x;
};

// Grid search followed by Nelder-Mead from the best few grid points.
// Minimizes f over the listed angle coordinates.
OptimizedMeasure minimize_angles(const std::function<double(const std::vector<double> &)> &f,
                                 const std::vector<std::vector<double>> &grid, double step,
                                 const DiscordOptions &opts) {
    std::vector<GridPoint> pts;
    pts.reserve(grid.size());
    for (const auto &x : grid) {
        pts.push_back({f(x), x});
    }
    const size_t keep = std::min(pts.size(), static_cast<size_t>(std::max(opts.starts, 1)));
    std::partial_sort(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(keep), pts.end(),
                      [](const GridPoint &a, const GridPoint &b) { return a.value < b.value; });
    GridPoint best = pts.front();
    bool converged = true;
    if (opts.refine) {
        for (size_t i = 0; i < keep; ++i) {
            SimplexResult r = nelder_mead(f, pts[i].x, step, opts.tolerance, opts.max_iterations);
            converged = converged && r.converged;
            if (r.value < best.value) {
                best = {r.value, r.x};
            }
        }
    }
    OptimizedMeasure out;
    out.value = best.value;
    out.converged = converged;
    for (size_t i = 0; i + 1 < best.x.size(); i += 2) {
        out.basis.push_back(MeasurementBasis::canonical(best.x[i], best.x[i + 1]));
    }
    return out;
}

std::vector<std::pair<double, double>> sphere_grid(int phi_points, int theta_points) {
    if (phi_points < 1 || theta_points < 2) {
        throw std::invalid_argument("basis grid needs >= 1 phi and >= 2 theta points");
    }
    std::vector<std::pair<double, double>> out;
    for (int j = 0; j < theta_points; ++j) {
        const double theta = kPi * j / (theta_points - 1);
        for (int i = 0; i < phi_points; ++i) {
            out.emplace_back(theta, 2.0 * kPi * i / phi_points);
        }
    }
    return out;
}

Eigen::Vector3d direction_of(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double clip_nonnegative(double v) {
    return v < 0.0 ? 0.0 : v;
}

}  // namespace

Eigen::Vector3d MeasurementBasis::direction() const {
    return direction_of(theta, phi);
}

MeasurementBasis MeasurementBasis::canonical(double theta, double phi) {
    theta = std::fmod(theta, 2.0 * kPi);
    if (theta < 0.0) {
        theta += 2.0 * kPi;
    }
    if (theta > kPi) {
        theta = 2.0 * kPi - theta;
        phi += kPi;
    }
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0.0) {
        phi += 2.0 * kPi;
    }
    return {theta, phi};
}

std::string measure_name(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::kCmax:
            return "cmax";
        case MeasureKind::kGenuineCmax:
            return "gcmax";
        case MeasureKind::kClassicalDiscord:
            return "cd";
        case MeasureKind::kLocalWork:
            return "lw";
        case MeasureKind::kQuantumDiscord:
            return "qd";
        case MeasureKind::kMutualInfo:
            return "mi";
        case MeasureKind::kLogNegativity:
            return "ln";
        case MeasureKind::kEoF:
            return "eof";
    }
    throw std::logic_error("unreachable");
}

MeasureKind parse_measure_kind(std::string_view name) {
    for (MeasureKind k : {MeasureKind::kCmax, MeasureKind::kGenuineCmax, MeasureKind::kClassicalDiscord,
                          MeasureKind::kLocalWork, MeasureKind::kQuantumDiscord, MeasureKind::kMutualInfo,
                          MeasureKind::kLogNegativity, MeasureKind::kEoF}) {
        if (measure_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown measure '" + std::string(name) + "'");
}

BlochForm bloch_form(const DensityMatrix &rho2) {
    require_two_qubits(rho2);
    BlochForm b;
    constexpr std::array<Pauli, 3> xyz{Pauli::X, Pauli::Y, Pauli::Z};
    for (int k = 0; k < 3; ++k) {
        std::array<Pauli, 2> a{xyz[k], Pauli::I};
        std::array<Pauli, 2> c{Pauli::I, xyz[k]};
        b.r(k) = pauli_expectation(rho2, a);
        b.s(k) = pauli_expectation(rho2, c);
        for (int l = 0; l < 3; ++l) {
            std::array<Pauli, 2> kl{xyz[k], xyz[l]};
            b.t(k, l) = pauli_expectation(rho2, kl);
        }
    }
    return b;
}

double mutual_information(const DensityMatrix &rho2) {
    require_two_qubits(rho2);
    const double sa = von_neumann_entropy(partial_trace(rho2, QubitSubset({0}, 2)));
    const double sb = von_neumann_entropy(partial_trace(rho2, QubitSubset({1}, 2)));
    return clip_nonnegative(sa + sb - von_neumann_entropy(rho2));
}

OptimizedMeasure classical_discord(const DensityMatrix &rho2, MeasuredSide side, const DiscordOptions &opts) {
    const Sided sd = sided(bloch_form(rho2), side);
    auto f = [&sd](const std::vector<double> &x) {
        return conditional_entropy(sd, direction_of(x[0], x[1]), false);
    };
    std::vector<std::vector<double>> grid;
    for (auto [theta, phi] : sphere_grid(opts.phi_points, opts.theta_points)) {
        grid.push_back({theta, phi});
    }
    const double step = 0.5 * kPi / (opts.theta_points - 1);
    OptimizedMeasure res = minimize_angles(f, grid, step, opts);
    res.value = clip_nonnegative(bloch_entropy(sd.u) - res.value);
    return res;
}

OptimizedMeasure quantum_discord(const DensityMatrix &rho2, MeasuredSide side, const DiscordOptions &opts) {
    OptimizedMeasure res = classical_discord(rho2, side, opts);
    res.value = clip_nonnegative(mutual_information(rho2) - res.value);
    return res;
}

OptimizedMeasure local_work(const DensityMatrix &rho2, LocalWorkVariant variant, MeasuredSide side,
                            const DiscordOptions &opts) {
    const BlochForm b = bloch_form(rho2);
    OptimizedMeasure res;
    if (variant == LocalWorkVariant::kOneSided) {
        const Sided sd = sided(b, side);
        auto f = [&sd](const std::vector<double> &x) {
            return conditional_entropy(sd, direction_of(x[0], x[1]), true);
        };
        std::vector<std::vector<double>> grid;
        for (auto [theta, phi] : sphere_grid(opts.phi_points, opts.theta_points)) {
            grid.push_back({theta, phi});
        }
        res = minimize_angles(f, grid, 0.5 * kPi / (opts.theta_points - 1), opts);
    } else {
        auto f = [&b](const std::vector<double> &x) {
            return product_dephased_entropy(b, direction_of(x[0], x[1]), direction_of(x[2], x[3]));
        };
        // n and -n give the same dephasing, so each side only needs the
        // upper hemisphere.
        const int phi_points = std::max(4, opts.phi_points / 5);
        const int theta_points = std::max(3, opts.theta_points / 5 + 1);
        std::vector<std::pair<double, double>> dirs;
        for (int j = 0; j < theta_points; ++j) {
            const double theta = 0.5 * kPi * j / (theta_points - 1);
            for (int i = 0; i < (j == 0 ? 1 : phi_points); ++i) {
                dirs.emplace_back(theta, 2.0 * kPi * i / phi_points);
            }
        }
        std::vector<std::vector<double>> grid;
        grid.reserve(dirs.size() * dirs.size());
        for (auto [ta, pa] : dirs) {
            for (auto [tb, pb] : dirs) {
                grid.push_back({ta, pa, tb, pb});
            }
        }
        res = minimize_angles(f, grid, 0.25 * kPi / (theta_points - 1), opts);
    }
    res.value = std::clamp(2.0 - res.value, 0.0, 2.0);
    return res;
}

double log_negativity(const DensityMatrix &rho2) {
    require_two_qubits(rho2);
    const CMatrix pt = partial_transpose(rho2, QubitSubset({1}, 2));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(pt, Eigen::EigenvaluesOnly);
    const double trace_norm = es.eigenvalues().cwiseAbs().sum();
    return clip_nonnegative(std::log2(trace_norm));
}

double concurrence(const DensityMatrix &rho2) {
    require_two_qubits(rho2);
    const Eigen::Matrix2cd y = pauli_matrix(Pauli::Y);
    CMatrix yy(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            yy.block(2 * i, 2 * j, 2, 2) = y(i, j) * y;
        }
    }
    const CMatrix &rho = rho2.matrix();
    const CMatrix flipped = yy * rho.conjugate() * yy;

    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const CMatrix sqrt_rho = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
    CMatrix r = sqrt_rho * flipped * sqrt_rho;
    r = (0.5 * (r + r.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es2(r, Eigen::EigenvaluesOnly);
    Eigen::VectorXd lam = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(lam.data(), lam.data() + lam.size(), std::greater<>());
    return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

double entanglement_of_formation(const DensityMatrix &rho2) {
    const double c = std::min(1.0, concurrence(rho2));
    return binary_entropy((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
}

std::vector<DensityMatrix> nodal_pairs(const DensityMatrix &rho, int nodal) {
    const int n = rho.n_qubits();
    if (nodal < 0 || nodal >= n) {
        throw std::out_of_range("nodal qubit outside register");
    }
    std::vector<DensityMatrix> out;
    for (int i = 0; i < n; ++i) {
        if (i != nodal) {
            out.push_back(partial_trace(rho, QubitSubset::pair(nodal, i, n)));
        }
    }
    return out;
}

double pair_measure(const DensityMatrix &pair, MeasureKind kind, const MeasureOptions &opts) {
    require_two_qubits(pair);
    const MeasuredSide side = opts.direction == Direction::kPartner ? MeasuredSide::kSecond : MeasuredSide::kFirst;
    switch (kind) {
        case MeasureKind::kCmax:
        case MeasureKind::kGenuineCmax:
            return genuine_max(pair, opts.cmax_mode).value;
        case MeasureKind::kClassicalDiscord:
            return classical_discord(pair, side, opts.discord).value;
        case MeasureKind::kQuantumDiscord:
            return quantum_discord(pair, side, opts.discord).value;
        case MeasureKind::kLocalWork:
            return local_work(pair, opts.lw_variant, side, opts.discord).value / (opts.lw_normalized ? 2.0 : 1.0);
        case MeasureKind::kMutualInfo:
            return mutual_information(pair);
        case MeasureKind::kLogNegativity:
            return log_negativity(pair);
        case MeasureKind::kEoF:
            return entanglement_of_formation(pair);
    }
    throw std::logic_error("unreachable");
}

double distributed_measure(const DensityMatrix &rho, MeasureKind kind, int nodal, const MeasureOptions &opts) {
    if (kind == MeasureKind::kGenuineCmax) {
        return genuine_max(rho, opts.cmax_mode).value;
    }
    double total = 0.0;
    for (const DensityMatrix &pair : nodal_pairs(rho, nodal)) {
        total += pair_measure(pair, kind, opts);
    }
    return total;
}

std::string MeasureSpec::label() const {
    std::string out = measure_name(kind);
    const MeasureOptions defaults;
    const bool sided = kind == MeasureKind::kClassicalDiscord || kind == MeasureKind::kQuantumDiscord ||
                       kind == MeasureKind::kLocalWork;
    if (sided && options.direction != defaults.direction) {
        out += ":nodal";
    }
    if (kind == MeasureKind::kLocalWork) {
        if (options.lw_variant == LocalWorkVariant::kOneSided) {
            out += ":one_sided";
        }
        if (options.lw_normalized) {
            out += ":normalized";
        }
    }
    if ((kind == MeasureKind::kCmax || kind == MeasureKind::kGenuineCmax) &&
        options.cmax_mode == SearchMode::kFullSearch) {
        out += ":full";
    }
    return out;
}

MeasureSpec parse_measure_spec(std::string_view text) {
    const size_t colon = text.find(':');
    MeasureSpec spec(parse_measure_kind(text.substr(0, colon)));
    const MeasureKind k = spec.kind;
    const bool sided =
        k == MeasureKind::kClassicalDiscord || k == MeasureKind::kQuantumDiscord || k == MeasureKind::kLocalWork;
    const bool cmax = k == MeasureKind::kCmax || k == MeasureKind::kGenuineCmax;
    size_t pos = colon;
    while (pos != std::string_view::npos) {
        const size_t next = text.find(':', pos + 1);
        const std::string_view mod =
            text.substr(pos + 1, next == std::string_view::npos ? std::string_view::npos : next - pos - 1);
        if (sided && (mod == "nodal" || mod == "partner")) {
            spec.options.direction = mod == "nodal" ? Direction::kNodal : Direction::kPartner;
        } else if (k == MeasureKind::kLocalWork && (mod == "one_sided" || mod == "two_sided")) {
            spec.options.lw_variant = mod == "one_sided" ? LocalWorkVariant::kOneSided : LocalWorkVariant::kTwoSided;
        } else if (k == MeasureKind::kLocalWork && mod == "normalized") {
            spec.options.lw_normalized = true;
        } else if (cmax && (mod == "full" || mod == "same")) {
            spec.options.cmax_mode = parse_search_mode(mod);
        } else {
            throw std::invalid_argument("modifier '" + std::string(mod) + "' does not apply to " +
                                        measure_name(k));
        }
        pos = next;
    }
    return spec;
}

double distributed_measure(const DensityMatrix &rho, const MeasureSpec &spec, int nodal) {
    return distributed_measure(rho, spec.kind, nodal, spec.options);
}

KoashiWinter koashi_winter_check(const DensityMatrix &rho, int nodal, const DiscordOptions &opts) {
    const int n = rho.n_qubits();
    if (n < 3) {
        throw std::invalid_argument("Koashi-Winter check needs at least 3 qubits");
    }
    const std::vector<DensityMatrix> pairs = nodal_pairs(rho, nodal);
    const size_t m = pairs.size();
    double lhs = 0.0;
    for (size_t i = 0; i < m; ++i) {
        lhs += entanglement_of_formation(pairs[i]);
        lhs += classical_discord(pairs[(i + 1) % m], MeasuredSide::kSecond, opts).value;
    }
    const double bound = (n - 1) * von_neumann_entropy(partial_trace(rho, QubitSubset({nodal}, n)));
    return {lhs, bound, lhs <= bound + 1e-8};
}

}  // namespace qcorr
