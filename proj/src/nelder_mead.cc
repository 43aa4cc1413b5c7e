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

#include "qcorr/nelder_mead.h"

#include <algorithm>
#include <numeric>

namespace qcorr {

SimplexResult nelder_mead(const std::function<double(const std::vector<double> &)> &f, std::vector<double> start,
                          double step, double tolerance, int max_iterations) {
    const size_t n = start.size();
    std::vector<std::vector<double>> pts(n + 1, start);
    for (size_t i = 0; i < n; ++i) {
        pts[i + 1][i] += step;
    }
    std::vector<double> vals(n + 1);
    for (size_t i = 0; i <= n; ++i) {
        vals[i] = f(pts[i]);
    }
    std::vector<size_t> order(n + 1);

    auto blend = [n](const std::vector<double> &a, const std::vector<double> &b, double t) {
        std::vector<double> out(n);
        for (size_t j = 0; j < n; ++j) {
            out[j] = a[j] + t * (b[j] - a[j]);
        }
        return out;
    };

    int it = 0;
    bool converged = false;
    for (; it < max_iterations; ++it) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        const size_t best = order.front();
        const size_t worst = order.back();
        const size_t second_worst = order[n - 1];
        if (vals[worst] - vals[best] <= tolerance) {
            converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i <= n; ++i) {
            if (i == worst) {
                continue;
            }
            for (size_t j = 0; j < n; ++j) {
                centroid[j] += pts[i][j] / static_cast<double>(n);
            }
        }
        std::vector<double> reflected = blend(centroid, pts[worst], -1.0);
        const double fr = f(reflected);
        if (fr < vals[best]) {
            std::vector<double> expanded = blend(centroid, pts[worst], -2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                pts[worst] = std::move(expanded);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(reflected);
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second_worst]) {
            pts[worst] = std::move(reflected);
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        std::vector<double> contracted = outside ? blend(centroid, reflected, 0.5) : blend(centroid, pts[worst], 0.5);
        const double fc = f(contracted);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = std::move(contracted);
            vals[worst] = fc;
            continue;
        }
        for (size_t i = 0; i <= n; ++i) {
            if (i == best) {
                continue;
            }
            pts[i] = blend(pts[best], pts[i], 0.5);
            vals[i] = f(pts[i]);
        }
    }
    const size_t best = static_cast<size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return {pts[best], vals[best], converged, it};
}

}  // namespace qcorr
