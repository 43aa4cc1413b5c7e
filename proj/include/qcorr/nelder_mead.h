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

#ifndef QCORR_NELDER_MEAD_H
#define QCORR_NELDER_MEAD_H

#include <functional>
#include <vector>

namespace qcorr {

struct SimplexResult {
    std::vector<double> x;
    double value;
    bool converged;
    int iterations;
};

/// Derivative-free minimization with the standard reflect / expand /
/// contract / shrink moves. Converges when the spread of function values
/// over the simplex drops below `tolerance`.
SimplexResult nelder_mead(const std::function<double(const std::vector<double> &)> &f, std::vector<double> start,
                          double step, double tolerance, int max_iterations);

}  // namespace qcorr

#endif
