// Copyright 2026 qsplit Contributors
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

#ifndef QSPLIT_LADDER_HPP
#define QSPLIT_LADDER_HPP

#include <functional>

#include "qsplit/common.hpp"

namespace qsplit {

/// Inputs for the rate-sequence rule p_{j+1} = p_j · 2^{±1/√w_j}.
/// For uniform noise w_j = max(d/2, p_j·n); for prior-based noise
/// w_j = Σ_e p_j(e), supplied through expected_weight.
struct LadderParams {
    double distance = 0;  // code distance d
    int n_edges = 0;
    std::function<double(double)> expected_weight;  // optional override w(p)

    double w(double p) const {
        if (expected_weight)
            return expected_weight(p);
        return std::max(distance / 2, p * double(n_edges));
    }
};

inline std::vector<double> make_ladder(double p_start, double p_target, const LadderParams& params) {
    if (!(p_start > 0 && p_start < 0.5) || !(p_target > 0 && p_target < 0.5))
        throw std::invalid_argument("ladder rates must lie in (0, 1/2)");
    std::vector<double> rates{p_start};
    if (p_start == p_target)
        return rates;
    bool upward = p_target > p_start;
    double p = p_start;
    while (true) {
        double w = params.w(p);
        if (!(w > 0))
            throw std::invalid_argument("ladder weight rule returned a non-positive value");
        double factor = std::exp2((upward ? 1.0 : -1.0) / std::sqrt(w));
        p *= factor;
        if ((upward && p >= p_target) || (!upward && p <= p_target)) {
            rates.push_back(p_target);
            break;
        }
        rates.push_back(p);
        if (rates.size() > 100000)
            throw std::runtime_error("ladder did not converge");
    }
    return rates;
}

}  // namespace qsplit

#endif
