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

#ifndef QSPLIT_NOISE_HPP
#define QSPLIT_NOISE_HPP

#include "qsplit/common.hpp"
#include "qsplit/rng.hpp"

namespace qsplit {

/// Independent per-edge error rates. π(E) = Π_{e∈E} p(e) Π_{e∉E} (1-p(e));
/// log π is affine in the chain: empty_log_prob + Σ_{e∈E} λ(e) with
/// λ(e) = ln(p/(1-p)), so single-edge flips update it in O(1).
struct NoiseModel {
    std::vector<double> rate;
    std::vector<double> log_odds;
    double empty_log_prob = 0;

    static NoiseModel uniform(size_t n_edges, double p) {
        return from_rates(std::vector<double>(n_edges, p));
    }

    static NoiseModel from_rates(std::vector<double> rates) {
        NoiseModel nm;
        nm.rate = std::move(rates);
        nm.log_odds.resize(nm.rate.size());
        nm.empty_log_prob = 0;
        for (size_t i = 0; i < nm.rate.size(); i++) {
            double p = nm.rate[i];
            if (!(p > 0 && p <= 0.5))
                throw std::invalid_argument("noise rate must lie in (0, 1/2]");
            nm.log_odds[i] = std::log(p / (1 - p));
            nm.empty_log_prob += std::log1p(-p);
        }
        return nm;
    }

    size_t num_edges() const {
        return rate.size();
    }

    double chain_log_probability(const EdgeSet& chain) const {
        double lp = empty_log_prob;
        chain.for_each([&](int k) { lp += log_odds[size_t(k)]; });
        return lp;
    }

    /// log π(E⊕e) - log π(E).
    double flip_delta(int edge, bool currently_present) const {
        return currently_present ? -log_odds[size_t(edge)] : log_odds[size_t(edge)];
    }

    /// Σ_e p(e): the expected chain size, used by the ladder rule.
    double expected_weight() const {
        double s = 0;
        for (double p : rate)
            s += p;
        return s;
    }

    double max_rate() const {
        double m = 0;
        for (double p : rate)
            m = std::max(m, p);
        return m;
    }
};

/// Samples a chain with independent per-edge flips. Skips ahead with a
/// geometric draw at the maximum rate, then thins to the per-edge rate.
inline EdgeSet sample_chain(const NoiseModel& noise, Stream& rng) {
    size_t n = noise.num_edges();
    EdgeSet chain(n);
    double pmax = noise.max_rate();
    if (pmax <= 0)
        return chain;
    double log1m = std::log1p(-pmax);
    size_t i = 0;
    while (i < n) {
        if (pmax < 1.0) {
            double u = rng.uniform();
            double skip = std::floor(std::log1p(-u) / log1m);
            if (skip >= double(n))
                break;
            i += size_t(skip);
            if (i >= n)
                break;
        }
        if (rng.uniform() * pmax < noise.rate[i])
            chain.add(i);
        i++;
    }
    return chain;
}

}  // namespace qsplit

#endif
