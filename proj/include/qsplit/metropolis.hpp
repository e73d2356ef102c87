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

#ifndef QSPLIT_METROPOLIS_HPP
#define QSPLIT_METROPOLIS_HPP

#include "qsplit/correctability.hpp"
#include "qsplit/noise.hpp"

namespace qsplit {

struct MetropolisStats {
    uint64_t steps = 0;
    uint64_t accepted_bits = 0;     // proposals whose acceptance bit came up 1
    uint64_t membership_tests = 0;  // decoder calls
    uint64_t flips = 0;             // non-trivial steps (state actually moved)
};

/// Walker over uncorrectable chains. Membership in the failure set is an
/// invariant: a move is taken only when the flipped chain is still
/// uncorrectable under the decoder.
class MetropolisSampler {
   public:
    MetropolisSampler(const DecodingGraph& g, const NoiseModel& noise, EdgeSet start, Stream rng)
        : g_(&g), noise_(&noise), rng_(rng), chain_(std::move(start)), cache_(g) {
        if (noise.num_edges() != size_t(g.num_edges()))
            throw std::invalid_argument("noise model does not match the graph");
        in_syndrome_.assign(size_t(g.num_vertices), 0);
        for (int v : syndrome_of(g, chain_)) {
            in_syndrome_[size_t(v)] = 1;
            syndrome_.push_back(v);
        }
        log_prob_ = noise.chain_log_probability(chain_);
        parity_ = parity(g, chain_);
        cache_.ensure(syndrome_);
        if (is_correctable_decoder_specific(g, chain_, &cache_))
            throw std::invalid_argument("metropolis start chain is correctable");
    }

    const EdgeSet& chain() const {
        return chain_;
    }
    double log_prob() const {
        return log_prob_;
    }
    const MetropolisStats& stats() const {
        return stats_;
    }
    const std::vector<int>& syndrome() const {
        return syndrome_;
    }
    PathCache& cache() {
        return cache_;
    }

    /// One Metropolis step: uniform edge proposal, acceptance bit with
    /// q = min(1, π(E')/π(E)), and a failure-set membership test only when the
    /// bit came up 1.
    void step() {
        stats_.steps++;
        int e = rng_.uniform_int(g_->num_edges());
        bool present = chain_.contains(size_t(e));
        double delta = noise_->flip_delta(e, present);
        bool bit;
        if (delta >= 0) {
            bit = true;
        } else {
            bit = rng_.uniform() < std::exp(delta);
        }
        if (!bit)
            return;
        stats_.accepted_bits++;

        // Tentatively toggle the syndrome at the edge's non-boundary endpoints.
        const auto& ge = g_->edges[size_t(e)];
        std::vector<int> added, removed;
        for (int v : {ge.u, ge.v}) {
            if (g_->is_boundary(v))
                continue;
            if (in_syndrome_[size_t(v)])
                removed.push_back(v);
            else
                added.push_back(v);
        }
        if (ge.u == ge.v)
            throw std::logic_error("self loop");
        apply_syndrome_toggle(added, removed);
        cache_.update({}, added);

        stats_.membership_tests++;
        EdgeSet candidate = chain_;
        candidate.flip(size_t(e));
        EdgeSet recovery = decode(*g_, syndrome_, &cache_);
        int cand_parity = parity_ ^ (g_->logical_chain.contains(size_t(e)) ? 1 : 0);
        bool uncorrectable = parity(*g_, recovery) != cand_parity;
        if (uncorrectable) {
            chain_ = std::move(candidate);
            parity_ = cand_parity;
            log_prob_ += delta;
            stats_.flips++;
            if (cache_.size() > cache_limit_)
                cache_.prune(syndrome_, cache_limit_ / 2);
        } else {
            apply_syndrome_toggle(removed, added);  // revert
        }
    }

   private:
    void apply_syndrome_toggle(const std::vector<int>& add, const std::vector<int>& remove) {
        for (int v : remove) {
            in_syndrome_[size_t(v)] = 0;
            auto it = std::lower_bound(syndrome_.begin(), syndrome_.end(), v);
            syndrome_.erase(it);
        }
        for (int v : add) {
            in_syndrome_[size_t(v)] = 1;
            syndrome_.insert(std::lower_bound(syndrome_.begin(), syndrome_.end(), v), v);
        }
    }

    const DecodingGraph* g_;
    const NoiseModel* noise_;
    Stream rng_;
    EdgeSet chain_;
    PathCache cache_;
    std::vector<uint8_t> in_syndrome_;
    std::vector<int> syndrome_;
    double log_prob_ = 0;
    int parity_ = 0;
    MetropolisStats stats_;
    size_t cache_limit_ = 4096;
};

inline void metropolis_step(MetropolisSampler& sampler) {
    sampler.step();
}

/// Deterministic uncorrectable starting chain carried by the graph: the
/// defect-encircling loop for loop-like errors, the defect-connecting path
/// for path-like errors, and their fixed-time analogues on circuit graphs.
inline EdgeSet initial_failure_chain(const DecodingGraph& g) {
    if (g.seed_chain.empty())
        throw ConstructionError("graph carries no starting chain");
    return g.seed_chain;
}

struct FailureSamples {
    std::vector<EdgeSet> chains;
    std::vector<double> log_probs;
    MetropolisStats stats;
};

/// Runs M Metropolis steps from E0 and records every `thin`-th chain after a
/// burn-in prefix.
inline FailureSamples sample_failures(const DecodingGraph& g, const NoiseModel& noise, const EdgeSet& e0,
                                      uint64_t m_steps, uint64_t thin, uint64_t burn_in, Stream rng) {
    if (thin == 0)
        thin = 1;
    MetropolisSampler sampler(g, noise, e0, rng);
    FailureSamples out;
    for (uint64_t i = 1; i <= m_steps; i++) {
        sampler.step();
        if (i > burn_in && (i - burn_in) % thin == 0) {
            out.chains.push_back(sampler.chain());
            out.log_probs.push_back(sampler.log_prob());
        }
    }
    out.stats = sampler.stats();
    return out;
}

}  // namespace qsplit

#endif
