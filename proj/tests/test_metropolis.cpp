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

#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "qsplit/lattice.hpp"
#include "qsplit/metropolis.hpp"
#include "test_graphs.hpp"

using namespace qsplit;

namespace {

uint32_t mask_of(const EdgeSet& chain) {
    uint32_t m = 0;
    chain.for_each([&](int k) { m |= uint32_t(1) << k; });
    return m;
}

std::function<EdgeSet(const std::vector<int>&)> decoder_fn(const DecodingGraph& g) {
    return [&g](const std::vector<int>& s) { return decode(g, s); };
}

/// Exact transition matrix of the Metropolis step over the failure set.
struct ExactChain {
    std::vector<EdgeSet> states;
    std::map<uint32_t, int> index;
    std::vector<std::vector<double>> p;
    std::vector<double> pi_conditional;
};

ExactChain exact_transition_matrix(const DecodingGraph& g, const NoiseModel& noise) {
    ExactChain out;
    out.states = oracles::enumerate_failure_set(g, decoder_fn(g));
    for (size_t i = 0; i < out.states.size(); i++)
        out.index[mask_of(out.states[i])] = int(i);
    auto dist = oracles::failure_distribution(out.states, noise);
    out.pi_conditional = dist.conditional;
    size_t n_states = out.states.size();
    int m = g.num_edges();
    out.p.assign(n_states, std::vector<double>(n_states, 0));
    for (size_t i = 0; i < n_states; i++) {
        double stay = 0;
        for (int k = 0; k < m; k++) {
            EdgeSet next = out.states[i];
            next.flip(size_t(k));
            double q = std::min(1.0, std::exp(noise.flip_delta(k, out.states[i].contains(size_t(k)))));
            auto it = out.index.find(mask_of(next));
            if (it != out.index.end())
                out.p[i][size_t(it->second)] += q / double(m);
            else
                stay += q / double(m);  // accepted bit, rejected membership
            stay += (1 - q) / double(m);
        }
        out.p[i][i] += stay;
    }
    return out;
}

}  // namespace

TEST(Noise, ChainLogProbability) {
    auto noise = NoiseModel::uniform(10, 0.05);
    EdgeSet empty(10);
    EXPECT_NEAR(noise.chain_log_probability(empty), 10 * std::log(0.95), 1e-12);
    EdgeSet full(10);
    for (int k = 0; k < 10; k++)
        full.add(size_t(k));
    EXPECT_NEAR(noise.chain_log_probability(full), 10 * std::log(0.05), 1e-12);

    Stream rng(51);
    std::vector<double> rates;
    for (int k = 0; k < 10; k++)
        rates.push_back(0.01 + 0.4 * rng.uniform());
    auto pernoise = NoiseModel::from_rates(rates);
    EdgeSet chain(10);
    for (int k = 0; k < 10; k++)
        if (rng.bernoulli(0.5))
            chain.add(size_t(k));
    double direct = 0;
    for (int k = 0; k < 10; k++)
        direct += chain.contains(size_t(k)) ? std::log(rates[size_t(k)]) : std::log1p(-rates[size_t(k)]);
    EXPECT_NEAR(pernoise.chain_log_probability(chain), direct, 1e-12);
}

TEST(Noise, FlipDeltaAndRemovalAlwaysAccepted) {
    auto noise = NoiseModel::uniform(5, 0.2);
    double lambda = std::log(0.2 / 0.8);
    EXPECT_NEAR(noise.flip_delta(0, false), lambda, 1e-15);
    EXPECT_NEAR(noise.flip_delta(0, true), -lambda, 1e-15);
    // Removing an edge: q = min(1, (1-p)/p) = 1 for p <= 1/2.
    EXPECT_GE(noise.flip_delta(0, true), 0.0);
    EXPECT_THROW(NoiseModel::uniform(3, 0.6), std::invalid_argument);
    EXPECT_THROW(NoiseModel::uniform(3, 0.0), std::invalid_argument);
}

TEST(Noise, BoundaryRateHalf) {
    auto noise = NoiseModel::uniform(4, 0.5);
    EXPECT_NEAR(noise.log_odds[0], 0.0, 1e-15);
    EXPECT_NEAR(noise.expected_weight(), 2.0, 1e-12);
}

TEST(Metropolis, DetailedBalanceAndStationarity) {
    auto toy = testgraphs::two_defect_toy();
    auto noise = NoiseModel::uniform(size_t(toy.num_edges()), 0.12);
    auto chain = exact_transition_matrix(toy, noise);
    size_t n = chain.states.size();
    ASSERT_GT(n, 4u);

    std::vector<double> pi;
    for (const auto& st : chain.states)
        pi.push_back(std::exp(noise.chain_log_probability(st)));

    // Row-stochastic.
    for (size_t i = 0; i < n; i++) {
        double row = 0;
        for (size_t j = 0; j < n; j++) {
            row += chain.p[i][j];
            EXPECT_GE(chain.p[i][j], -1e-15);
        }
        EXPECT_NEAR(row, 1.0, 1e-12);
    }
    // π(E) P(E,E') = π(E') P(E',E).
    for (size_t i = 0; i < n; i++)
        for (size_t j = 0; j < n; j++) {
            double lhs = pi[i] * chain.p[i][j];
            double rhs = pi[j] * chain.p[j][i];
            EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::max(lhs, rhs)));
        }
    // π(·|F) is stationary.
    for (size_t j = 0; j < n; j++) {
        double acc = 0;
        for (size_t i = 0; i < n; i++)
            acc += chain.pi_conditional[i] * chain.p[i][j];
        EXPECT_NEAR(acc, chain.pi_conditional[j], 1e-10);
    }
}

TEST(Metropolis, EmpiricalDistributionMatchesConditional) {
    auto toy = testgraphs::cycle_graph(6);
    auto noise = NoiseModel::uniform(size_t(toy.num_edges()), 0.15);
    auto failures = oracles::enumerate_failure_set(toy, decoder_fn(toy));
    auto dist = oracles::failure_distribution(failures, noise);
    std::map<uint32_t, double> target;
    for (size_t i = 0; i < failures.size(); i++)
        target[mask_of(failures[i])] = dist.conditional[i];

    MetropolisSampler sampler(toy, noise, initial_failure_chain(toy), Stream(derive_seed(7, "tv", 0)));
    std::map<uint32_t, uint64_t> counts;
    const uint64_t steps = 1000000;
    for (uint64_t i = 0; i < steps; i++) {
        sampler.step();
        counts[mask_of(sampler.chain())]++;
    }
    double tv = 0;
    for (const auto& [mask, prob] : target) {
        double emp = counts.count(mask) ? double(counts[mask]) / double(steps) : 0.0;
        tv += std::abs(emp - prob);
    }
    for (const auto& [mask, c] : counts)
        if (!target.count(mask))
            tv += double(c) / double(steps);
    tv /= 2;
    EXPECT_LE(tv, 0.02);
}

TEST(Metropolis, SampleFailuresBasics) {
    auto toy = testgraphs::two_defect_toy();
    auto noise = NoiseModel::uniform(size_t(toy.num_edges()), 0.1);

    auto empty = sample_failures(toy, noise, initial_failure_chain(toy), 0, 5, 0, Stream(3));
    EXPECT_TRUE(empty.chains.empty());

    auto run = sample_failures(toy, noise, initial_failure_chain(toy), 5000, 7, 500, Stream(4));
    EXPECT_EQ(run.chains.size(), (5000u - 500u) / 7u);
    for (size_t i = 0; i < run.chains.size(); i++) {
        EXPECT_FALSE(is_correctable_decoder_specific(toy, run.chains[i]));
        EXPECT_NEAR(run.log_probs[i], noise.chain_log_probability(run.chains[i]), 1e-9);
    }
    EXPECT_GT(run.stats.flips, 0u);
    EXPECT_LE(run.stats.flips, run.stats.accepted_bits);

    // A correctable start chain violates the walker's invariant.
    EdgeSet correctable(toy.edges.size());
    EXPECT_THROW(sample_failures(toy, noise, correctable, 10, 1, 0, Stream(5)), std::invalid_argument);
}

TEST(Metropolis, DeterministicGivenSeed) {
    auto toy = testgraphs::two_defect_toy();
    auto noise = NoiseModel::uniform(size_t(toy.num_edges()), 0.1);
    auto a = sample_failures(toy, noise, initial_failure_chain(toy), 3000, 11, 300, Stream(99));
    auto b = sample_failures(toy, noise, initial_failure_chain(toy), 3000, 11, 300, Stream(99));
    ASSERT_EQ(a.chains.size(), b.chains.size());
    for (size_t i = 0; i < a.chains.size(); i++)
        EXPECT_TRUE(a.chains[i] == b.chains[i]);
    EXPECT_EQ(a.stats.flips, b.stats.flips);
}

TEST(Metropolis, WorksOnLatticeGraph) {
    auto lat = build_lattice(2, 8, 8, 1);
    auto built = build_decoding_graph(lat, ErrorKind::phase);
    const auto& g = built.graph;
    auto noise = NoiseModel::uniform(size_t(g.num_edges()), 0.02);
    auto run = sample_failures(g, noise, initial_failure_chain(g), 20000, 540, 2000, Stream(6));
    EXPECT_GT(run.stats.flips, 0u);
    for (const auto& c : run.chains)
        EXPECT_FALSE(is_correctable_decoder_specific(g, c));
}
