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

#ifndef QSPLIT_ESTIMATOR_HPP
#define QSPLIT_ESTIMATOR_HPP

#include <atomic>
#include <functional>
#include <thread>

#include "qsplit/ladder.hpp"
#include "qsplit/metropolis.hpp"
#include "qsplit/ratio.hpp"

namespace qsplit {

enum class LogicalKind {
    loop,  // phase-flip species
    path,  // bit-flip species
};

inline const char* to_string(LogicalKind k) {
    return k == LogicalKind::loop ? "loop" : "path";
}

/// Small-p closed form P_L ≈ 0.5 (4r choose 2r) p^{2r}, with an extra factor
/// r for path-like errors counting the minimal connecting rows.
struct AnchorValue {
    double value = 0;
    double sigma_rel = 0;
    std::string provenance;
    bool validity_warning = false;
};

inline double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; i++)
        r = r * double(n - k + i) / double(i);
    return r;
}

inline AnchorValue asymptotic_anchor(int r, double p, LogicalKind kind) {
    AnchorValue a;
    a.value = 0.5 * binomial(4 * r, 2 * r) * std::pow(p, 2 * r);
    if (kind == LogicalKind::path)
        a.value *= double(r);
    a.provenance = "asymptotic";
    a.validity_warning = p > 0.01;
    return a;
}

// ---------------------------------------------------------------------------
// Direct Monte Carlo.
// ---------------------------------------------------------------------------

struct McResult {
    double p_l = 0;
    double sigma_rel = 0;
    uint64_t failures = 0;
    uint64_t trials = 0;
    bool upper_bound = false;  // zero failures: p_l holds 3/trials
};

constexpr uint64_t kMcBlockSize = 4096;

/// Samples chains with independent edge flips and counts decoder failures.
/// Trials are split into fixed blocks with per-block derived streams, so the
/// result is bit-identical for any worker count.
inline McResult monte_carlo_estimate(const DecodingGraph& g, const NoiseModel& noise, uint64_t trials,
                                     uint64_t master_seed, int workers = 1,
                                     double normalization = 1.0) {
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_estimate: trials must be >= 1");
    uint64_t n_blocks = (trials + kMcBlockSize - 1) / kMcBlockSize;
    std::atomic<uint64_t> next_block{0};
    std::atomic<uint64_t> failures{0};
    auto work = [&]() {
        while (true) {
            uint64_t b = next_block.fetch_add(1);
            if (b >= n_blocks)
                break;
            Stream rng = derive_stream(master_seed, "mc-block", b);
            uint64_t begin = b * kMcBlockSize;
            uint64_t end = std::min(trials, begin + kMcBlockSize);
            uint64_t local = 0;
            for (uint64_t t = begin; t < end; t++) {
                EdgeSet chain = sample_chain(noise, rng);
                if (!is_correctable_decoder_specific(g, chain))
                    local++;
            }
            failures.fetch_add(local);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; i++)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    McResult res;
    res.trials = trials;
    res.failures = failures.load();
    if (res.failures == 0) {
        res.p_l = 3.0 / double(trials) * normalization;
        res.sigma_rel = kInf;
        res.upper_bound = true;
    } else {
        double phat = double(res.failures) / double(trials);
        res.p_l = phat * normalization;
        res.sigma_rel = std::sqrt(phat * (1 - phat) / double(trials)) / phat;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Splitting estimate.
// ---------------------------------------------------------------------------

struct RungRecord {
    int index = 0;
    double p = 0;
    size_t n_samples = 0;
    uint64_t steps = 0;
    uint64_t flips = 0;
    double acceptance = 0;
    bool converged = true;
    // Per-sample log ratios against the neighbouring rungs; enough to redo the
    // ratio estimates on resume without the raw chains.
    std::vector<double> logratio_prev;
    std::vector<double> logratio_next;
};

struct SplitOptions {
    size_t samples_per_rung = 400;
    uint64_t thin = 0;          // 0: use the edge count
    double burn_in_fraction = 0.1;
    bool convergence_check = false;
    bool warm_start = false;
    int workers = 1;
    uint64_t master_seed = 1;
    // Called after a rung finishes (checkpointing). May be empty.
    std::function<void(const RungRecord&)> checkpoint;
    // Asked before sampling a rung; returning true fills the record instead.
    std::function<bool(int, RungRecord&)> resume;
};

struct SplitResult {
    std::vector<double> rates;
    AnchorValue anchor;
    std::vector<RungRecord> rungs;
    std::vector<RatioEstimate> ratios;   // size rates.size()-1
    std::vector<double> p_l_at_rung;     // cumulative anchor · Π R
    std::vector<double> sigma_at_rung;
    double p_l = 0;
    double sigma_rel = 0;
};

namespace detail {

template <typename NoiseBuilder>
RungRecord sample_rung(const DecodingGraph& g, NoiseBuilder&& noise_builder,
                       const std::vector<double>& rates, int j, const SplitOptions& opt,
                       const EdgeSet& start, EdgeSet* final_chain = nullptr) {
    NoiseModel noise = noise_builder(rates[size_t(j)]);
    uint64_t thin = opt.thin ? opt.thin : uint64_t(g.num_edges());
    uint64_t sampling_steps = uint64_t(opt.samples_per_rung) * thin;
    uint64_t burn_in = uint64_t(double(sampling_steps) * opt.burn_in_fraction / 0.9) + 1;
    uint64_t m_steps = burn_in + sampling_steps;
    Stream rng = derive_stream(opt.master_seed, "split-rung", uint64_t(j));
    FailureSamples samples = sample_failures(g, noise, start, m_steps, thin, burn_in, rng);
    if (final_chain && !samples.chains.empty())
        *final_chain = samples.chains.back();

    RungRecord rec;
    rec.index = j;
    rec.p = rates[size_t(j)];
    rec.n_samples = samples.chains.size();
    rec.steps = samples.stats.steps;
    rec.flips = samples.stats.flips;
    rec.acceptance = samples.stats.steps ? double(samples.stats.flips) / double(samples.stats.steps) : 0;

    auto fill = [&](int other, std::vector<double>& out) {
        if (other < 0 || other >= int(rates.size()))
            return;
        NoiseModel noise_other = noise_builder(rates[size_t(other)]);
        out.reserve(samples.chains.size());
        for (size_t i = 0; i < samples.chains.size(); i++)
            out.push_back(samples.log_probs[i] - noise_other.chain_log_probability(samples.chains[i]));
    };
    fill(j - 1, rec.logratio_prev);
    fill(j + 1, rec.logratio_next);

    if (opt.convergence_check && rec.n_samples >= 8) {
        // Doubling heuristic: the first half must agree with the full series.
        size_t half = rec.logratio_next.empty() ? rec.logratio_prev.size() / 2
                                                : rec.logratio_next.size() / 2;
        const auto& series = rec.logratio_next.empty() ? rec.logratio_prev : rec.logratio_next;
        if (half >= 4) {
            double m_half = 0, m_full = 0;
            for (size_t i = 0; i < half; i++)
                m_half += g_log(series[i]);
            m_half /= double(half);
            for (double t : series)
                m_full += g_log(t);
            m_full /= double(series.size());
            double tol = 0.25 * std::max(m_full, 1e-6);
            rec.converged = std::abs(m_half - m_full) <= tol;
        }
    }
    return rec;
}

}  // namespace detail

/// Telescoping estimate P_L = anchor · Π_j R_j with per-rung Metropolis
/// sampling and acceptance-ratio rung estimators. Rungs are sampled
/// independently (fresh start chain, derived per-rung stream), so they can run
/// in parallel; warm_start trades that for shorter burn-in.
template <typename NoiseBuilder>
SplitResult splitting_estimate(const DecodingGraph& g, NoiseBuilder&& noise_builder,
                               const std::vector<double>& rates, const AnchorValue& anchor,
                               const SplitOptions& opt) {
    if (rates.empty())
        throw std::invalid_argument("splitting_estimate: empty ladder");
    SplitResult res;
    res.rates = rates;
    res.anchor = anchor;
    res.rungs.resize(rates.size());

    EdgeSet start = initial_failure_chain(g);
    std::vector<uint8_t> have(rates.size(), 0);
    for (size_t j = 0; j < rates.size(); j++) {
        RungRecord rec;
        if (opt.resume && opt.resume(int(j), rec)) {
            res.rungs[j] = std::move(rec);
            have[j] = 1;
        }
    }

    auto run_rung = [&](int j, EdgeSet* final_chain) {
        res.rungs[size_t(j)] = detail::sample_rung(g, noise_builder, rates, j, opt, start, final_chain);
        if (opt.checkpoint)
            opt.checkpoint(res.rungs[size_t(j)]);
    };

    if (opt.warm_start || rates.size() == 1 || opt.workers <= 1) {
        for (size_t j = 0; j < rates.size(); j++) {
            if (!have[j]) {
                EdgeSet last;
                run_rung(int(j), opt.warm_start ? &last : nullptr);
                if (opt.warm_start && !last.empty())
                    start = last;
            }
        }
    } else {
        std::atomic<size_t> next{0};
        auto work = [&]() {
            while (true) {
                size_t j = next.fetch_add(1);
                if (j >= rates.size())
                    break;
                if (!have[j])
                    run_rung(int(j), nullptr);
            }
        };
        std::vector<std::thread> pool;
        int nw = std::min<int>(opt.workers, int(rates.size()));
        for (int i = 0; i < nw; i++)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }

    double log_pl = std::log(anchor.value);
    double var = anchor.sigma_rel * anchor.sigma_rel;
    res.p_l_at_rung.push_back(anchor.value);
    res.sigma_at_rung.push_back(anchor.sigma_rel);
    for (size_t j = 0; j + 1 < rates.size(); j++) {
        RatioEstimate ratio =
            acceptance_ratio_estimate(res.rungs[j].logratio_next, res.rungs[j + 1].logratio_prev);
        if (!ratio.overlap_ok)
            throw RungOverlapError(int(j), "rung " + std::to_string(j) +
                                               " has negligible overlap; use a denser ladder");
        res.ratios.push_back(ratio);
        log_pl += std::log(ratio.ratio);
        var += ratio.sigma_rel * ratio.sigma_rel;
        res.p_l_at_rung.push_back(std::exp(log_pl));
        res.sigma_at_rung.push_back(std::sqrt(var));
    }
    res.p_l = res.p_l_at_rung.back();
    res.sigma_rel = res.sigma_at_rung.back();
    return res;
}

}  // namespace qsplit

#endif
