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

#ifndef QSPLIT_RATIO_HPP
#define QSPLIT_RATIO_HPP

#include "qsplit/common.hpp"

namespace qsplit {

/// g(x) = 1/(1+x), the variance-optimal choice satisfying g(x) = x^{-1} g(1/x).
/// Evaluated in log space: g(e^t) = sigmoid(-t).
inline double g_log(double t) {
    if (t >= 0) {
        double e = std::exp(-t);
        return e / (1 + e);
    }
    return 1 / (1 + std::exp(t));
}

struct RatioEstimate {
    double ratio = 0;       // π_{j+1}(F) / π_j(F)
    double constant_c = 0;  // self-consistent constant
    double sigma_rel = 0;   // relative error of the ratio
    double sigma_bound = 0; // variance diagnostic from the overlap estimate
    double g_mean_lo = 0;   // ⟨g⟩ over rung-j samples at the solution
    double g_mean_hi = 0;   // ⟨g⟩ over rung-(j+1) samples at the solution
    size_t n_lo = 0;
    size_t n_hi = 0;
    bool overlap_ok = true;
};

constexpr double kRungOverlapFloor = 1e-4;

namespace detail {

inline double mean_g(const std::vector<double>& logratios, double ln_c, double sign) {
    double s = 0;
    for (double t : logratios)
        s += g_log(sign * ln_c + t);
    return s / double(logratios.size());
}

/// Variance of the mean of a correlated series via batch means.
inline double batch_variance_of_mean(const std::vector<double>& logratios, double ln_c, double sign) {
    size_t n = logratios.size();
    size_t nb = std::min<size_t>(32, std::max<size_t>(2, n / 4));
    size_t len = n / nb;
    std::vector<double> means;
    for (size_t b = 0; b < nb; b++) {
        double s = 0;
        for (size_t i = b * len; i < (b + 1) * len; i++)
            s += g_log(sign * ln_c + logratios[i]);
        means.push_back(s / double(len));
    }
    double m = 0;
    for (double x : means)
        m += x;
    m /= double(nb);
    double v = 0;
    for (double x : means)
        v += (x - m) * (x - m);
    return v / double(nb * (nb - 1));
}

}  // namespace detail

/// Two-sample acceptance-ratio estimate of π_{j+1}(F)/π_j(F).
///
/// logratio_lo[α] = log π_j(E_α) − log π_{j+1}(E_α) over samples from rung j;
/// logratio_hi[β] = log π_{j+1}(E_β) − log π_j(E_β) over samples from rung j+1.
/// The self-consistent constant solves the sampled balance equation
/// ⟨g(Cπ_j/π_{j+1})⟩_j = ⟨g(C^{-1}π_{j+1}/π_j)⟩_{j+1}; the left side is
/// non-increasing and the right side non-decreasing in C, so the root is
/// unique and bisection on ln C is safe.
inline RatioEstimate acceptance_ratio_estimate(const std::vector<double>& logratio_lo,
                                               const std::vector<double>& logratio_hi) {
    if (logratio_lo.empty() || logratio_hi.empty())
        throw std::invalid_argument("acceptance_ratio_estimate: empty sample set");
    RatioEstimate out;
    out.n_lo = logratio_lo.size();
    out.n_hi = logratio_hi.size();

    auto balance = [&](double ln_c) {
        return detail::mean_g(logratio_lo, ln_c, +1.0) - detail::mean_g(logratio_hi, ln_c, -1.0);
    };
    double lo = -50, hi = 50;
    double flo = balance(lo), fhi = balance(hi);
    if (!(flo >= fhi - 1e-12))
        throw std::logic_error("acceptance ratio balance is not monotone");
    if (flo < 0 || fhi > 0) {
        // No sign change: one side's g-average vanishes over the whole range.
        out.overlap_ok = false;
        out.ratio = std::exp(flo < 0 ? lo : hi);
        return out;
    }
    for (int it = 0; it < 200; it++) {
        double mid = 0.5 * (lo + hi);
        if (balance(mid) >= 0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-10)
            break;
    }
    double ln_c = 0.5 * (lo + hi);
    double a = detail::mean_g(logratio_lo, ln_c, +1.0);
    double b = detail::mean_g(logratio_hi, ln_c, -1.0);
    out.constant_c = std::exp(ln_c);
    out.ratio = out.constant_c * a / b;
    out.g_mean_lo = a;
    out.g_mean_hi = b;
    out.overlap_ok = std::min(a, b) >= kRungOverlapFloor;

    double var_a = detail::batch_variance_of_mean(logratio_lo, ln_c, +1.0);
    double var_b = detail::batch_variance_of_mean(logratio_hi, ln_c, -1.0);
    out.sigma_rel = std::sqrt(var_a / (a * a) + var_b / (b * b));
    // Overlap-based diagnostic: the harmonic-mean overlap is 2⟨g⟩ at C = R.
    double overlap = std::min(1.0, 2 * a);
    double n_eff = double(std::min(out.n_lo, out.n_hi));
    out.sigma_bound = std::sqrt(std::max(0.0, (2.0 / n_eff) * (1.0 / overlap - 1.0)));
    return out;
}

}  // namespace qsplit

#endif
