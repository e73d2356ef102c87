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

#ifndef QSPLIT_COMMON_HPP
#define QSPLIT_COMMON_HPP

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsplit {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Relative tolerance used everywhere two chain weights are compared for a tie.
constexpr double kTieTolerance = 1e-9;

inline bool weights_close(double a, double b) {
    return std::abs(a - b) <= kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

struct InfeasibleSyndromeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RungOverlapError : std::runtime_error {
    int rung_index;
    RungOverlapError(int rung, const std::string& msg) : std::runtime_error(msg), rung_index(rung) {}
};

/// Dense bit vector indexed by edge id. The group operation is symmetric
/// difference, so chains compose with operator^=.
class EdgeSet {
   public:
    EdgeSet() = default;
    explicit EdgeSet(size_t num_edges) : n_(num_edges), words_((num_edges + 63) / 64, 0) {}

    size_t size() const {
        return n_;
    }
    bool empty() const {
        for (uint64_t w : words_)
            if (w)
                return false;
        return true;
    }
    bool contains(size_t i) const {
        assert(i < n_);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    void add(size_t i) {
        assert(i < n_);
        words_[i >> 6] |= uint64_t(1) << (i & 63);
    }
    void remove(size_t i) {
        assert(i < n_);
        words_[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }
    void flip(size_t i) {
        assert(i < n_);
        words_[i >> 6] ^= uint64_t(1) << (i & 63);
    }
    void clear() {
        std::fill(words_.begin(), words_.end(), 0);
    }

    size_t popcount() const {
        size_t c = 0;
        for (uint64_t w : words_)
            c += std::popcount(w);
        return c;
    }

    /// |A ∩ B| mod 2.
    int overlap_parity(const EdgeSet& other) const {
        assert(n_ == other.n_);
        uint64_t acc = 0;
        for (size_t k = 0; k < words_.size(); k++)
            acc ^= words_[k] & other.words_[k];
        return std::popcount(acc) & 1;
    }

    size_t overlap_count(const EdgeSet& other) const {
        assert(n_ == other.n_);
        size_t c = 0;
        for (size_t k = 0; k < words_.size(); k++)
            c += std::popcount(words_[k] & other.words_[k]);
        return c;
    }

    EdgeSet& operator^=(const EdgeSet& other) {
        assert(n_ == other.n_);
        for (size_t k = 0; k < words_.size(); k++)
            words_[k] ^= other.words_[k];
        return *this;
    }
    friend EdgeSet operator^(EdgeSet a, const EdgeSet& b) {
        a ^= b;
        return a;
    }
    bool operator==(const EdgeSet& other) const {
        return n_ == other.n_ && words_ == other.words_;
    }
    bool operator!=(const EdgeSet& other) const {
        return !(*this == other);
    }
    bool operator<(const EdgeSet& other) const {
        return words_ < other.words_;
    }

    std::vector<int> to_indices() const {
        std::vector<int> out;
        for (size_t k = 0; k < words_.size(); k++) {
            uint64_t w = words_[k];
            while (w) {
                int b = std::countr_zero(w);
                out.push_back(int(k * 64 + b));
                w &= w - 1;
            }
        }
        return out;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (size_t k = 0; k < words_.size(); k++) {
            uint64_t w = words_[k];
            while (w) {
                int b = std::countr_zero(w);
                fn(int(k * 64 + b));
                w &= w - 1;
            }
        }
    }

    static EdgeSet from_indices(size_t num_edges, const std::vector<int>& idx) {
        EdgeSet s(num_edges);
        for (int i : idx)
            s.add(size_t(i));
        return s;
    }

   private:
    size_t n_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace qsplit

#endif
