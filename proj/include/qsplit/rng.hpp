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

#ifndef QSPLIT_RNG_HPP
#define QSPLIT_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace qsplit {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from (master seed, domain tag, index).
/// Streams depend only on these three values, never on worker count or
/// scheduling, so parallel runs reproduce single-threaded output.
inline uint64_t derive_seed(uint64_t master, std::string_view domain, uint64_t index) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : domain) {
        h ^= uint8_t(c);
        h *= 0x100000001b3ULL;
    }
    uint64_t state = master ^ h;
    splitmix64(state);
    state ^= 0x9e3779b97f4a7c15ULL * (index + 1);
    return splitmix64(state);
}

/// Deterministic random stream. All conversions are hand-rolled since the
/// std distributions are implementation-defined.
class Stream {
   public:
    explicit Stream(uint64_t seed) : eng_(seed) {}

    uint64_t next() {
        return eng_();
    }

    /// Uniform in [0, 1).
    double uniform() {
        return double(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    int uniform_int(int n) {
        // Rejection-free multiply-shift (Lemire); bias is negligible for our n.
        return int((__uint128_t(eng_()) * uint64_t(n)) >> 64);
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

   private:
    std::mt19937_64 eng_;
};

inline Stream derive_stream(uint64_t master, std::string_view domain, uint64_t index) {
    return Stream(derive_seed(master, domain, index));
}

}  // namespace qsplit

#endif
