// Copyright 2026 The fklab Authors
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

#ifndef FKLAB_RNG_H
#define FKLAB_RNG_H

#include <cstdint>
#include <limits>
#include <string_view>

namespace fklab {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// FNV-1a, used to turn component tags into stream keys.
constexpr uint64_t tag_hash(std::string_view tag) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Seed of the substream (master, tag, index). Distinct indices give
/// statistically independent streams; the mapping does not depend on
/// evaluation order, so substreams can be consumed on any thread.
constexpr uint64_t derive_seed(uint64_t master, std::string_view tag, uint64_t index = 0) {
    return mix64(mix64(mix64(master) ^ tag_hash(tag)) + index);
}

/// Small counter-based generator (SplitMix64). Satisfies
/// UniformRandomBitGenerator so it also works with <random> adaptors, but
/// the helpers below are used wherever bit-exact reproducibility across
/// standard libraries matters.
class RandomStream {
   public:
    using result_type = uint64_t;

    explicit constexpr RandomStream(uint64_t seed) : state_(seed) {}
    constexpr RandomStream(uint64_t master, std::string_view tag, uint64_t index = 0)
        : state_(derive_seed(master, tag, index)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<uint64_t>::max(); }

    constexpr result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Lemire multiply-shift; bias < n / 2^64.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>((*this)()) * n) >> 64);
    }

    bool bit() { return ((*this)() >> 63) != 0; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller (one value per call).
    double normal();

   private:
    uint64_t state_;
};

}  // namespace fklab

#endif
