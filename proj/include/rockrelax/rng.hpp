//------------------------------------------------------------------------------
// rockrelax: Rockafellian relaxation toolkit for stochastic programs
// Copyright 2026 the rockrelax authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//------------------------------------------------------------------------------
#pragma once

#include <cstdint>

namespace rockrelax {

// Counter-based generator built from the SplitMix64 finalizer.  Every draw
// is a pure function of (seed, stream, counter), so sampling is stateless,
// order-independent, and reproducible across platforms and thread counts.
// The k-th draw of a stream is fixed forever; growing a sample from nu to
// nu' keeps the first nu draws byte-identical.

/// SplitMix64 finalizer (Stafford mix 13).
inline std::uint64_t splitmix_fin(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Value of the SplitMix64 sequence seeded at `s`, position `i` (0-based).
inline std::uint64_t splitmix_at(std::uint64_t s, std::uint64_t i) {
    return splitmix_fin(s + (i + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Stateless uniform source: one named stream of a seeded generator.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(splitmix_at(seed, stream)) {}

    /// Raw 64-bit word at counter position k.
    std::uint64_t bits(std::uint64_t k) const { return splitmix_at(key_, k); }

    /// Uniform double in [0, 1) with 53 random bits.
    double u01(std::uint64_t k) const {
        return static_cast<double>(bits(k) >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (-1, 1); 2*u - 1 is exact in binary floating point.
    double uniform_pm1(std::uint64_t k) const { return 2.0 * u01(k) - 1.0; }

    /// Uniform double in [lo, hi).
    double uniform(std::uint64_t k, double lo, double hi) const {
        return lo + (hi - lo) * u01(k);
    }

    /// Independent child stream; deterministic function of (parent, tag).
    CounterRng child(std::uint64_t tag) const { return CounterRng(key_, tag); }

    std::uint64_t key() const { return key_; }

  private:
    std::uint64_t key_;
};

}  // namespace rockrelax
