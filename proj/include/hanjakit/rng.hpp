// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <bit>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace hanjakit {

// Identifier of the deterministic generator scheme; recorded in manifests so
// outputs can be replayed bit-exactly.
inline constexpr const char* kGeneratorId = "splitmix64-fnv1a-v1";

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

// Counter-based sub-seed: mixes a global seed with two stream coordinates
// (typically a doc_id hash and a per-document index). Output depends only on
// the arguments, never on processing order.
inline std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = mix64(seed + kGolden);
    h = mix64(h ^ (a + kGolden));
    h = mix64(h ^ (b + kGolden));
    return h;
}

// Deterministic splitmix64 stream. Unlike std::uniform_int_distribution the
// bounded draw is fully specified, so replays are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Unbiased draw in [0, n); mask-and-reject.
    std::uint64_t bounded(std::uint64_t n) {
        if (n <= 1) {
            return 0;
        }
        std::uint64_t mask = ~0ull >> std::countl_zero(n - 1);
        std::uint64_t v = next() & mask;
        while (v >= n) {
            v = next() & mask;
        }
        return v;
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        // Fisher-Yates, back to front.
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace hanjakit
