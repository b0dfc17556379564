#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ratekit {

/// splitmix64 finalizer (Steele, Lea & Flood 2014). Used to derive
/// per-tree and per-run seeds from a master seed so that parallel and
/// sequential training draw identical random streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic RNG: mt19937_64 (fully specified by the C++ standard)
/// with hand-rolled bounded sampling and shuffling. std::uniform_int_distribution
/// and std::shuffle are implementation-defined, so they are avoided; this
/// generator produces identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound) via rejection sampling (unbiased).
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// k distinct indices drawn uniformly from [0, n), in draw order.
    /// Partial Fisher-Yates over an index array.
    std::vector<std::uint32_t> sample_distinct(std::uint32_t n, std::uint32_t k) {
        if (k > n) k = n;
        std::vector<std::uint32_t> idx(n);
        for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint32_t j = i + static_cast<std::uint32_t>(next_below(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        return idx;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ratekit
