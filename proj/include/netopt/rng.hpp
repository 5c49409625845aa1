#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace netopt {

/// SplitMix64 step. Used for seed mixing, not for the main stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// FNV-1a hash of a string, used to fold textual tags into seeds.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace detail {
inline void seed_mix_one(std::uint64_t& state, std::uint64_t part) {
    state ^= part;
    (void)splitmix64(state);
}
inline void seed_mix_one(std::uint64_t& state, std::string_view part) {
    seed_mix_one(state, fnv1a64(part));
}
}  // namespace detail

/// Stream-splitting rule: a child seed is obtained by folding each component
/// (integer, or tag string via FNV-1a) into the parent seed with one SplitMix64
/// round per component. Identical (parent, components) always yield the same
/// child; distinct components yield independent streams for all practical
/// purposes. Example: instance graphs use derive_seed(master, model_tag, i),
/// strategy runs add the strategy tag on top.
template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t parent, Parts&&... parts) {
    std::uint64_t state = parent;
    (void)splitmix64(state);
    (detail::seed_mix_one(state, std::forward<Parts>(parts)), ...);
    return splitmix64(state);
}

/// Seedable deterministic generator. The core is std::mt19937_64 (its output
/// sequence is pinned by the standard); all derived draws below are implemented
/// here rather than with std::*_distribution, whose outputs are
/// implementation-defined, so results are bit-reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Unbiased via rejection. n must be > 0.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t zone = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            std::uint64_t x = next_u64();
            if (x < zone) return static_cast<std::size_t>(x % bound);
        }
    }

    bool bernoulli(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace netopt
