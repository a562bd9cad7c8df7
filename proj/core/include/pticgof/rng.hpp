#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace pticgof {

/// Tags that keep the streams of different Monte Carlo tasks apart when they
/// share a master seed.
enum class StreamDomain : std::uint64_t {
    Generic = 0,
    NullCalibration = 1,
    PValue = 2,
    Power = 3,
};

/// xoshiro256** generator whose state is derived from (seed, domain, index)
/// by SplitMix64 hashing. Replication r of a Monte Carlo run always uses
/// Stream(seed, r, domain), so results do not depend on how replications are
/// spread over threads.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t seed, std::uint64_t index = 0,
                    StreamDomain domain = StreamDomain::Generic) noexcept {
        std::uint64_t key = seed;
        const std::uint64_t seeded = splitmix64(key);
        key = seeded ^ (static_cast<std::uint64_t>(domain) * 0xD1B54A32D192ED03ULL);
        const std::uint64_t tagged = splitmix64(key);
        key = tagged ^ index;
        for (auto& word : state_) word = splitmix64(key);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    // Advances `x` and returns the mixed output.
    static constexpr std::uint64_t splitmix64(std::uint64_t& x) noexcept {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace pticgof
