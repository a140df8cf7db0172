#pragma once

// Deterministic RNG for the simulation harness: xoshiro256** seeded through
// SplitMix64, with a 64-bit mixing function for per-replicate substreams so
// parallel and serial runs agree bit for bit.

#include <cstdint>

namespace evtk {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        // standard SplitMix64 expansion of the seed
        std::uint64_t z = seed;
        for (auto& word : s_) {
            z += 0x9e3779b97f4a7c15ULL;
            std::uint64_t t = z;
            t = (t ^ (t >> 30)) * 0xbf58476d1ce4e5b9ULL;
            t = (t ^ (t >> 27)) * 0x94d049bb133111ebULL;
            word = t ^ (t >> 31);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = detail::rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    // uniform on the open interval (0,1): ((x >> 11) + 0.5) * 2^{-53}
    double uniform_open() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t s_[4];
};

// Seed for replicate j of a run keyed by `seed`; splittable so any replicate
// can be generated independently of execution order.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t j) {
    return detail::mix64(seed ^ detail::mix64(j + 0x632be59bd9b4e019ULL));
}

}  // namespace evtk
