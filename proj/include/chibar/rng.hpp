#pragma once

// Deterministic random number plumbing for the Monte Carlo engines.
//
// Streams are derived SplittableRandom-style: stream k of seed s starts a
// SplitMix64 at state s + k * golden_gamma, and its first four outputs seed a
// xoshiro256++ generator. Uniforms map to (0,1) strictly via
// ((x >> 11) + 0.5) * 2^-53, so inverse-CDF transforms never see 0 or 1.
// Everything is fixed-width integer arithmetic: results are bit-identical
// across platforms, runs, and degrees of parallelism.

#include <cstdint>

namespace chibar::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += kGoldenGamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) { reseed(seed); }

    static Xoshiro256pp for_stream(std::uint64_t seed, std::uint64_t stream) {
        Xoshiro256pp g(0);
        g.reseed(seed + stream * kGoldenGamma);
        return g;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Strictly inside (0,1).
    double uniform01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  private:
    void reseed(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& s : s_) s = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is invalid
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

}  // namespace chibar::rng
