#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace tvar {

/// Identifier of the exact random stream: xoshiro256++ over SplitMix64-derived
/// state, Gaussians via the Box-Muller transform below. Recorded in every
/// report; identical (seed, stream, algorithm_id) reproduces paths bit-for-bit.
inline constexpr const char* kAlgorithmId = "xoshiro256pp-boxmuller-v1";

/// SplitMix64 finalizer (state mixer).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

/// SplitMix64 sequence; used only to expand seeds into generator state.
struct SplitMix64 {
    std::uint64_t state;
    constexpr std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        return mix64(state);
    }
};

/// xoshiro256++ (Blackman/Vigna). Fast, 2^256-1 period, passes BigCrush.
class Xoshiro256pp {
  public:
    /// Deterministic per-stream construction: distinct `stream` values (path
    /// indices) give decorrelated generators for the same seed, so paths can
    /// be generated independently and aggregated in any order.
    explicit Xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0) {
        SplitMix64 sm{mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                      mix64(stream * 0xBF58476D1CE4E5B9ULL + 0x94D049BB133111EBULL)};
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is invalid
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

    /// Uniform double in (0, 1]; never 0, so log() below is safe.
    double uniform_pos() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }
    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

/// Standard Gaussian draws via Box-Muller; the paired draw is cached so two
/// uniforms yield two Gaussians.
class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed, std::uint64_t stream = 0)
        : rng_(seed, stream) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = rng_.uniform_pos();
        const double u2 = rng_.uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    Xoshiro256pp rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace tvar
