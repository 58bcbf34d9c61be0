#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace aldus {

// SplitMix64 finalizer: bijective 64-bit mixer with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Counter-based generator keyed by beam identity. Every value depends only on
// (seed, frame, channel, azimuth index, draw index), never on evaluation
// order, so beams can be simulated on any number of workers with bit-identical
// output. The static mode reuses the same keys to reproduce the engine's draws
// on recorded points.
class BeamRng {
public:
    BeamRng(std::uint64_t seed, std::uint64_t frame_id, std::uint32_t channel,
            std::uint32_t azimuth_index) {
        std::uint64_t h = mix64(seed + kGolden);
        h = mix64(h ^ (frame_id + kGolden));
        h = mix64(h ^ ((std::uint64_t(channel) << 32 | azimuth_index) + kGolden));
        key_ = h;
    }

    // Uniform in the open interval (0, 1).
    double uniform(std::uint32_t draw) const { return to_unit(word(draw, 0)); }

    // Standard normal via Box-Muller.
    double gaussian(std::uint32_t draw) const {
        const double u1 = to_unit(word(draw, 0));
        const double u2 = to_unit(word(draw, 1));
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    std::uint64_t word(std::uint32_t draw, std::uint32_t sub) const {
        return mix64(key_ ^ ((std::uint64_t(draw) << 1 | sub) * kGolden + 1));
    }

    static double to_unit(std::uint64_t x) {
        return (double(x >> 11) + 0.5) * 0x1.0p-53;  // 53-bit resolution, never 0 or 1
    }

    std::uint64_t key_;
};

// Draw-index allocation per beam. Both draws are consumed by every beam even
// when a branch leaves one unused, so the keying stays stable.
inline constexpr std::uint32_t kDrawScatter = 0;
inline constexpr std::uint32_t kDrawRangeNoise = 1;

}  // namespace aldus
