#pragma once

#include <cstdint>
#include <random>

namespace enrichfp {

/// Mixes (seed, index, salt) into one 64-bit engine seed with the splitmix64
/// finalizer. Each sample gets its own stream, so results do not depend on the
/// order (or the thread) in which samples are drawn.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index,
                                 std::uint64_t salt = 0) noexcept {
    auto fmix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return fmix(fmix(fmix(seed) ^ index) ^ salt);
}

class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t index, std::uint64_t salt = 0)
        : engine_(mix_seed(seed, index, salt)) {}

    /// Uniform in [0, 1) with 53 random bits. Implemented directly rather than
    /// with std::uniform_real_distribution, whose output is library-specific.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi]; returns lo exactly when the interval is degenerate.
    double uniform(double lo, double hi) {
        if (!(hi > lo)) return lo;
        double v = lo + (hi - lo) * uniform01();
        return v > hi ? hi : v;
    }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace enrichfp
