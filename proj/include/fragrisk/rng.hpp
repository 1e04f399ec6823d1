#pragma once

#include <cstdint>
#include <random>

namespace fragrisk {

/// Seeded stream shared by every Monte Carlo routine. std::mt19937_64 has a
/// standardized output sequence; the uniform mapping below is done by hand
/// because std::uniform_real_distribution is implementation-defined.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double next() noexcept {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917ULL;

}  // namespace fragrisk
