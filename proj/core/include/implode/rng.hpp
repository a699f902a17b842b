#ifndef IMPLODE_RNG_HPP
#define IMPLODE_RNG_HPP

#include <array>
#include <cstdint>

#include "implode/types.hpp"

namespace implode {

// Philox4x32-10 counter-based generator (Salmon et al. constants).
//
// Streams are reproducible from a 64-bit seed alone: the seed is split into
// the two 32-bit round keys and the 128-bit counter starts at zero. Uniform
// doubles take the top 53 bits of a 64-bit draw; Gaussians use Box-Muller on
// consecutive uniform pairs. This pins the exact byte stream so other
// implementations can replay it.
class Philox {
public:
    explicit Philox(std::uint64_t seed) : key_{static_cast<std::uint32_t>(seed & 0xffffffffu),
                                               static_cast<std::uint32_t>(seed >> 32)} {}

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform();

    // Standard real Gaussian, Box-Muller.
    double gaussian();

    // Complex Gaussian with E|z|^2 = scale^2.
    Complex complex_gaussian(double scale = 1.0);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_{0, 0, 0, 0};
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4;  // forces refill on first draw
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace implode

#endif
