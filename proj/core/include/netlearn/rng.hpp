#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace netlearn::rng {

// Stateless counter-based generator built on the splitmix64 finalizer.
// Draws are a pure function of (seed, stream), so simulations partition
// freely across threads and always merge to bit-identical results.

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix(std::uint64_t x) {
    x += kGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t stream) {
    return mix(mix(seed) ^ (stream * kGamma + 0x632BE59BD9B4E019ull));
}

// (0, 1]: safe under log().
inline double unit_positive(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// [0, 1)
inline double unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Standard normal draw for the given (seed, stream) pair via Box-Muller.
inline double standard_normal(std::uint64_t seed, std::uint64_t stream) {
    const std::uint64_t k = key(seed, stream);
    const double u1 = unit_positive(mix(k));
    const double u2 = unit(mix(k ^ 0xD1B54A32D192ED03ull));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace netlearn::rng
