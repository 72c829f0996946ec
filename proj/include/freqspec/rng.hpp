#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace freqspec::rng {

// Counter-based generation: every draw is a pure function of (key, counter),
// so results do not depend on iteration order or thread count.

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix64(a ^ splitmix64(b + 0x632BE59BD9B4E019ull));
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
    return mix(mix(a, b), c);
}

/// FNV-1a; stable across platforms, used for path-keyed streams and splits.
constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

/// Uniform in (0, 1), never exactly 0.
inline double uniform(std::uint64_t key, std::uint64_t counter) noexcept {
    const std::uint64_t bits = mix(key, counter) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on two keyed uniforms.
inline double normal(std::uint64_t key, std::uint64_t counter) noexcept {
    const double u1 = uniform(key, 2 * counter);
    const double u2 = uniform(key, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace freqspec::rng
