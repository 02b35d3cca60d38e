#pragma once

#include <cstdint>

namespace skyblur {

// Stateless splittable hashing; everything downstream (noise lattices,
// per-image seeds, sigma draws) is a pure function of these.

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept {
    return splitmix64(seed ^ (value + 0x9E3779B97F4A7C15ull + (seed << 12) + (seed >> 4)));
}

/// Independent 64-bit seed for item `index` of stream `stream`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed ^ splitmix64(stream)) + index);
}

/// Map a hash to [0, 1).
constexpr double to_unit_interval(std::uint64_t h) noexcept {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace skyblur
