#pragma once

#include <cstdint>

namespace biharm {

/// SplitMix64 finalizer (Steele, Lea and Flood). Bijective on 64-bit words.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: the draw for (seed, row, col) depends on nothing
/// else, so samples can be produced in any order or concurrently and remain
/// bit-identical across platforms. Uses only integer arithmetic plus one
/// exact scaling to double.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

    constexpr std::uint64_t bits(std::uint64_t row, std::uint64_t col) const
    {
        constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = splitmix64_mix(seed_ + kGolden);
        z = splitmix64_mix(z ^ (row + kGolden));
        z = splitmix64_mix(z ^ (col * kGolden + 0x632be59bd9b4e019ULL));
        return z;
    }

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform01(std::uint64_t row, std::uint64_t col) const
    {
        return static_cast<double>(bits(row, col) >> 11) * 0x1.0p-53;
    }

    /// Uniform on [-1, 1).
    constexpr double uniform_pm1(std::uint64_t row, std::uint64_t col) const
    {
        return 2.0 * uniform01(row, col) - 1.0;
    }

    constexpr std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

}  // namespace biharm
