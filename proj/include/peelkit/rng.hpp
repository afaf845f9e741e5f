#pragma once

#include <cstdint>

namespace peelkit {

/// SplitMix64 finaliser. Every seed the library consumes is passed through it,
/// and derived sub-seeds are splitmix64(seed + i) for i = 1, 2, ...
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed + index + 1);
}

} // namespace peelkit
