#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace resil {

/// Random stream used by the simulator. mt19937_64 output is fixed by the
/// standard, so streams are reproducible across toolchains.
using RandomStream = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Per-trial seed: mix64(master + golden * (index + 1)). Depends only on the
/// pair, never on scheduling, so parallel and serial ensembles agree.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) noexcept
{
    return mix64(master_seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

/// Maps 64 random bits onto the open interval (0,1): the top 52 bits plus
/// half a step, so the largest value is 1 - 2^-53 (exactly representable;
/// 53 bits would round up to 1.0).
constexpr double open_unit(std::uint64_t bits) noexcept
{
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

static_assert(open_unit(~std::uint64_t{0}) < 1.0);
static_assert(open_unit(0) > 0.0);

template <class G>
concept FullRange64Generator = std::uniform_random_bit_generator<G> &&
    (G::min() == 0) && (G::max() == std::numeric_limits<std::uint64_t>::max());

} // namespace resil
