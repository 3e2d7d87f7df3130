#pragma once

#include <cstdint>
#include <random>

namespace jdd {

/// Counter-based seed derivation. The substream for (seed, index) depends on
/// nothing else, so trial t of a run draws the same numbers no matter how many
/// trials run or which thread executes it.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Engine for substream `index` of `seed`.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

}  // namespace jdd
