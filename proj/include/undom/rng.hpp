#pragma once

#include <cstdint>
#include <random>

namespace undom {

/// All randomness runs on std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard library's distributions are not (their algorithms are
/// implementation-defined), so the two derived draws below are spelled out here.
using engine = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection: draws below 2^64 mod bound are discarded
/// so every residue is equally likely. bound must be positive.
std::uint64_t uniform_below(engine& rng, std::uint64_t bound);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform_unit(engine& rng);

/// SplitMix64 finaliser; used to derive independent child seeds from a parent seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace undom
