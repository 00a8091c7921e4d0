#pragma once

#include <cstdint>
#include <random>

namespace qvc {

/// Derives an independent child seed from a master seed and a stream index.
/// Child seeds are pre-derived before any parallel work starts, so the amount
/// of concurrency can never change which seed a job receives.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Uniform double in [0, 1) with 53 random bits.
double uniform_double(std::mt19937_64& gen);

/// Uniform integer in [0, n). Rejection-sampled, so the distribution is exact.
std::size_t uniform_index(std::mt19937_64& gen, std::size_t n);

/// Uniform angle in [0, 2*pi).
double uniform_angle(std::mt19937_64& gen);

}  // namespace qvc
