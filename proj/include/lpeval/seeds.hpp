#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace lpeval {

/// All stochastic stages draw from this engine. Distributions are written
/// by hand below so a seed reproduces the same stream on every standard
/// library implementation.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// FNV-1a over the bytes of `text`.
std::uint64_t fnv1a(std::string_view text, std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

/// Child seed for a labelled stage, e.g. derive_seed(master, "split/CollegeMsg").
/// Adding new labels never perturbs existing streams.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept;

/// Uniform integer in [0, n). n must be positive.
std::size_t uniform_index(Rng& rng, std::size_t n);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng) noexcept;

}  // namespace lpeval
