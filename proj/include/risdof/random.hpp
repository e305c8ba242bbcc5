// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "risdof/numerics.hpp"

namespace risdof {

/// 64-bit FNV-1a. Stable across platforms, used for link tags and fingerprints.
std::uint64_t fnv1a64(std::string_view text, std::uint64_t basis = 0xcbf29ce484222325ULL);

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for an independent stream: seed XOR hash(tag).
std::uint64_t link_seed(std::uint64_t seed, std::string_view tag);

/// Seed for one Monte Carlo work unit.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t sweep_index, std::uint64_t trial_index);

/// Named seedable normal generator. Box-Muller over the raw engine output so
/// samples do not depend on the standard library's distribution code.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    double standard_normal();
    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    Complex complex_normal(double variance = 1.0);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace risdof
