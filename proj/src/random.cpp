// SPDX-License-Identifier: Apache-2.0

#include "risdof/random.hpp"

#include <cmath>
#include <numbers>

namespace risdof {

std::uint64_t fnv1a64(std::string_view text, std::uint64_t basis) {
    std::uint64_t h = basis;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t link_seed(std::uint64_t seed, std::string_view tag) {
    return seed ^ fnv1a64(tag);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t sweep_index, std::uint64_t trial_index) {
    return splitmix64(splitmix64(seed ^ splitmix64(sweep_index)) ^ trial_index);
}

double GaussianSource::uniform() {
    // 53 random mantissa bits in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSource::standard_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Complex GaussianSource::complex_normal(double variance) {
    const double scale = std::sqrt(variance / 2.0);
    const double re = standard_normal();
    const double im = standard_normal();
    return {scale * re, scale * im};
}

} // namespace risdof
