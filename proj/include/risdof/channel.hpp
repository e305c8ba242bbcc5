// SPDX-License-Identifier: Apache-2.0
//
// Channel synthesis for uniform linear arrays: LoS (rank one), iid Rayleigh
// and blocked links with a log-distance link budget, plus the end-to-end
// composite G_RU * Theta * G_BR + H.
//
// Dimension convention: H is K x M, G_BR is N x M, G_RU is K x N.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "risdof/numerics.hpp"
#include "risdof/ris.hpp"

namespace risdof {

inline constexpr double kDefaultWavelength = 0.1; // 3 GHz
inline constexpr double kDefaultReferenceLossDb = 30.0;
inline constexpr double kLosPathLossExponent = 2.0;
inline constexpr double kRayleighPathLossExponent = 2.8;

struct ArrayGeometry {
    int element_count = 1;
    double element_spacing = kDefaultWavelength / 2.0; ///< meters
    double wavelength = kDefaultWavelength;            ///< meters

    static ArrayGeometry half_wavelength(int count, double wavelength = kDefaultWavelength) {
        return {count, wavelength / 2.0, wavelength};
    }
    void validate() const;
};

struct LinkBudget {
    double distance = 1.0; ///< meters
    double path_loss_exponent = kLosPathLossExponent;
    double reference_loss_db = kDefaultReferenceLossDb; ///< loss at 1 m

    /// reference_loss_db + 10 * alpha * log10(distance)
    double loss_db() const;
    double amplitude_gain() const;
};

enum class LinkModel { blocked, los, rayleigh };

std::string_view to_string(LinkModel model);
/// Accepts "blocked", "los", "rayleigh"; throws ConfigError otherwise.
LinkModel parse_link_model(std::string_view text);

/// a(theta)_m = exp(i 2pi (d/lambda) m cos(theta)), m = 0..count-1, theta in [0, pi].
ComplexVector steering_vector(const ArrayGeometry& geometry, double angle);

/// g * b(aoa) a(aod)^H, rx.element_count x tx.element_count.
ComplexMatrix los_channel(const ArrayGeometry& tx, const ArrayGeometry& rx, double aod, double aoa,
                          const LinkBudget& budget);

/// iid CN(0, g^2) entries, deterministic per seed.
ComplexMatrix rayleigh_channel(int rows, int cols, const LinkBudget& budget, std::uint64_t seed);

ComplexMatrix blocked_channel(int rows, int cols);

struct Cascade {
    ComplexMatrix g_br; ///< N_j x M
    ComplexMatrix g_ru; ///< K x N_j
};

struct ChannelSet {
    ComplexMatrix direct; ///< K x M
    std::vector<Cascade> cascades;
    std::uint64_t seed = 0;
    std::vector<std::string> model_tags; ///< e.g. "direct:los", "br0:los", "ru0:rayleigh"
};

/// sum_j G_RU^j Theta^j G_BR^j + H. Throws DimensionError naming the first
/// inconsistent cascade.
ComplexMatrix composite_channel(const ChannelSet& set, std::span<const RisConfig> ris_configs);

/// G_RU^j Theta^j G_BR^j for one cascade.
ComplexMatrix cascade_channel(const Cascade& cascade, const RisConfig& config);

/// Phase alignment of one cascade for a transmit direction tx (M entries)
/// and a receive direction rx (K entries): the per-element coefficients are
/// G_BR * tx and rx^H * G_RU.
RisConfig align_cascade(const Cascade& cascade, const ComplexVector& tx, const ComplexVector& rx,
                        double direct_phase);

} // namespace risdof
