// SPDX-License-Identifier: Apache-2.0

#include "risdof/channel.hpp"

#include <cmath>
#include <numbers>

#include "risdof/errors.hpp"
#include "risdof/random.hpp"

namespace risdof {

void ArrayGeometry::validate() const {
    if (element_count < 1) {
        throw ConfigError("array needs at least one element");
    }
    if (!(element_spacing > 0.0) || !(wavelength > 0.0)) {
        throw ConfigError("element spacing and wavelength must be positive");
    }
}

double LinkBudget::loss_db() const {
    if (!(distance > 0.0)) {
        throw ConfigError("link distance must be positive");
    }
    return reference_loss_db + 10.0 * path_loss_exponent * std::log10(distance);
}

double LinkBudget::amplitude_gain() const {
    return std::pow(10.0, -loss_db() / 20.0);
}

std::string_view to_string(LinkModel model) {
    switch (model) {
    case LinkModel::blocked:
        return "blocked";
    case LinkModel::los:
        return "los";
    case LinkModel::rayleigh:
        return "rayleigh";
    }
    return "unknown";
}

LinkModel parse_link_model(std::string_view text) {
    if (text == "blocked") {
        return LinkModel::blocked;
    }
    if (text == "los") {
        return LinkModel::los;
    }
    if (text == "rayleigh") {
        return LinkModel::rayleigh;
    }
    throw ConfigError("unknown link model '" + std::string(text) +
                      "' (expected blocked, los or rayleigh)");
}

ComplexVector steering_vector(const ArrayGeometry& geometry, double angle) {
    geometry.validate();
    constexpr double slack = 1e-12;
    if (!(angle >= -slack && angle <= std::numbers::pi + slack)) {
        throw std::domain_error("steering_vector: angle outside [0, pi]");
    }
    const double step = 2.0 * std::numbers::pi * (geometry.element_spacing / geometry.wavelength) *
                        std::cos(angle);
    ComplexVector a(geometry.element_count);
    for (int m = 0; m < geometry.element_count; ++m) {
        a(m) = std::polar(1.0, step * m);
    }
    return a;
}

ComplexMatrix los_channel(const ArrayGeometry& tx, const ArrayGeometry& rx, double aod, double aoa,
                          const LinkBudget& budget) {
    const ComplexVector a = steering_vector(tx, aod);
    const ComplexVector b = steering_vector(rx, aoa);
    return budget.amplitude_gain() * (b * a.adjoint());
}

ComplexMatrix rayleigh_channel(int rows, int cols, const LinkBudget& budget, std::uint64_t seed) {
    if (rows < 1 || cols < 1) {
        throw DimensionError("rayleigh_channel: dimensions must be positive");
    }
    const double g = budget.amplitude_gain();
    GaussianSource source(seed);
    ComplexMatrix h(rows, cols);
    // Fill in row-major order so the realization does not depend on storage order.
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            h(r, c) = g * source.complex_normal();
        }
    }
    return h;
}

ComplexMatrix blocked_channel(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw DimensionError("blocked_channel: dimensions must be positive");
    }
    return ComplexMatrix::Zero(rows, cols);
}

ComplexMatrix cascade_channel(const Cascade& cascade, const RisConfig& config) {
    if (cascade.g_ru.cols() != cascade.g_br.rows() ||
        config.element_count() != cascade.g_br.rows()) {
        throw DimensionError("cascade has " + std::to_string(cascade.g_br.rows()) +
                             " incident rows, " + std::to_string(cascade.g_ru.cols()) +
                             " reflected columns and " + std::to_string(config.element_count()) +
                             " phases");
    }
    return cascade.g_ru * config.reflection().asDiagonal() * cascade.g_br;
}

RisConfig align_cascade(const Cascade& cascade, const ComplexVector& tx, const ComplexVector& rx,
                        double direct_phase) {
    if (tx.size() != cascade.g_br.cols() || rx.size() != cascade.g_ru.rows()) {
        throw DimensionError("align_cascade: direction lengths do not match the cascade");
    }
    const ComplexVector incident = cascade.g_br * tx;
    const ComplexVector reflected = (rx.adjoint() * cascade.g_ru).transpose();
    return phase_align(incident, reflected, direct_phase);
}

ComplexMatrix composite_channel(const ChannelSet& set, std::span<const RisConfig> ris_configs) {
    if (ris_configs.size() != set.cascades.size()) {
        throw DimensionError("composite_channel: " + std::to_string(set.cascades.size()) +
                             " cascades but " + std::to_string(ris_configs.size()) +
                             " RIS configurations");
    }
    ComplexMatrix total = set.direct;
    for (std::size_t j = 0; j < set.cascades.size(); ++j) {
        const Cascade& c = set.cascades[j];
        if (c.g_br.cols() != total.cols() || c.g_ru.rows() != total.rows()) {
            throw DimensionError("composite_channel: cascade " + std::to_string(j) +
                                 " does not map " + std::to_string(total.cols()) +
                                 " BS antennas to " + std::to_string(total.rows()) +
                                 " user antennas");
        }
        try {
            total += cascade_channel(c, ris_configs[j]);
        } catch (const DimensionError& e) {
            throw DimensionError("composite_channel: cascade " + std::to_string(j) + ": " +
                                 e.what());
        }
    }
    return total;
}

} // namespace risdof
