// SPDX-License-Identifier: Apache-2.0

#include "risdof/ris.hpp"

#include <cmath>
#include <numbers>

#include "risdof/errors.hpp"

namespace risdof {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_covariance(const RisConfig& config, const ComplexMatrix& c) {
    const Eigen::Index n = config.element_count();
    if (c.rows() != n || c.cols() != n) {
        throw DimensionError("incident covariance is " + std::to_string(c.rows()) + "x" +
                             std::to_string(c.cols()) + ", RIS has " + std::to_string(n) +
                             " elements");
    }
    if (n == 0) {
        return;
    }
    const double scale = c.cwiseAbs().maxCoeff();
    if (hermitian_defect(c) > 1e-8 * scale) {
        throw NumericalError("incident covariance is not Hermitian");
    }
}

} // namespace

ComplexVector RisConfig::reflection() const {
    ComplexVector out(phases.size());
    for (Eigen::Index n = 0; n < phases.size(); ++n) {
        out(n) = std::polar(amplification, phases(n));
    }
    return out;
}

RisConfig RisConfig::passive(int element_count) {
    return {RealVector::Zero(element_count), 1.0};
}

double wrap_phase(double phase) {
    double w = std::fmod(phase, kTwoPi);
    if (w < 0.0) {
        w += kTwoPi;
    }
    // fmod of a tiny negative value can land exactly on 2pi after the shift
    return w >= kTwoPi ? 0.0 : w;
}

RisConfig phase_align(const ComplexVector& g_br_col, const ComplexVector& g_ru_row,
                      double direct_phase) {
    if (g_br_col.size() != g_ru_row.size()) {
        throw DimensionError("phase_align: incident length " + std::to_string(g_br_col.size()) +
                             " differs from reflected length " +
                             std::to_string(g_ru_row.size()));
    }
    RisConfig config = RisConfig::passive(static_cast<int>(g_br_col.size()));
    for (Eigen::Index n = 0; n < g_br_col.size(); ++n) {
        config.phases(n) =
            wrap_phase(direct_phase - std::arg(g_ru_row(n)) - std::arg(g_br_col(n)));
    }
    return config;
}

double cascade_coefficient_magnitude(const ComplexVector& g_br_col,
                                     const ComplexVector& g_ru_row, const RisConfig& config) {
    if (g_br_col.size() != g_ru_row.size() || g_br_col.size() != config.element_count()) {
        throw DimensionError("cascade_coefficient_magnitude: length mismatch");
    }
    return std::abs((g_ru_row.array() * config.reflection().array() * g_br_col.array()).sum());
}

RisConfig quantize_phases(const RisConfig& config, int bits) {
    if (bits < 0) {
        throw std::invalid_argument("quantize_phases: negative bit count");
    }
    if (bits == 0) {
        return config;
    }
    const double step = kTwoPi / static_cast<double>(1 << bits);
    RisConfig out = config;
    for (Eigen::Index n = 0; n < out.phases.size(); ++n) {
        out.phases(n) = wrap_phase(std::round(config.phases(n) / step) * step);
    }
    return out;
}

double active_power(const RisConfig& config, const ComplexMatrix& incident_covariance,
                    double ris_noise_power) {
    check_covariance(config, incident_covariance);
    if (ris_noise_power < 0.0) {
        throw std::invalid_argument("active_power: negative noise power");
    }
    // Theta is diagonal, so only the diagonal of C_in contributes.
    return active_power(config, RealVector(incident_covariance.diagonal().real()),
                        ris_noise_power);
}

double active_power(const RisConfig& config, const RealVector& incident_power,
                    double ris_noise_power) {
    if (incident_power.size() != config.element_count()) {
        throw DimensionError("active_power: " + std::to_string(incident_power.size()) +
                             " incident powers for " + std::to_string(config.element_count()) +
                             " elements");
    }
    if (ris_noise_power < 0.0) {
        throw std::invalid_argument("active_power: negative noise power");
    }
    if ((incident_power.array() < 0.0).any()) {
        throw std::invalid_argument("active_power: negative incident power");
    }
    const ComplexVector r = config.reflection();
    double power = 0.0;
    for (Eigen::Index n = 0; n < r.size(); ++n) {
        power += std::norm(r(n)) * (incident_power(n) + ris_noise_power);
    }
    return power;
}

double solve_amplification(const RisConfig& config, const ComplexMatrix& incident_covariance,
                           double ris_noise_power, double ris_power_budget) {
    check_covariance(config, incident_covariance);
    return solve_amplification(config, RealVector(incident_covariance.diagonal().real()),
                               ris_noise_power, ris_power_budget);
}

double solve_amplification(const RisConfig& config, const RealVector& incident_power,
                           double ris_noise_power, double ris_power_budget) {
    if (!(ris_power_budget > 0.0)) {
        throw std::invalid_argument("solve_amplification: budget must be positive");
    }
    RisConfig unit = config;
    unit.amplification = 1.0;
    const double unit_power = active_power(unit, incident_power, ris_noise_power);
    if (!(unit_power > 0.0)) {
        throw NumericalError(
            "solve_amplification: no incident power and no RIS noise, amplification undefined");
    }
    return std::sqrt(ris_power_budget / unit_power);
}

} // namespace risdof
