// SPDX-License-Identifier: Apache-2.0
//
// RIS control: phase alignment, active-RIS power accounting and the
// amplification that meets a radiated-power budget.

#pragma once

#include "risdof/numerics.hpp"

namespace risdof {

struct RisConfig {
    RealVector phases;          ///< radians in [0, 2pi), one per element
    double amplification = 1.0; ///< rho; 1 for a passive surface

    int element_count() const { return static_cast<int>(phases.size()); }
    /// Diagonal of Theta: amplification * exp(i * phase).
    ComplexVector reflection() const;

    static RisConfig passive(int element_count);
};

/// Wrap an angle into [0, 2pi).
double wrap_phase(double phase);

/// Co-phase every cascaded element path with the direct path:
/// phase_n = direct_phase - arg(g_ru_n) - arg(g_br_n).
/// g_br_col holds the per-element incident coefficients for the chosen
/// transmit direction, g_ru_row the per-element coefficients toward the
/// chosen receive direction. Throws DimensionError on length mismatch.
RisConfig phase_align(const ComplexVector& g_br_col, const ComplexVector& g_ru_row,
                      double direct_phase);

/// Magnitude of sum_n g_ru_n * Theta_nn * g_br_n for the given configuration.
double cascade_coefficient_magnitude(const ComplexVector& g_br_col,
                                     const ComplexVector& g_ru_row, const RisConfig& config);

/// Uniform b-bit phase quantizer. bits == 0 leaves the phases untouched.
RisConfig quantize_phases(const RisConfig& config, int bits);

/// Radiated power of an active RIS including amplified thermal noise:
/// trace(Theta (C_in + sigma_r^2 I) Theta^H). Throws NumericalError when
/// incident_covariance is not Hermitian (relative asymmetry above 1e-8).
double active_power(const RisConfig& config, const ComplexMatrix& incident_covariance,
                    double ris_noise_power);

/// Same, from the per-element incident powers diag(C_in).
double active_power(const RisConfig& config, const RealVector& incident_power,
                    double ris_noise_power);

/// Amplification rho for which active_power(config with rho) equals the budget.
double solve_amplification(const RisConfig& config, const ComplexMatrix& incident_covariance,
                           double ris_noise_power, double ris_power_budget);
double solve_amplification(const RisConfig& config, const RealVector& incident_power,
                           double ris_noise_power, double ris_power_budget);

} // namespace risdof
