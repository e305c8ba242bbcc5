// SPDX-License-Identifier: Apache-2.0
//
// Achievable rate under colored noise. Active RIS elements add thermal noise
// that reaches the user through G_RU * Theta.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "risdof/beamforming.hpp"
#include "risdof/numerics.hpp"
#include "risdof/ris.hpp"

namespace risdof {

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

struct NoiseModel {
    double user_noise = 1e-10; ///< sigma_u^2, watts (-70 dBm)
    double ris_noise = 1e-12;  ///< sigma_r^2, watts (-90 dBm)
};

struct RateResult {
    double rate = 0.0; ///< bits/s/Hz
    int effective_rank = 0;
    std::vector<double> per_stream_snr_db;
    std::uint64_t config_fingerprint = 0;
};

/// R = sigma_u^2 I_K + sigma_r^2 sum_j (G_RU^j Theta^j)(G_RU^j Theta^j)^H.
/// `k` fixes the size when no RIS links are given.
ComplexMatrix noise_covariance(int k, std::span<const ComplexMatrix> ru_links,
                               std::span<const RisConfig> ris_configs, const NoiseModel& model);

/// Lower Cholesky factor L with R = L L^H. Throws NumericalError when R is
/// not Hermitian positive definite.
ComplexMatrix whitening_factor(const ComplexMatrix& noise_cov);

/// log2 det(I + R^{-1/2} H F P F^H H^H R^{-1/2}), P = diag(stream_powers).
/// per_stream_snr_db uses the design's combiner when it has one (SINR per
/// stream, inter-stream leakage counted as interference).
RateResult achievable_rate(const ComplexMatrix& h_eff, const LinkDesign& design,
                           const ComplexMatrix& noise_cov);

/// Post-combining SINR of each stream, linear.
std::vector<double> stream_sinr(const ComplexMatrix& h_eff, const LinkDesign& design,
                                const ComplexMatrix& noise_cov);

} // namespace risdof
