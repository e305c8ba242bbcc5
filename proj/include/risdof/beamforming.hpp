// SPDX-License-Identifier: Apache-2.0
//
// Transmit and receive designs: MRT, eigenmode transmission, zero-forcing
// combining and null-space-projection multi-stream precoding.

#pragma once

#include <span>
#include <vector>

#include "risdof/numerics.hpp"

namespace risdof {

struct LinkDesign {
    ComplexMatrix precoder;            ///< M x S, unit-norm columns
    ComplexMatrix combiner;            ///< S x K, empty when left to the receiver
    std::vector<double> stream_powers; ///< watts, sums to the transmit power

    int stream_count() const { return static_cast<int>(precoder.cols()); }
};

enum class PowerPolicy { water_filling, equal };

/// Single stream along the dominant right singular vector, matched-filter
/// combiner u_1^H. All of p_tx goes on the stream. Throws NumericalError on
/// a zero channel.
LinkDesign mrt(const ComplexMatrix& h_eff, double p_tx = 1.0);

/// One stream per numerically non-zero singular value of h_eff, combiner
/// U_S^H. Powers follow the given policy with per-stream gains sigma_i^2.
LinkDesign eigenmode_design(const ComplexMatrix& h_eff, double p_tx, double noise_power,
                            PowerPolicy policy = PowerPolicy::water_filling,
                            double rel_tol = kDefaultRankTolerance);

/// W = (h_eff F)^+ so that W h_eff F = I_S. Throws NumericalError naming the
/// achieved rank when h_eff F has fewer than S independent columns.
ComplexMatrix zero_forcing_combiner(const ComplexMatrix& h_eff, const ComplexMatrix& precoder);

/// Precoder column s lies in the null space of every other stream's
/// effective row and is the normalized projection of its own row there.
/// Streams are ordered as the cascade rows followed by the direct row (when
/// `direct` is non-empty). The combiner is left empty.
LinkDesign null_space_precoders(std::span<const ComplexMatrix> cascade_effective_rows,
                                const ComplexMatrix& direct);

/// Water-filled stream powers for the given per-stream gains (gain * p / noise = SNR).
LinkDesign allocate_stream_power(LinkDesign design, std::span<const double> per_stream_gains,
                                 double p_tx, double noise_power);

/// p_tx / S on every stream.
LinkDesign allocate_equal_power(LinkDesign design, double p_tx);

} // namespace risdof
