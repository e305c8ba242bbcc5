// SPDX-License-Identifier: Apache-2.0

#include "risdof/beamforming.hpp"

#include "risdof/errors.hpp"

namespace risdof {

LinkDesign mrt(const ComplexMatrix& h_eff, double p_tx) {
    const SvdResult s = svd(h_eff);
    if (!(s.singular_values(0) > 0.0)) {
        throw NumericalError("mrt: zero channel has no transmit direction");
    }
    LinkDesign d;
    d.precoder = s.right_vectors.leftCols(1);
    d.combiner = s.left_vectors.leftCols(1).adjoint();
    d.stream_powers = {p_tx};
    return d;
}

LinkDesign eigenmode_design(const ComplexMatrix& h_eff, double p_tx, double noise_power,
                            PowerPolicy policy, double rel_tol) {
    const int rank = numerical_rank(h_eff, rel_tol);
    if (rank == 0) {
        throw NumericalError("eigenmode_design: zero channel supports no stream");
    }
    const SvdResult s = svd(h_eff);
    LinkDesign d;
    d.precoder = s.right_vectors.leftCols(rank);
    d.combiner = s.left_vectors.leftCols(rank).adjoint();
    if (policy == PowerPolicy::equal) {
        return allocate_equal_power(std::move(d), p_tx);
    }
    std::vector<double> gains(rank);
    for (int i = 0; i < rank; ++i) {
        gains[i] = s.singular_values(i) * s.singular_values(i);
    }
    return allocate_stream_power(std::move(d), gains, p_tx, noise_power);
}

ComplexMatrix zero_forcing_combiner(const ComplexMatrix& h_eff, const ComplexMatrix& precoder) {
    if (h_eff.cols() != precoder.rows()) {
        throw DimensionError("zero_forcing_combiner: channel has " + std::to_string(h_eff.cols()) +
                             " columns, precoder " + std::to_string(precoder.rows()) + " rows");
    }
    const ComplexMatrix streams = h_eff * precoder;
    const int wanted = static_cast<int>(precoder.cols());
    const int achieved = numerical_rank(streams);
    if (achieved < wanted) {
        throw NumericalError("zero_forcing_combiner: effective stream matrix has rank " +
                             std::to_string(achieved) + ", " + std::to_string(wanted) +
                             " streams requested");
    }
    return pseudo_inverse(streams);
}

LinkDesign null_space_precoders(std::span<const ComplexMatrix> cascade_effective_rows,
                                const ComplexMatrix& direct) {
    std::vector<ComplexMatrix> rows(cascade_effective_rows.begin(), cascade_effective_rows.end());
    if (direct.size() != 0) {
        rows.push_back(direct);
    }
    if (rows.empty()) {
        throw NumericalError("null_space_precoders: no streams");
    }
    const Eigen::Index m = rows.front().cols();
    for (const ComplexMatrix& r : rows) {
        if (r.rows() != 1 || r.cols() != m) {
            throw DimensionError("null_space_precoders: every stream needs a 1 x " +
                                 std::to_string(m) + " effective row");
        }
    }
    const Eigen::Index streams = static_cast<Eigen::Index>(rows.size());
    if (streams > m) {
        throw NumericalError("null_space_precoders: " + std::to_string(streams) +
                             " streams exceed " + std::to_string(m) + " transmit antennas");
    }

    LinkDesign d;
    d.precoder.resize(m, streams);
    for (Eigen::Index s = 0; s < streams; ++s) {
        ComplexVector direction;
        if (streams == 1) {
            direction = rows[s].adjoint();
        } else {
            ComplexMatrix others(streams - 1, m);
            Eigen::Index row = 0;
            for (Eigen::Index t = 0; t < streams; ++t) {
                if (t != s) {
                    others.row(row++) = rows[t];
                }
            }
            const ComplexMatrix basis = null_space_basis(others);
            if (basis.cols() == 0) {
                throw NumericalError("null_space_precoders: null space of the other streams is "
                                     "empty for stream " + std::to_string(s));
            }
            direction = basis * (basis.adjoint() * rows[s].adjoint());
        }
        const double norm = direction.norm();
        if (!(norm > 1e-12 * rows[s].norm()) || !(norm > 0.0)) {
            throw NumericalError("null_space_precoders: stream " + std::to_string(s) +
                                 " has no gain outside the other streams' span");
        }
        d.precoder.col(s) = direction / norm;
    }
    d.stream_powers.assign(static_cast<std::size_t>(streams), 0.0);
    return d;
}

LinkDesign allocate_stream_power(LinkDesign design, std::span<const double> per_stream_gains,
                                 double p_tx, double noise_power) {
    if (static_cast<int>(per_stream_gains.size()) != design.stream_count()) {
        throw DimensionError("allocate_stream_power: " + std::to_string(per_stream_gains.size()) +
                             " gains for " + std::to_string(design.stream_count()) + " streams");
    }
    design.stream_powers = water_filling(per_stream_gains, p_tx, noise_power).per_stream_power;
    return design;
}

LinkDesign allocate_equal_power(LinkDesign design, double p_tx) {
    const int s = design.stream_count();
    if (s == 0) {
        throw DimensionError("allocate_equal_power: design has no streams");
    }
    design.stream_powers.assign(static_cast<std::size_t>(s), p_tx / s);
    return design;
}

} // namespace risdof
