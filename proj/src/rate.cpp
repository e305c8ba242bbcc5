// SPDX-License-Identifier: Apache-2.0

#include "risdof/rate.hpp"

#include <cmath>
#include <limits>

#include "risdof/errors.hpp"

namespace risdof {

double dbm_to_watts(double dbm) {
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts) {
    return 10.0 * std::log10(watts) + 30.0;
}

ComplexMatrix noise_covariance(int k, std::span<const ComplexMatrix> ru_links,
                               std::span<const RisConfig> ris_configs, const NoiseModel& model) {
    if (ru_links.size() != ris_configs.size()) {
        throw DimensionError("noise_covariance: " + std::to_string(ru_links.size()) +
                             " RIS links but " + std::to_string(ris_configs.size()) +
                             " configurations");
    }
    if (model.user_noise < 0.0 || model.ris_noise < 0.0) {
        throw std::invalid_argument("noise_covariance: noise powers must be non-negative");
    }
    ComplexMatrix r = model.user_noise * ComplexMatrix::Identity(k, k);
    for (std::size_t j = 0; j < ru_links.size(); ++j) {
        const ComplexMatrix& g = ru_links[j];
        if (g.rows() != k || g.cols() != ris_configs[j].element_count()) {
            throw DimensionError("noise_covariance: RIS link " + std::to_string(j) +
                                 " does not match K or its element count");
        }
        if (model.ris_noise == 0.0) {
            continue;
        }
        const ComplexMatrix scaled = g * ris_configs[j].reflection().asDiagonal();
        r.noalias() += model.ris_noise * (scaled * scaled.adjoint());
    }
    if (model.user_noise == 0.0 && numerical_rank(r) < k) {
        throw NumericalError("noise_covariance: singular covariance (no user noise and a "
                             "rank-deficient RIS noise term)");
    }
    return r;
}

ComplexMatrix whitening_factor(const ComplexMatrix& noise_cov) {
    if (noise_cov.rows() != noise_cov.cols() || noise_cov.rows() == 0) {
        throw DimensionError("whitening_factor: covariance must be square and nonempty");
    }
    Eigen::LLT<ComplexMatrix> llt(noise_cov);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("singular or indefinite noise covariance");
    }
    const ComplexMatrix l = llt.matrixL();
    const double smallest = l.diagonal().cwiseAbs().minCoeff();
    if (!(smallest > 0.0)) {
        throw NumericalError("singular noise covariance");
    }
    return l;
}

std::vector<double> stream_sinr(const ComplexMatrix& h_eff, const LinkDesign& design,
                                const ComplexMatrix& noise_cov) {
    const int s = design.stream_count();
    if (design.combiner.rows() != s || design.combiner.cols() != h_eff.rows()) {
        throw DimensionError("stream_sinr: combiner must be S x K");
    }
    const ComplexMatrix coupling = design.combiner * h_eff * design.precoder; // S x S
    const ComplexMatrix noise = design.combiner * noise_cov * design.combiner.adjoint();
    std::vector<double> out(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) {
        const double signal = design.stream_powers[i] * std::norm(coupling(i, i));
        double interference = noise(i, i).real();
        for (int t = 0; t < s; ++t) {
            if (t != i) {
                interference += design.stream_powers[t] * std::norm(coupling(i, t));
            }
        }
        out[i] = interference > 0.0 ? signal / interference
                                    : (signal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    }
    return out;
}

RateResult achievable_rate(const ComplexMatrix& h_eff, const LinkDesign& design,
                           const ComplexMatrix& noise_cov) {
    const Eigen::Index k = h_eff.rows();
    if (noise_cov.rows() != k || noise_cov.cols() != k) {
        throw DimensionError("achievable_rate: noise covariance must be K x K");
    }
    if (design.precoder.rows() != h_eff.cols()) {
        throw DimensionError("achievable_rate: precoder rows do not match the BS array");
    }
    if (static_cast<int>(design.stream_powers.size()) != design.stream_count()) {
        throw DimensionError("achievable_rate: one power per stream required");
    }
    const ComplexMatrix l = whitening_factor(noise_cov);

    RealVector amplitudes(design.stream_count());
    for (int i = 0; i < design.stream_count(); ++i) {
        if (design.stream_powers[i] < 0.0) {
            throw std::invalid_argument("achievable_rate: negative stream power");
        }
        amplitudes(i) = std::sqrt(design.stream_powers[i]);
    }
    const ComplexMatrix whitened =
        l.triangularView<Eigen::Lower>().solve(h_eff * design.precoder * amplitudes.asDiagonal());
    const ComplexMatrix gram =
        ComplexMatrix::Identity(k, k) + whitened * whitened.adjoint();
    Eigen::LLT<ComplexMatrix> llt(gram);
    double rate = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        rate += 2.0 * std::log2(std::real(llt.matrixL()(i, i)));
    }

    RateResult out;
    out.rate = std::max(0.0, rate);
    out.effective_rank = numerical_rank(h_eff);
    if (design.combiner.size() != 0) {
        for (double sinr : stream_sinr(h_eff, design, noise_cov)) {
            out.per_stream_snr_db.push_back(10.0 * std::log10(sinr));
        }
    }
    return out;
}

} // namespace risdof
