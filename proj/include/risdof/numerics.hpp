// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra used by every other module: SVD, numerical
// rank, null spaces, pseudo-inverse and water-filling.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace risdof {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultRankTolerance = 1e-8;

struct SvdResult {
    RealVector singular_values; ///< descending, non-negative
    ComplexMatrix left_vectors;  ///< U, rows x p
    ComplexMatrix right_vectors; ///< V, cols x p
};

/// Thin SVD, p = min(rows, cols). Throws DimensionError on an empty matrix.
SvdResult svd(const ComplexMatrix& a);

/// SVD with square U (rows x rows) and V (cols x cols).
SvdResult full_svd(const ComplexMatrix& a);

/// Number of singular values strictly above rel_tol * sigma_max. Zero matrix has rank 0.
int numerical_rank(const ComplexMatrix& a, double rel_tol = kDefaultRankTolerance);

/// Ratio of the largest to the count-th singular value (count >= 1).
double condition_number(const ComplexMatrix& a, int count);

/// Orthonormal basis of the right null space, cols(a) - rank(a) columns.
ComplexMatrix null_space_basis(const ComplexMatrix& a, double rel_tol = kDefaultRankTolerance);

/// Moore-Penrose inverse, cols x rows. Singular values at or below
/// rel_tol * sigma_max are treated as zero.
ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rel_tol = kDefaultRankTolerance);

/// Largest |A - A^H| entry.
double hermitian_defect(const ComplexMatrix& a);

struct PowerAllocation {
    std::vector<double> per_stream_power; ///< watts, same order as the gains
    double water_level = 0.0;             ///< mu, watts
};

/// Capacity-achieving allocation p_i = max(0, mu - noise/g_i) with sum p_i = total_power.
PowerAllocation water_filling(std::span<const double> gains, double total_power,
                              double noise_power);

/// Sum of log2(1 + g_i p_i / noise).
double parallel_channel_rate(std::span<const double> gains, std::span<const double> powers,
                             double noise_power);

} // namespace risdof
