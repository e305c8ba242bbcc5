// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations for tests. None of these call the
// library's linear algebra; they are deliberately naive.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix gaussian_matrix(int rows, int cols, std::uint64_t seed, double variance = 1.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
    Matrix a(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            a(r, c) = Complex(n(gen), n(gen));
        }
    }
    return a;
}

/// Rank by Gaussian elimination with partial pivoting. Pivots at or below
/// rel_tol * max|a_ij| count as zero.
inline int elimination_rank(Matrix a, double rel_tol = 1e-10) {
    const double scale = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        return 0;
    }
    int rank = 0;
    const int rows = static_cast<int>(a.rows());
    const int cols = static_cast<int>(a.cols());
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = rank;
        for (int r = rank + 1; r < rows; ++r) {
            if (std::abs(a(r, c)) > std::abs(a(pivot, c))) {
                pivot = r;
            }
        }
        if (std::abs(a(pivot, c)) <= rel_tol * scale) {
            continue;
        }
        a.row(rank).swap(a.row(pivot));
        for (int r = rank + 1; r < rows; ++r) {
            const Complex f = a(r, c) / a(rank, c);
            for (int k = c; k < cols; ++k) {
                a(r, k) -= f * a(rank, k);
            }
        }
        ++rank;
    }
    return rank;
}

inline double parallel_rate(const std::vector<double>& gains, const std::vector<double>& p,
                            double noise) {
    double r = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        r += std::log2(1.0 + gains[i] * p[i] / noise);
    }
    return r;
}

/// Best rate over a uniform grid on the power simplex. Two or three streams.
inline double grid_search_rate(const std::vector<double>& gains, double total, double noise,
                               int points = 10000) {
    double best = 0.0;
    if (gains.size() == 1) {
        return parallel_rate(gains, {total}, noise);
    }
    if (gains.size() == 2) {
        for (int i = 0; i <= points; ++i) {
            const double p1 = total * i / points;
            best = std::max(best, parallel_rate(gains, {p1, total - p1}, noise));
        }
        return best;
    }
    for (int i = 0; i <= points; ++i) {
        for (int j = 0; i + j <= points; ++j) {
            const double p1 = total * i / points;
            const double p2 = total * j / points;
            best = std::max(best, parallel_rate(gains, {p1, p2, total - p1 - p2}, noise));
        }
    }
    return best;
}

/// |sum_{m<M} exp(i m delta)| in closed form.
inline double geometric_series_magnitude(int m, double delta) {
    const double half = std::remainder(delta / 2.0, std::acos(-1.0));
    if (std::abs(std::sin(half)) < 1e-300) {
        return m;
    }
    return std::abs(std::sin(m * delta / 2.0) / std::sin(delta / 2.0));
}

/// Same as a loop, for reference.
inline double inner_product_loop(int m, double spacing_over_lambda, double theta_i,
                                 double theta_j) {
    const double pi = std::acos(-1.0);
    Complex s = 0.0;
    for (int k = 0; k < m; ++k) {
        const double ph = 2 * pi * spacing_over_lambda * k * (std::cos(theta_j) - std::cos(theta_i));
        s += Complex(std::cos(ph), std::sin(ph));
    }
    return std::abs(s);
}

/// sum_i log2(1 + lambda_i) of R^{-1/2} H F P F^H H^H R^{-1/2}, with R^{-1/2}
/// taken from an eigendecomposition of R.
inline double eigen_sum_rate(const Matrix& h, const Matrix& f, const std::vector<double>& p,
                             const Matrix& r) {
    Eigen::SelfAdjointEigenSolver<Matrix> er(r);
    const Eigen::VectorXd inv_sqrt = er.eigenvalues().cwiseSqrt().cwiseInverse();
    const Matrix r_inv_half = er.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() *
                              er.eigenvectors().adjoint();
    Matrix pd = Matrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        pd(i, i) = p[i];
    }
    const Matrix q = r_inv_half * h * f * pd * f.adjoint() * h.adjoint() * r_inv_half;
    Eigen::SelfAdjointEigenSolver<Matrix> eq(Matrix((q + q.adjoint()) / 2.0));
    double rate = 0.0;
    for (Eigen::Index i = 0; i < eq.eigenvalues().size(); ++i) {
        rate += std::log2(1.0 + std::max(0.0, eq.eigenvalues()(i)));
    }
    return rate;
}

/// R(a, b) = su * delta_ab + sr * sum_j sum_n G_j(a, n) |theta_jn|^2 conj(G_j(b, n)).
inline Matrix direct_sum_covariance(int k, const std::vector<Matrix>& links,
                                    const std::vector<std::vector<Complex>>& thetas, double su,
                                    double sr) {
    Matrix r = Matrix::Zero(k, k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            Complex acc = a == b ? Complex(su, 0.0) : Complex(0.0, 0.0);
            for (std::size_t j = 0; j < links.size(); ++j) {
                for (int n = 0; n < links[j].cols(); ++n) {
                    acc += sr * links[j](a, n) * std::norm(thetas[j][n]) * std::conj(links[j](b, n));
                }
            }
            r(a, b) = acc;
        }
    }
    return r;
}

/// max over phases in a `levels`-point grid of |d + sum_n ru_n e^{i phi_n} br_n|, N = 2.
inline double exhaustive_two_element(const std::vector<Complex>& br, const std::vector<Complex>& ru,
                                     Complex direct, int levels = 64) {
    const double pi = std::acos(-1.0);
    double best = 0.0;
    for (int a = 0; a < levels; ++a) {
        for (int b = 0; b < levels; ++b) {
            const double pa = 2 * pi * a / levels;
            const double pb = 2 * pi * b / levels;
            const Complex s = direct + ru[0] * std::polar(1.0, pa) * br[0] +
                              ru[1] * std::polar(1.0, pb) * br[1];
            best = std::max(best, std::abs(s));
        }
    }
    return best;
}

} // namespace oracle
