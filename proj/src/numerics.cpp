// SPDX-License-Identifier: Apache-2.0

#include "risdof/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "risdof/errors.hpp"

namespace risdof {

namespace {

void require_nonempty(const ComplexMatrix& a, const char* op) {
    if (a.rows() == 0 || a.cols() == 0) {
        throw DimensionError(std::string(op) + ": empty matrix (" + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()) + ")");
    }
}

int rank_from_values(const RealVector& sv, double rel_tol) {
    if (sv.size() == 0 || sv(0) <= 0.0) {
        return 0;
    }
    const double cutoff = rel_tol * sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) {
            ++rank;
        }
    }
    return rank;
}

} // namespace

SvdResult svd(const ComplexMatrix& a) {
    require_nonempty(a, "svd");
    Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

SvdResult full_svd(const ComplexMatrix& a) {
    require_nonempty(a, "svd");
    Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

int numerical_rank(const ComplexMatrix& a, double rel_tol) {
    require_nonempty(a, "numerical_rank");
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw std::invalid_argument("numerical_rank: rel_tol must lie in (0, 1)");
    }
    Eigen::JacobiSVD<ComplexMatrix> solver(a);
    return rank_from_values(solver.singularValues(), rel_tol);
}

double condition_number(const ComplexMatrix& a, int count) {
    require_nonempty(a, "condition_number");
    Eigen::JacobiSVD<ComplexMatrix> solver(a);
    const RealVector& sv = solver.singularValues();
    if (count < 1 || count > sv.size()) {
        throw std::invalid_argument("condition_number: count out of range");
    }
    const double smallest = sv(count - 1);
    return smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
}

ComplexMatrix null_space_basis(const ComplexMatrix& a, double rel_tol) {
    require_nonempty(a, "null_space_basis");
    const SvdResult s = full_svd(a);
    const int rank = rank_from_values(s.singular_values, rel_tol);
    const Eigen::Index nullity = a.cols() - rank;
    return s.right_vectors.rightCols(nullity);
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rel_tol) {
    require_nonempty(a, "pseudo_inverse");
    const SvdResult s = svd(a);
    const int rank = rank_from_values(s.singular_values, rel_tol);
    ComplexMatrix result = ComplexMatrix::Zero(a.cols(), a.rows());
    for (int i = 0; i < rank; ++i) {
        result.noalias() += (s.right_vectors.col(i) / s.singular_values(i)) *
                            s.left_vectors.col(i).adjoint();
    }
    return result;
}

double hermitian_defect(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("hermitian_defect: matrix is not square");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

PowerAllocation water_filling(std::span<const double> gains, double total_power,
                              double noise_power) {
    if (gains.empty()) {
        throw std::invalid_argument("water_filling: no gains given");
    }
    if (!(total_power > 0.0) || !(noise_power > 0.0)) {
        throw std::invalid_argument("water_filling: power and noise must be positive");
    }
    const std::size_t n = gains.size();
    std::vector<double> floor(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(gains[i] > 0.0)) {
            throw std::invalid_argument("water_filling: gains must be positive");
        }
        floor[i] = noise_power / gains[i];
    }

    // Strongest subchannels (lowest floor) fill first; ties keep index order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return floor[x] < floor[y]; });

    double level = 0.0;
    double floor_sum = 0.0;
    std::size_t active = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        floor_sum += floor[order[k - 1]];
        const double candidate = (total_power + floor_sum) / static_cast<double>(k);
        if (candidate > floor[order[k - 1]]) {
            level = candidate;
            active = k;
        } else {
            break;
        }
    }

    PowerAllocation out;
    out.water_level = level;
    out.per_stream_power.assign(n, 0.0);
    for (std::size_t k = 0; k < active; ++k) {
        out.per_stream_power[order[k]] = level - floor[order[k]];
    }
    return out;
}

double parallel_channel_rate(std::span<const double> gains, std::span<const double> powers,
                             double noise_power) {
    if (gains.size() != powers.size()) {
        throw DimensionError("parallel_channel_rate: gains and powers differ in length");
    }
    double rate = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        rate += std::log2(1.0 + gains[i] * powers[i] / noise_power);
    }
    return rate;
}

} // namespace risdof
