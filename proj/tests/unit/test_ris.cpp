#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "risdof/errors.hpp"
#include "risdof/ris.hpp"

using namespace risdof;

namespace {

ComplexVector random_vector(int n, std::uint64_t seed) {
    return oracle::gaussian_matrix(n, 1, seed).col(0);
}

ComplexMatrix random_covariance(int n, std::uint64_t seed) {
    const ComplexMatrix x = oracle::gaussian_matrix(n, 3, seed, 1e-6);
    return x * x.adjoint();
}

} // namespace

TEST_CASE("phase align examples") {
    ComplexVector br(1);
    ComplexVector ru(1);
    br << Complex(2.0, 0.0);
    ru << Complex(0.5, 0.0);
    const RisConfig c = phase_align(br, ru, 0.0);
    CHECK(c.phases(0) == doctest::Approx(0.0));
    CHECK(c.amplification == 1.0);

    CHECK_THROWS_AS(phase_align(ComplexVector(2), ComplexVector(3), 0.0), DimensionError);
}

TEST_CASE("phase align matches an exhaustive search at N = 2") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ComplexVector br = random_vector(2, seed);
        const ComplexVector ru = random_vector(2, seed + 100);
        const Complex direct = random_vector(1, seed + 200)(0);
        const RisConfig c = phase_align(br, ru, std::arg(direct));
        const Complex total =
            direct + (ru.array() * c.reflection().array() * br.array()).sum();
        const double coherent = std::abs(direct) + std::abs(ru(0) * br(0)) + std::abs(ru(1) * br(1));
        CHECK(std::abs(total) == doctest::Approx(coherent).epsilon(1e-12));
        const std::vector<Complex> b{br(0), br(1)};
        const std::vector<Complex> r{ru(0), ru(1)};
        const double searched = oracle::exhaustive_two_element(b, r, direct, 64);
        // 64 levels: each path is off by at most pi/64
        CHECK(std::abs(total) >= searched - 1e-12);
        CHECK(searched >= std::abs(total) * std::cos(std::numbers::pi / 64) - 1e-12);
    }
}

TEST_CASE("coherent sum dominates random phases") {
    const ComplexVector br = random_vector(16, 1);
    const ComplexVector ru = random_vector(16, 2);
    const RisConfig aligned = phase_align(br, ru, 0.0);
    const double best = cascade_coefficient_magnitude(br, ru, aligned);
    CHECK(best == doctest::Approx((br.cwiseAbs().array() * ru.cwiseAbs().array()).sum()));
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
    for (int t = 0; t < 1000; ++t) {
        RisConfig other = RisConfig::passive(16);
        for (Eigen::Index n = 0; n < 16; ++n) {
            other.phases(n) = u(gen);
        }
        CHECK(cascade_coefficient_magnitude(br, ru, other) <= best + 1e-12);
    }
}

TEST_CASE("phase align under a global rotation") {
    const ComplexVector br = random_vector(8, 5);
    const ComplexVector ru = random_vector(8, 6);
    const double psi = 0.7;
    const RisConfig a = phase_align(br, ru, 0.0);
    const RisConfig b = phase_align(br * std::polar(1.0, psi), ru, 0.0);
    for (Eigen::Index n = 0; n < 8; ++n) {
        CHECK(std::abs(std::remainder(b.phases(n) - (a.phases(n) - psi), 2 * std::numbers::pi)) <
              1e-12);
    }
    CHECK(cascade_coefficient_magnitude(br * std::polar(1.0, psi), ru, b) ==
          doctest::Approx(cascade_coefficient_magnitude(br, ru, a)));
}

TEST_CASE("phases are wrapped and passive surfaces are unit modulus") {
    const RisConfig c = phase_align(random_vector(32, 7), random_vector(32, 8), 5.0);
    for (Eigen::Index n = 0; n < 32; ++n) {
        CHECK(c.phases(n) >= 0.0);
        CHECK(c.phases(n) < 2 * std::numbers::pi);
        CHECK(std::abs(c.reflection()(n)) == doctest::Approx(1.0));
    }
    CHECK(wrap_phase(-1e-18) < 2 * std::numbers::pi);
    CHECK(wrap_phase(2 * std::numbers::pi) == doctest::Approx(0.0));
}

TEST_CASE("phase quantization") {
    RisConfig c = RisConfig::passive(3);
    c.phases << 0.1, 1.6, 6.2;
    const RisConfig q = quantize_phases(c, 2);
    CHECK(q.phases(0) == doctest::Approx(0.0));
    CHECK(q.phases(1) == doctest::Approx(std::numbers::pi / 2));
    CHECK(q.phases(2) == doctest::Approx(0.0));
    CHECK(quantize_phases(c, 0).phases == c.phases);
    CHECK_THROWS(quantize_phases(c, -1));
}

TEST_CASE("active power examples") {
    RisConfig off = RisConfig::passive(10);
    off.amplification = 0.0;
    CHECK(active_power(off, random_covariance(10, 1), 1e-12) == 0.0);

    const RisConfig passive = RisConfig::passive(100);
    CHECK(active_power(passive, ComplexMatrix(ComplexMatrix::Zero(100, 100)), 1e-12) ==
          doctest::Approx(1e-10).epsilon(1e-12));

    const ComplexMatrix c = random_covariance(20, 2);
    RisConfig two = RisConfig::passive(20);
    two.amplification = 2.0;
    const double expected = 4.0 * (c.trace().real() + 20 * 1e-12);
    CHECK(std::abs(active_power(two, c, 1e-12) - expected) <= 1e-12 * expected);
}

TEST_CASE("active power rejects bad covariances") {
    ComplexMatrix c = random_covariance(4, 3);
    c(0, 1) += Complex(1.0, 0.0);
    CHECK_THROWS_AS(active_power(RisConfig::passive(4), c, 0.0), NumericalError);
    CHECK_THROWS_AS(active_power(RisConfig::passive(5), random_covariance(4, 3), 0.0),
                    DimensionError);
}

TEST_CASE("active power is monotone") {
    const ComplexMatrix c = random_covariance(8, 4);
    double last = -1.0;
    for (double rho : {0.0, 0.5, 1.0, 2.0, 10.0}) {
        RisConfig cfg = RisConfig::passive(8);
        cfg.amplification = rho;
        const double p = active_power(cfg, c, 1e-12);
        CHECK(p >= last);
        last = p;
    }
    CHECK(active_power(RisConfig::passive(8), c, 1e-9) >=
          active_power(RisConfig::passive(8), c, 1e-12));
    CHECK(active_power(RisConfig::passive(8), ComplexMatrix(2.0 * c), 1e-12) >=
          active_power(RisConfig::passive(8), c, 1e-12));
}

TEST_CASE("solve amplification") {
    const ComplexMatrix c = random_covariance(16, 5);
    const RisConfig cfg = RisConfig::passive(16);
    const double passive_power = active_power(cfg, c, 1e-12);
    CHECK(solve_amplification(cfg, c, 1e-12, passive_power) == doctest::Approx(1.0));
    CHECK(solve_amplification(cfg, c, 1e-12, 4 * passive_power) == doctest::Approx(2.0));

    const double rho = solve_amplification(cfg, c, 1e-12, 0.3);
    RisConfig scaled = cfg;
    scaled.amplification = rho;
    CHECK(std::abs(active_power(scaled, c, 1e-12) - 0.3) < 1e-10 * 0.3);
    CHECK(rho == doctest::Approx(std::sqrt(0.3 / (c.trace().real() + 16e-12))));

    CHECK_THROWS_AS(solve_amplification(cfg, ComplexMatrix(ComplexMatrix::Zero(16, 16)), 0.0, 1.0),
                    NumericalError);
    CHECK_THROWS(solve_amplification(cfg, c, 1e-12, 0.0));

    const RealVector diag = c.diagonal().real();
    CHECK(solve_amplification(cfg, diag, 1e-12, 0.3) == doctest::Approx(rho).epsilon(1e-14));
}
