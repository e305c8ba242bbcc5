#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "risdof/errors.hpp"
#include "risdof/placement.hpp"

using namespace risdof;

namespace {

constexpr double pi = std::numbers::pi;

ArrayGeometry ula(int n) {
    return ArrayGeometry::half_wavelength(n);
}

PlacementRequest request(int k, int direct_rank, int m = 64) {
    PlacementRequest r;
    r.target_rank = k;
    r.direct_rank = direct_rank;
    r.bs = ula(m);
    r.user = ula(k);
    r.total_elements = 300;
    return r;
}

PlanLinks links_for(const PlacementRequest& r) {
    PlanLinks l;
    l.bs = r.bs;
    l.user = r.user;
    return l;
}

double inner(const ArrayGeometry& g, double a, double b) {
    return std::abs(steering_vector(g, a).dot(steering_vector(g, b)));
}

} // namespace

TEST_CASE("orthogonal angle examples") {
    const double t = orthogonal_angle(pi / 2, ula(64), 1);
    CHECK(t == doctest::Approx(std::acos(1.0 / 32.0)).epsilon(1e-15));
    CHECK(t == doctest::Approx(1.5395).epsilon(1e-4));
    CHECK(inner(ula(64), pi / 2, t) < 1e-10 * 64);
    CHECK(oracle::inner_product_loop(64, 0.5, pi / 2, t) < 1e-10 * 64);

    CHECK_THROWS_AS(orthogonal_angle(pi / 2, ula(64), 0), std::invalid_argument);
    CHECK_THROWS_AS(orthogonal_angle(pi / 2, ula(64), 64), std::invalid_argument);
    CHECK_THROWS_AS(orthogonal_angle(0.1, ula(4), 1), InfeasibleError);
    try {
        orthogonal_angle(0.1, ula(4), 1);
    } catch (const InfeasibleError& e) {
        CHECK(std::string(e.what()).find("smaller |l|") != std::string::npos);
    }
}

TEST_CASE("orthogonal angle is an involution under l -> -l") {
    for (int m : {16, 64, 128}) {
        for (int l : {1, 2, 3, -1, -5}) {
            const double theta = 1.3;
            const double there = orthogonal_angle(theta, ula(m), l);
            CHECK(std::abs(orthogonal_angle(there, ula(m), -l) - theta) < 1e-12);
            CHECK(inner(ula(m), theta, there) < 1e-10 * m);
        }
    }
}

TEST_CASE("plan for K = 4 with LoS direct reaches rank 4") {
    const PlacementRequest r = request(4, 1);
    const PlacementPlan plan = plan_distributed(r);
    REQUIRE(plan.sites.size() == 3);
    const PlanEvaluation ev = evaluate_plan(plan, links_for(r));
    CHECK(ev.rank == 4);
    CHECK(ev.condition_number < 1e3);

    std::vector<double> bs_angles{plan.direct_aod};
    std::vector<double> user_angles{plan.direct_aoa};
    int elements = 0;
    for (const RisSite& s : plan.sites) {
        bs_angles.push_back(s.aod_from_bs);
        user_angles.push_back(s.aoa_at_user);
        elements += s.element_count;
        CHECK_FALSE(s.aligned_with_direct);
        CHECK(s.aod_from_bs >= 0.0);
        CHECK(s.aod_from_bs <= pi);
    }
    CHECK(elements == 300);
    for (std::size_t i = 0; i < bs_angles.size(); ++i) {
        for (std::size_t j = i + 1; j < bs_angles.size(); ++j) {
            CHECK(inner(r.bs, bs_angles[i], bs_angles[j]) < 1e-10 * 64);
            CHECK(inner(r.user, user_angles[i], user_angles[j]) < 1e-10 * 4);
        }
    }
}

TEST_CASE("plan for K = 1 without direct path") {
    const PlacementRequest r = request(1, 0);
    const PlacementPlan plan = plan_distributed(r);
    REQUIRE(plan.sites.size() == 1);
    CHECK(evaluate_plan(plan, links_for(r)).rank == 1);
}

TEST_CASE("colliding BS angles lose a rank") {
    const PlacementRequest r = request(2, 1);
    PlacementPlan plan = plan_distributed(r);
    REQUIRE(plan.sites.size() == 1);
    CHECK(evaluate_plan(plan, links_for(r)).rank == 2);
    plan.sites[0].aod_from_bs = plan.direct_aod;
    plan.sites[0].aoa_at_user = plan.direct_aoa;
    CHECK(evaluate_plan(plan, links_for(r)).rank < 2);

    const PlacementRequest r4 = request(4, 1);
    PlacementPlan p4 = plan_distributed(r4);
    p4.sites[1].aod_from_bs = p4.sites[0].aod_from_bs;
    CHECK(evaluate_plan(p4, links_for(r4)).rank == 3);
}

TEST_CASE("more sites than free user directions reuse the direct direction") {
    PlacementRequest r = request(4, 1);
    r.site_count = 4;
    const PlacementPlan plan = plan_distributed(r);
    REQUIRE(plan.sites.size() == 4);
    CHECK(plan.alignment_with_direct);
    CHECK(plan.sites[3].aligned_with_direct);
    CHECK(plan.sites[3].aoa_at_user == doctest::Approx(plan.direct_aoa));
    CHECK(evaluate_plan(plan, links_for(r)).rank == 4);
}

TEST_CASE("plan errors") {
    CHECK_THROWS_AS(plan_distributed(request(0, 0)), ConfigError);
    CHECK_THROWS_AS(plan_distributed(request(2, 2)), ConfigError);
    PlacementRequest too_many = request(2, 0);
    too_many.site_count = 3;
    CHECK_THROWS_AS(plan_distributed(too_many), ConfigError);
    // a 2-element BS array has only two orthogonal directions
    PlacementRequest tiny = request(4, 0, 2);
    CHECK_THROWS_AS(plan_distributed(tiny), InfeasibleError);
}

TEST_CASE("alignment check") {
    const LinkBudget b{10.0, 2.0, 30.0};
    const ComplexMatrix h = los_channel(ula(8), ula(4), pi / 2, pi / 2, b);
    CHECK(alignment_check(h, h) == doctest::Approx(1.0));
    const double other = orthogonal_angle(pi / 2, ula(4), 1);
    const ComplexMatrix g = los_channel(ula(8), ula(4), 1.0, other, b);
    CHECK(alignment_check(h, g) < 1e-10);
    CHECK(alignment_check(ComplexMatrix::Zero(4, 8), g) == 0.0);
    CHECK_THROWS_AS(alignment_check(h, ComplexMatrix::Zero(3, 8)), DimensionError);
}

TEST_CASE("site report") {
    const PlacementRequest r = request(4, 1);
    const PlacementPlan plan = plan_distributed(r);
    const std::string report = format_site_report(plan, evaluate_plan(plan, links_for(r)));
    CHECK(report.find("achieved_rank = 4") != std::string::npos);
    CHECK(report.find("[site 2]") != std::string::npos);
    CHECK(report.find("condition_number = ") != std::string::npos);
    CHECK(report.find("direct_aod_deg = 90") != std::string::npos);
}
