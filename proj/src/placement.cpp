// SPDX-License-Identifier: Apache-2.0

#include "risdof/placement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "risdof/errors.hpp"

namespace risdof {

namespace {

constexpr double kCosSlack = 1e-12;

double offset_argument(double theta_i, const ArrayGeometry& g, int l) {
    return std::cos(theta_i) +
           g.wavelength * static_cast<double>(l) / (g.element_count * g.element_spacing);
}

bool offset_feasible(double theta_i, const ArrayGeometry& g, int l) {
    return std::abs(offset_argument(theta_i, g, l)) <= 1.0 + kCosSlack;
}

bool offset_collides(int l, const std::vector<int>& taken, int modulus) {
    for (int t : taken) {
        if ((l - t) % modulus == 0) {
            return true;
        }
    }
    return false;
}

// Offsets 0, +1, -1, +2, -2, ... that are feasible and pairwise orthogonal
// to everything in `taken`. Stops early when the array runs out of directions.
std::vector<int> orthogonal_offsets(int wanted, double base, const ArrayGeometry& g,
                                    std::vector<int> taken) {
    std::vector<int> chosen;
    const int limit = 2 * g.element_count + 2;
    for (int step = 0; step <= limit && static_cast<int>(chosen.size()) < wanted; ++step) {
        for (int sign : {+1, -1}) {
            if (step == 0 && sign < 0) {
                continue;
            }
            const int l = sign * step;
            if (static_cast<int>(chosen.size()) >= wanted) {
                break;
            }
            if (!offset_feasible(base, g, l) || offset_collides(l, taken, g.element_count)) {
                continue;
            }
            chosen.push_back(l);
            taken.push_back(l);
        }
    }
    return chosen;
}

double angle_at_offset(double base, const ArrayGeometry& g, int l) {
    return l == 0 ? base : orthogonal_angle(base, g, l);
}

std::string format_number(double value) {
    if (std::isinf(value)) {
        return "inf";
    }
    std::ostringstream os;
    os << std::setprecision(12) << value;
    return os.str();
}

} // namespace

double orthogonal_angle(double theta_i, const ArrayGeometry& geometry, int l) {
    geometry.validate();
    if (l % geometry.element_count == 0) {
        throw std::invalid_argument("orthogonal_angle: offset l = " + std::to_string(l) +
                                    " is a multiple of the element count " +
                                    std::to_string(geometry.element_count));
    }
    const double arg = offset_argument(theta_i, geometry, l);
    if (std::abs(arg) > 1.0 + kCosSlack) {
        std::ostringstream os;
        os << "orthogonal_angle: cos(theta) + lambda*l/(M*d) = " << arg
           << " lies outside [-1, 1] (l = " << l << ", M = " << geometry.element_count
           << "); use a smaller |l| step";
        throw InfeasibleError(os.str());
    }
    return std::acos(std::clamp(arg, -1.0, 1.0));
}

PlacementPlan plan_distributed(const PlacementRequest& request) {
    if (request.target_rank < 1) {
        throw ConfigError("plan_distributed: target rank must be at least 1");
    }
    if (request.direct_rank != 0 && request.direct_rank != 1) {
        throw ConfigError("plan_distributed: direct rank must be 0 or 1");
    }
    request.bs.validate();
    request.user.validate();
    const int k = request.target_rank;
    const int sites = request.site_count.value_or(k - request.direct_rank);
    if (sites < 1) {
        throw ConfigError("plan_distributed: no RIS sites requested");
    }
    if (sites > k) {
        throw ConfigError("plan_distributed: " + std::to_string(sites) +
                          " sites exceed the target rank " + std::to_string(k));
    }
    if (request.total_elements < sites) {
        throw ConfigError("plan_distributed: fewer RIS elements than sites");
    }
    if (request.user.element_count < k) {
        throw ConfigError("plan_distributed: user array has fewer elements than the target rank");
    }

    const std::vector<int> reserved =
        request.direct_rank == 1 ? std::vector<int>{0} : std::vector<int>{};

    const std::vector<int> bs_offsets =
        orthogonal_offsets(sites, request.base_bs_angle, request.bs, reserved);
    if (static_cast<int>(bs_offsets.size()) < sites) {
        throw InfeasibleError("plan_distributed: BS-side angle chain leaves [-1, 1] after " +
                              std::to_string(bs_offsets.size()) + " of " +
                              std::to_string(sites) +
                              " sites; use fewer sites, a larger array or smaller |l| steps");
    }

    std::vector<int> user_offsets =
        orthogonal_offsets(sites, request.base_user_angle, request.user, reserved);
    std::vector<bool> aligned(user_offsets.size(), false);
    while (static_cast<int>(user_offsets.size()) < sites) {
        if (request.direct_rank != 1) {
            throw InfeasibleError(
                "plan_distributed: user-side angle chain leaves [-1, 1] after " +
                std::to_string(user_offsets.size()) + " of " + std::to_string(sites) +
                " sites; use fewer sites or smaller |l| steps");
        }
        user_offsets.push_back(0);
        aligned.push_back(true);
    }

    PlacementPlan plan;
    plan.target_rank = k;
    plan.direct_rank = request.direct_rank;
    plan.direct_aod = request.base_bs_angle;
    plan.direct_aoa = request.base_user_angle;
    const int per_site = request.total_elements / sites;
    const int remainder = request.total_elements % sites;
    for (int j = 0; j < sites; ++j) {
        RisSite site;
        site.aod_from_bs = angle_at_offset(request.base_bs_angle, request.bs, bs_offsets[j]);
        site.aoa_at_user = angle_at_offset(request.base_user_angle, request.user, user_offsets[j]);
        site.bs_ris_distance = request.bs_ris_distance;
        site.ris_user_distance = request.ris_user_distance;
        site.element_count = per_site + (j < remainder ? 1 : 0);
        site.aligned_with_direct = aligned[j];
        plan.alignment_with_direct = plan.alignment_with_direct || aligned[j];
        plan.sites.push_back(site);
    }
    return plan;
}

double alignment_check(const ComplexMatrix& h, const ComplexMatrix& cascade_ru) {
    if (h.rows() != cascade_ru.rows()) {
        throw DimensionError("alignment_check: row counts differ (" + std::to_string(h.rows()) +
                             " vs " + std::to_string(cascade_ru.rows()) + ")");
    }
    if (h.size() == 0 || cascade_ru.size() == 0) {
        return 0.0;
    }
    const SvdResult sh = svd(h);
    const SvdResult sc = svd(cascade_ru);
    const int rh = numerical_rank(h);
    const int rc = numerical_rank(cascade_ru);
    if (rh == 0 || rc == 0) {
        return 0.0;
    }
    const ComplexMatrix cross = sh.left_vectors.leftCols(rh).adjoint() * sc.left_vectors.leftCols(rc);
    Eigen::JacobiSVD<ComplexMatrix> s(cross);
    return std::min(1.0, s.singularValues()(0));
}

ChannelSet realize_plan(const PlacementPlan& plan, const PlanLinks& links) {
    ChannelSet set;
    const int m = links.bs.element_count;
    const int k = links.user.element_count;
    if (plan.direct_rank == 1) {
        const LinkBudget direct{links.bs_user_distance, links.path_loss_exponent,
                                links.reference_loss_db};
        set.direct = los_channel(links.bs, links.user, plan.direct_aod, plan.direct_aoa, direct);
        set.model_tags.emplace_back("direct:los");
    } else {
        set.direct = blocked_channel(k, m);
        set.model_tags.emplace_back("direct:blocked");
    }
    for (std::size_t j = 0; j < plan.sites.size(); ++j) {
        const RisSite& site = plan.sites[j];
        const ArrayGeometry ris = ArrayGeometry::half_wavelength(site.element_count, links.wavelength);
        const LinkBudget br{site.bs_ris_distance, links.path_loss_exponent, links.reference_loss_db};
        const LinkBudget ru{site.ris_user_distance, links.path_loss_exponent,
                            links.reference_loss_db};
        Cascade c;
        c.g_br = los_channel(links.bs, ris, site.aod_from_bs, links.ris_arrival_angle, br);
        c.g_ru = los_channel(ris, links.user, links.ris_departure_angle, site.aoa_at_user, ru);
        set.cascades.push_back(std::move(c));
        set.model_tags.push_back("br" + std::to_string(j) + ":los");
        set.model_tags.push_back("ru" + std::to_string(j) + ":los");
    }
    return set;
}

std::vector<RisConfig> align_plan(const PlacementPlan& plan, const ChannelSet& set,
                                  const PlanLinks& links) {
    std::vector<RisConfig> configs;
    for (std::size_t j = 0; j < plan.sites.size(); ++j) {
        const ComplexVector tx = steering_vector(links.bs, plan.sites[j].aod_from_bs) /
                                 std::sqrt(static_cast<double>(links.bs.element_count));
        const ComplexVector rx = steering_vector(links.user, plan.sites[j].aoa_at_user) /
                                 std::sqrt(static_cast<double>(links.user.element_count));
        configs.push_back(align_cascade(set.cascades[j], tx, rx, 0.0));
    }
    return configs;
}

PlanEvaluation evaluate_plan(const PlacementPlan& plan, const PlanLinks& links) {
    const ChannelSet set = realize_plan(plan, links);
    const std::vector<RisConfig> configs = align_plan(plan, set, links);
    PlanEvaluation out;
    out.composite = composite_channel(set, configs);
    out.rank = numerical_rank(out.composite);
    const int expected = std::min<int>(links.user.element_count,
                                       static_cast<int>(plan.sites.size()) + plan.direct_rank);
    out.condition_number = condition_number(out.composite, std::max(1, expected));
    return out;
}

std::string format_site_report(const PlacementPlan& plan, const PlanEvaluation& evaluation) {
    constexpr double deg = 180.0 / std::numbers::pi;
    std::ostringstream os;
    os << "# distributed RIS site report\n";
    os << "target_rank = " << plan.target_rank << "\n";
    os << "direct_rank = " << plan.direct_rank << "\n";
    os << "site_count = " << plan.sites.size() << "\n";
    os << "alignment_with_direct = " << (plan.alignment_with_direct ? "true" : "false") << "\n";
    os << "direct_aod_deg = " << format_number(plan.direct_aod * deg) << "\n";
    os << "direct_aoa_deg = " << format_number(plan.direct_aoa * deg) << "\n";
    os << "achieved_rank = " << evaluation.rank << "\n";
    os << "condition_number = " << format_number(evaluation.condition_number) << "\n";
    for (std::size_t j = 0; j < plan.sites.size(); ++j) {
        const RisSite& s = plan.sites[j];
        os << "\n[site " << j << "]\n";
        os << "aod_from_bs_deg = " << format_number(s.aod_from_bs * deg) << "\n";
        os << "aoa_at_user_deg = " << format_number(s.aoa_at_user * deg) << "\n";
        os << "bs_ris_distance_m = " << format_number(s.bs_ris_distance) << "\n";
        os << "ris_user_distance_m = " << format_number(s.ris_user_distance) << "\n";
        os << "element_count = " << s.element_count << "\n";
        os << "aligned_with_direct = " << (s.aligned_with_direct ? "true" : "false") << "\n";
    }
    return os.str();
}

} // namespace risdof
