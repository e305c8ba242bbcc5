// SPDX-License-Identifier: Apache-2.0

#include "risdof/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "risdof/errors.hpp"
#include "risdof/random.hpp"

namespace risdof {

namespace {

constexpr double kRisArrivalAngle = std::numbers::pi / 3;
constexpr double kRisDepartureAngle = 2 * std::numbers::pi / 3;
constexpr int kAmplificationRounds = 3;

double triangle_angle(double adjacent_a, double adjacent_b, double opposite) {
    const double c = (adjacent_a * adjacent_a + adjacent_b * adjacent_b - opposite * opposite) /
                     (2.0 * adjacent_a * adjacent_b);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

LinkBudget budget_for(const ScenarioConfig& p, double distance, LinkModel model) {
    return {distance, p.path_loss.exponent_for(model), p.path_loss.reference_loss_db};
}

ComplexMatrix make_link(LinkModel model, int rows, int cols, const ArrayGeometry& tx,
                        const ArrayGeometry& rx, double aod, double aoa, const LinkBudget& budget,
                        std::uint64_t seed) {
    switch (model) {
    case LinkModel::blocked:
        return blocked_channel(rows, cols);
    case LinkModel::los:
        return los_channel(tx, rx, aod, aoa, budget);
    case LinkModel::rayleigh:
        return rayleigh_channel(rows, cols, budget, seed);
    }
    throw ConfigError("unknown link model");
}

ComplexVector unit_steering(const ArrayGeometry& g, double angle) {
    return steering_vector(g, angle) / std::sqrt(static_cast<double>(g.element_count));
}

bool is_zero(const ComplexMatrix& a) {
    return a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0;
}

// Dominant singular vectors through the smaller Gram matrix; the links are
// tall or wide enough that a full SVD dominates the trial cost.
ComplexVector dominant_right(const ComplexMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a.adjoint() * a);
    return eig.eigenvectors().col(a.cols() - 1);
}

ComplexVector dominant_left(const ComplexMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a * a.adjoint());
    return eig.eigenvectors().col(a.rows() - 1);
}

// Dominant transmit/receive pair of one cascade on its own.
std::pair<ComplexVector, ComplexVector> cascade_directions(const Cascade& c) {
    const ComplexVector tx = dominant_right(c.g_br);
    const ComplexVector incident = c.g_br * tx;
    const ComplexMatrix per_element = c.g_ru * incident.asDiagonal();
    return {tx, dominant_left(per_element)};
}

std::vector<RisConfig> with_amplification(std::vector<RisConfig> configs,
                                          const std::vector<double>& rho) {
    for (std::size_t j = 0; j < configs.size(); ++j) {
        configs[j].amplification = rho[j];
    }
    return configs;
}

struct DesignContext {
    const ScenarioConfig& point;
    const PlacementPlan& plan;
    const ChannelSet& set;
    ArrayGeometry user;
};

// Receive directions of the independent streams for null-space precoding:
// the direct path (if any) followed by every site that is not aligned with it.
std::vector<ComplexVector> stream_directions(const DesignContext& ctx) {
    std::vector<ComplexVector> dirs;
    auto add = [&dirs](const ComplexVector& u) {
        for (const ComplexVector& d : dirs) {
            if (std::abs(d.dot(u)) > 1.0 - 1e-9) {
                return;
            }
        }
        dirs.push_back(u);
    };
    if (ctx.point.links.direct == LinkModel::los) {
        add(unit_steering(ctx.user, ctx.plan.direct_aoa));
    } else if (ctx.point.links.direct == LinkModel::rayleigh) {
        add(svd(ctx.set.direct).left_vectors.col(0));
    }
    for (std::size_t j = 0; j < ctx.plan.sites.size(); ++j) {
        if (ctx.point.links.ris_user == LinkModel::los) {
            add(unit_steering(ctx.user, ctx.plan.sites[j].aoa_at_user));
        } else if (!is_zero(ctx.set.cascades[j].g_br) && !is_zero(ctx.set.cascades[j].g_ru)) {
            add(cascade_directions(ctx.set.cascades[j]).second);
        }
    }
    return dirs;
}

LinkDesign make_design(const DesignContext& ctx, const ComplexMatrix& h, const ComplexMatrix& r,
                       double p_tx) {
    const ComplexMatrix l = whitening_factor(r);
    const auto lower = l.triangularView<Eigen::Lower>();
    const ComplexMatrix l_inv = lower.solve(ComplexMatrix::Identity(h.rows(), h.rows()));
    const ComplexMatrix hw = lower.solve(h);

    switch (ctx.point.transmit) {
    case TransmitDesign::eigenmode: {
        LinkDesign d = eigenmode_design(hw, p_tx, 1.0, ctx.point.power_policy);
        d.combiner = d.combiner * l_inv;
        return d;
    }
    case TransmitDesign::mrt: {
        LinkDesign d = mrt(hw, p_tx);
        d.combiner = d.combiner * l_inv;
        return d;
    }
    case TransmitDesign::null_space: {
        std::vector<ComplexMatrix> rows;
        for (const ComplexVector& u : stream_directions(ctx)) {
            ComplexMatrix row = u.adjoint() * h;
            if (row.norm() > 0.0) {
                rows.push_back(std::move(row));
            }
        }
        LinkDesign d = null_space_precoders(rows, ComplexMatrix());
        const ComplexMatrix w = zero_forcing_combiner(h, d.precoder);
        const ComplexMatrix noise = w * r * w.adjoint();
        std::vector<double> gains(static_cast<std::size_t>(d.stream_count()));
        for (int s = 0; s < d.stream_count(); ++s) {
            gains[s] = 1.0 / noise(s, s).real();
        }
        d = ctx.point.power_policy == PowerPolicy::equal
                ? allocate_equal_power(std::move(d), p_tx)
                : allocate_stream_power(std::move(d), gains, p_tx, 1.0);
        d.combiner = w;
        return d;
    }
    }
    throw ConfigError("unknown transmit design");
}

std::vector<RisConfig> own_direction_design(const DesignContext& ctx, const ArrayGeometry& bs) {
    std::vector<RisConfig> configs;
    for (std::size_t j = 0; j < ctx.set.cascades.size(); ++j) {
        const Cascade& c = ctx.set.cascades[j];
        if (is_zero(c.g_br) || is_zero(c.g_ru)) {
            configs.push_back(RisConfig::passive(static_cast<int>(c.g_br.rows())));
            continue;
        }
        const RisSite& site = ctx.plan.sites[j];
        auto [tx, rx] = cascade_directions(c);
        if (ctx.point.links.bs_ris == LinkModel::los) {
            tx = unit_steering(bs, site.aod_from_bs);
        }
        if (ctx.point.links.ris_user == LinkModel::los) {
            rx = unit_steering(ctx.user, site.aoa_at_user);
        }
        configs.push_back(align_cascade(c, tx, rx, 0.0));
    }
    return configs;
}

// Water-filled eigenmode rate of the passive composite under white user noise.
double capacity_proxy(const ChannelSet& set, const std::vector<RisConfig>& configs, double p_tx,
                      double user_noise) {
    const ComplexMatrix h = composite_channel(set, configs);
    if (is_zero(h)) {
        return 0.0;
    }
    const RealVector sv = svd(h).singular_values;
    const int rank = numerical_rank(h);
    std::vector<double> gains;
    for (int i = 0; i < rank; ++i) {
        gains.push_back(sv(i) * sv(i));
    }
    const PowerAllocation a = water_filling(gains, p_tx, user_noise);
    return parallel_channel_rate(gains, a.per_stream_power, user_noise);
}

// Coherent combining with the strongest mode suits a single stream; aligning
// every RIS with its own beam suits several. Keep whichever carries more rate.
std::vector<RisConfig> best_phase_design(const DesignContext& ctx, const ArrayGeometry& bs,
                                         double p_tx, double user_noise) {
    std::vector<RisConfig> coherent = alternating_phase_design(ctx.set);
    if (ctx.set.cascades.empty() || ctx.point.transmit == TransmitDesign::mrt) {
        return coherent;
    }
    std::vector<RisConfig> own = own_direction_design(ctx, bs);
    return capacity_proxy(ctx.set, own, p_tx, user_noise) >
                   capacity_proxy(ctx.set, coherent, p_tx, user_noise)
               ? own
               : coherent;
}

// diag(G_BR F P F^H G_BR^H): power arriving at each RIS element.
RealVector incident_power(const Cascade& c, const LinkDesign& d) {
    ComplexMatrix x = c.g_br * d.precoder;
    for (int s = 0; s < d.stream_count(); ++s) {
        x.col(s) *= std::sqrt(d.stream_powers[s]);
    }
    return x.rowwise().squaredNorm();
}

} // namespace

PlacementPlan scenario_plan(const ScenarioConfig& p) {
    constexpr double broadside = std::numbers::pi / 2;
    if (p.j == 0) {
        PlacementPlan plan;
        plan.target_rank = p.k;
        plan.direct_rank = p.links.direct == LinkModel::blocked ? 0 : 1;
        return plan;
    }
    if (p.placement == PlacementMode::planned) {
        PlacementRequest req;
        req.target_rank = p.k;
        req.direct_rank = p.links.direct == LinkModel::los ? 1 : 0;
        req.bs = ArrayGeometry::half_wavelength(p.m, p.wavelength);
        req.user = ArrayGeometry::half_wavelength(p.k, p.wavelength);
        req.site_count = p.j;
        req.total_elements = p.n;
        req.bs_ris_distance = p.distances.bs_ris;
        req.ris_user_distance = p.distances.ris_user;
        return plan_distributed(req);
    }
    const Distances& d = p.distances;
    PlacementPlan plan;
    plan.target_rank = p.k;
    plan.direct_rank = p.links.direct == LinkModel::blocked ? 0 : 1;
    RisSite site;
    site.aod_from_bs = broadside - triangle_angle(d.bs_ris, d.bs_user, d.ris_user);
    site.aoa_at_user = broadside + triangle_angle(d.ris_user, d.bs_user, d.bs_ris);
    site.bs_ris_distance = d.bs_ris;
    site.ris_user_distance = d.ris_user;
    site.element_count = p.n;
    plan.sites.push_back(site);
    return plan;
}

ChannelSet build_channels(const ScenarioConfig& p, const PlacementPlan& plan, std::uint64_t seed) {
    const ArrayGeometry bs = ArrayGeometry::half_wavelength(p.m, p.wavelength);
    const ArrayGeometry user = ArrayGeometry::half_wavelength(p.k, p.wavelength);
    ChannelSet set;
    set.seed = seed;
    set.direct = make_link(p.links.direct, p.k, p.m, bs, user, plan.direct_aod, plan.direct_aoa,
                           budget_for(p, p.distances.bs_user, p.links.direct),
                           link_seed(seed, "direct"));
    set.model_tags.push_back("direct:" + std::string(to_string(p.links.direct)));
    for (std::size_t j = 0; j < plan.sites.size(); ++j) {
        const RisSite& site = plan.sites[j];
        const ArrayGeometry ris = ArrayGeometry::half_wavelength(site.element_count, p.wavelength);
        const std::string idx = std::to_string(j);
        Cascade c;
        c.g_br = make_link(p.links.bs_ris, site.element_count, p.m, bs, ris, site.aod_from_bs,
                           kRisArrivalAngle,
                           budget_for(p, site.bs_ris_distance, p.links.bs_ris),
                           link_seed(seed, "br" + idx));
        c.g_ru = make_link(p.links.ris_user, p.k, site.element_count, ris, user,
                           kRisDepartureAngle, site.aoa_at_user,
                           budget_for(p, site.ris_user_distance, p.links.ris_user),
                           link_seed(seed, "ru" + idx));
        set.cascades.push_back(std::move(c));
        set.model_tags.push_back("br" + idx + ":" + std::string(to_string(p.links.bs_ris)));
        set.model_tags.push_back("ru" + idx + ":" + std::string(to_string(p.links.ris_user)));
    }
    return set;
}

std::vector<RisConfig> alternating_phase_design(const ChannelSet& set, int rounds) {
    std::vector<RisConfig> configs;
    for (const Cascade& c : set.cascades) {
        if (is_zero(c.g_br) || is_zero(c.g_ru)) {
            configs.push_back(RisConfig::passive(static_cast<int>(c.g_br.rows())));
            continue;
        }
        const auto [tx, rx] = cascade_directions(c);
        configs.push_back(align_cascade(c, tx, rx, 0.0));
    }
    ComplexMatrix total = composite_channel(set, configs);
    for (int round = 0; round < rounds; ++round) {
        if (is_zero(total)) {
            break;
        }
        const SvdResult s = svd(total);
        const ComplexVector f = s.right_vectors.col(0);
        const ComplexVector u = s.left_vectors.col(0);
        for (std::size_t j = 0; j < set.cascades.size(); ++j) {
            const Cascade& c = set.cascades[j];
            if (is_zero(c.g_br) || is_zero(c.g_ru)) {
                continue;
            }
            const ComplexMatrix rest = total - cascade_channel(c, configs[j]);
            const Complex direct = u.dot(rest * f);
            const double phase = std::abs(direct) > 0.0 ? std::arg(direct) : 0.0;
            configs[j] = align_cascade(c, f, u, phase);
            total = rest + cascade_channel(c, configs[j]);
        }
    }
    return configs;
}

TrialOutcome evaluate_trial(const ScenarioConfig& p, std::uint64_t seed) {
    const PlacementPlan plan = scenario_plan(p);
    const ChannelSet set = build_channels(p, plan, seed);
    const ArrayGeometry bs = ArrayGeometry::half_wavelength(p.m, p.wavelength);
    const DesignContext ctx{p, plan, set, ArrayGeometry::half_wavelength(p.k, p.wavelength)};
    const int j_count = static_cast<int>(set.cascades.size());

    const bool active = p.ris_mode == RisMode::active && j_count > 0;
    NoiseModel noise{dbm_to_watts(p.user_noise_dbm), active ? dbm_to_watts(p.ris_noise_dbm) : 0.0};
    const double p_ris_each = active ? p.ris_power_fraction * p.power_sum_w / j_count : 0.0;
    const double p_tx = p.power_sum_w - p_ris_each * j_count;
    std::vector<double> rho(static_cast<std::size_t>(j_count), 1.0);

    std::vector<RisConfig> configs = p.transmit == TransmitDesign::null_space
                                         ? own_direction_design(ctx, bs)
                                         : best_phase_design(ctx, bs, p_tx, noise.user_noise);
    if (p.phase_bits > 0) {
        for (RisConfig& c : configs) {
            c = quantize_phases(c, p.phase_bits);
        }
    }

    std::vector<ComplexMatrix> ru_links;
    for (const Cascade& c : set.cascades) {
        ru_links.push_back(c.g_ru);
    }

    TrialOutcome out;
    out.transmit_power = p_tx;
    auto current = [&]() { return with_amplification(configs, rho); };

    LinkDesign design;
    bool have_design = false;
    if (active) {
        // Initial gains assume the whole transmit power reaches each RIS
        // along the passive composite's dominant direction.
        const ComplexMatrix passive = composite_channel(set, configs);
        LinkDesign guess;
        guess.precoder = is_zero(passive) ? dominant_right(set.cascades.front().g_br)
                                          : dominant_right(passive);
        guess.stream_powers = {p_tx};
        for (int j = 0; j < j_count; ++j) {
            rho[j] = solve_amplification(configs[j], incident_power(set.cascades[j], guess),
                                         noise.ris_noise, p_ris_each);
        }
        for (int round = 0; round < kAmplificationRounds; ++round) {
            const std::vector<RisConfig> cfg = current();
            const ComplexMatrix h = composite_channel(set, cfg);
            if (numerical_rank(h) == 0) {
                break;
            }
            design = make_design(ctx, h, noise_covariance(p.k, ru_links, cfg, noise), p_tx);
            have_design = true;
            for (int j = 0; j < j_count; ++j) {
                rho[j] = solve_amplification(configs[j],
                                             incident_power(set.cascades[j], design),
                                             noise.ris_noise, p_ris_each);
            }
        }
    }

    const std::vector<RisConfig> final_configs = current();
    out.composite = composite_channel(set, final_configs);
    out.noise_cov = noise_covariance(p.k, ru_links, final_configs, noise);
    out.effective_rank = numerical_rank(out.composite);
    out.amplification = rho;
    if (out.effective_rank == 0) {
        return out;
    }
    if (!have_design) {
        design = make_design(ctx, out.composite, out.noise_cov, p_tx);
    }
    const RateResult r = achievable_rate(out.composite, design, out.noise_cov);
    out.rate = r.rate;
    out.stream_count = design.stream_count();
    out.stream_powers = design.stream_powers;
    out.per_stream_snr_db = r.per_stream_snr_db;
    if (active) {
        for (int j = 0; j < j_count; ++j) {
            out.ris_power += active_power(final_configs[j],
                                          incident_power(set.cascades[j], design),
                                          noise.ris_noise);
        }
    }
    return out;
}

} // namespace risdof
