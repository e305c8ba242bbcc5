// SPDX-License-Identifier: Apache-2.0
//
// Distributed RIS placement. Sites are spread over angles whose steering
// vectors are mutually orthogonal on the BS array (M elements) and on the
// user array (K elements), so every rank-one cascade contributes one new
// spatial direction to the composite channel.

#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "risdof/channel.hpp"
#include "risdof/numerics.hpp"
#include "risdof/ris.hpp"

namespace risdof {

struct RisSite {
    double aod_from_bs = std::numbers::pi / 2; ///< radians, departure angle at the BS array
    double aoa_at_user = std::numbers::pi / 2; ///< radians, arrival angle at the user array
    double bs_ris_distance = 82.0;             ///< meters
    double ris_user_distance = 28.0;           ///< meters
    int element_count = 1;
    bool aligned_with_direct = false; ///< shares the direct path's user-side direction
};

struct PlacementPlan {
    std::vector<RisSite> sites;
    int target_rank = 1;
    int direct_rank = 0;
    bool alignment_with_direct = false;
    double direct_aod = std::numbers::pi / 2;
    double direct_aoa = std::numbers::pi / 2;
};

/// theta_j = arccos(cos(theta_i) + lambda * l / (M d)) for an M-element array.
/// Throws InfeasibleError when the argument leaves [-1, 1] and
/// std::invalid_argument when l is a multiple of M.
double orthogonal_angle(double theta_i, const ArrayGeometry& geometry, int l);

struct PlacementRequest {
    int target_rank = 1; ///< K
    int direct_rank = 0; ///< 0 (blocked) or 1 (LoS)
    ArrayGeometry bs = ArrayGeometry::half_wavelength(64);
    ArrayGeometry user = ArrayGeometry::half_wavelength(1);
    double base_bs_angle = std::numbers::pi / 2;   ///< direct path departure / chain origin
    double base_user_angle = std::numbers::pi / 2; ///< direct path arrival / chain origin
    std::optional<int> site_count;                 ///< defaults to target_rank - direct_rank
    int total_elements = 256;                      ///< split evenly across sites
    double bs_ris_distance = 82.0;
    double ris_user_distance = 28.0;
};

/// Greedy orthogonal angle chains with offsets l = +1, -1, +2, -2, ...
/// When more sites are requested than free user-side directions exist, the
/// surplus sites reuse the direct path's direction and are flagged aligned.
PlacementPlan plan_distributed(const PlacementRequest& request);

/// Cosine of the smallest principal angle between the user-side column
/// spaces of h and cascade_ru (both K rows). 1 = aligned, 0 = orthogonal;
/// 0 when either matrix is zero.
double alignment_check(const ComplexMatrix& h, const ComplexMatrix& cascade_ru);

/// Links used to turn a plan into concrete all-LoS channels.
struct PlanLinks {
    ArrayGeometry bs = ArrayGeometry::half_wavelength(64);
    ArrayGeometry user = ArrayGeometry::half_wavelength(4);
    double wavelength = kDefaultWavelength; ///< RIS element spacing is wavelength / 2
    double bs_user_distance = 100.0;
    double reference_loss_db = kDefaultReferenceLossDb;
    double path_loss_exponent = kLosPathLossExponent;
    double ris_arrival_angle = std::numbers::pi / 3;       ///< at every RIS, from the BS
    double ris_departure_angle = 2 * std::numbers::pi / 3; ///< at every RIS, toward the user
};

/// All-LoS channel set: LoS direct (or blocked when direct_rank == 0) plus
/// one LoS-LoS cascade per site.
ChannelSet realize_plan(const PlacementPlan& plan, const PlanLinks& links);

/// Phase-aligned passive configuration for every site, using the site's own
/// BS and user directions.
std::vector<RisConfig> align_plan(const PlacementPlan& plan, const ChannelSet& set,
                                  const PlanLinks& links);

struct PlanEvaluation {
    int rank = 0;
    double condition_number = 0.0; ///< over the first min(K, J + direct_rank) singular values
    ComplexMatrix composite;
};

PlanEvaluation evaluate_plan(const PlacementPlan& plan, const PlanLinks& links);

/// Structured-text site report: angles in degrees, distances, element counts,
/// achieved rank and condition number.
std::string format_site_report(const PlacementPlan& plan, const PlanEvaluation& evaluation);

} // namespace risdof
