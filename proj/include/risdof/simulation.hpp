// SPDX-License-Identifier: Apache-2.0
//
// One Monte Carlo work unit: build the channels of a scenario point, design
// the RIS phases and the transmit/receive processing, and evaluate the rate.

#pragma once

#include <cstdint>
#include <vector>

#include "risdof/beamforming.hpp"
#include "risdof/channel.hpp"
#include "risdof/placement.hpp"
#include "risdof/rate.hpp"
#include "risdof/scenario.hpp"

namespace risdof {

/// Site geometry for a scenario point with the sweep value already applied.
/// Geometric placement puts one RIS at the triangle given by the distances;
/// planned placement spreads j sites over orthogonal angle chains.
PlacementPlan scenario_plan(const ScenarioConfig& point);

/// Channel realization for one trial. Random links draw from
/// link_seed(seed, "direct" | "br<j>" | "ru<j>").
ChannelSet build_channels(const ScenarioConfig& point, const PlacementPlan& plan,
                          std::uint64_t seed);

struct TrialOutcome {
    double rate = 0.0;
    int effective_rank = 0; ///< numerical rank of the composite channel
    int stream_count = 0;
    std::vector<double> stream_powers;
    std::vector<double> per_stream_snr_db;
    std::vector<double> amplification; ///< rho per RIS
    double transmit_power = 0.0;
    double ris_power = 0.0; ///< total radiated by active RISs
    ComplexMatrix composite;
    ComplexMatrix noise_cov;
};

TrialOutcome evaluate_trial(const ScenarioConfig& point, std::uint64_t seed);

/// Phase design that maximizes |u^H C f| over the dominant transmit/receive
/// pair by alternating between (u, f) and each RIS's phases.
std::vector<RisConfig> alternating_phase_design(const ChannelSet& set, int rounds = 4);

} // namespace risdof
