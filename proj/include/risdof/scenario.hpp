// SPDX-License-Identifier: Apache-2.0
//
// Experiment descriptions. An experiment is a list of scenarios sharing a
// sweep axis; each scenario names the baseline it is compared against.
// Scenario files are JSON documents with nested sections, see README.md.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "risdof/beamforming.hpp"
#include "risdof/channel.hpp"

namespace risdof {

enum class RisMode { passive, active };
enum class TransmitDesign { eigenmode, mrt, null_space };
enum class PlacementMode { geometric, planned };

/// Sweep axes understood by the harness.
enum class SweepAxis { none, n, m, j, ris_noise_dbm, user_noise_dbm };

std::string_view to_string(RisMode mode);
std::string_view to_string(TransmitDesign design);
std::string_view to_string(PlacementMode mode);
std::string_view to_string(SweepAxis axis);
std::string_view to_string(PowerPolicy policy);

struct Distances {
    double bs_ris = 82.0;
    double ris_user = 28.0;
    double bs_user = 100.0;
};

struct LinkModels {
    LinkModel direct = LinkModel::los;
    LinkModel bs_ris = LinkModel::los;
    LinkModel ris_user = LinkModel::los;
};

struct PathLossModel {
    double reference_loss_db = kDefaultReferenceLossDb;
    double los_exponent = kLosPathLossExponent;
    double rayleigh_exponent = kRayleighPathLossExponent;

    double exponent_for(LinkModel model) const {
        return model == LinkModel::rayleigh ? rayleigh_exponent : los_exponent;
    }
};

struct Sweep {
    SweepAxis axis = SweepAxis::none;
    std::vector<double> values{0.0};
};

struct ScenarioConfig {
    std::string id = "scenario";
    std::string baseline; ///< id of the scenario this one is compared with; empty = itself

    int m = 64;   ///< BS antennas
    int n = 1024; ///< RIS elements in total
    int k = 4;    ///< user antennas
    int j = 1;    ///< number of RISs, 0 = no RIS

    Distances distances;
    LinkModels links;
    PathLossModel path_loss;
    double wavelength = kDefaultWavelength;

    double user_noise_dbm = -70.0;
    double ris_noise_dbm = -90.0;

    double power_sum_w = 1.0;        ///< P_tx + sum of active RIS powers
    double ris_power_fraction = 0.5; ///< share of power_sum given to active RISs
    RisMode ris_mode = RisMode::passive;
    int phase_bits = 0; ///< 0 = continuous phases

    TransmitDesign transmit = TransmitDesign::eigenmode;
    PowerPolicy power_policy = PowerPolicy::water_filling;
    PlacementMode placement = PlacementMode::geometric;

    Sweep sweep;
    int trials = 1;
    std::uint64_t seed = 1;

    const std::string& baseline_id() const { return baseline.empty() ? id : baseline; }
    /// Copy with one sweep value applied to its axis.
    ScenarioConfig at_sweep_value(double value) const;
    /// Short label describing the design choices, e.g. "eigenmode+water_filling+passive".
    std::string design_labels() const;
    /// True when no link is random, so one trial suffices.
    bool deterministic() const;
};

struct ExperimentConfig {
    std::string name = "experiment";
    std::vector<ScenarioConfig> scenarios;
};

/// Throws ConfigError describing the first problem found.
void validate(const ScenarioConfig& config);
void validate(const ExperimentConfig& experiment);

/// Parse a scenario file. Accepts {"name", "defaults", "scenarios": [...]}
/// or a single scenario object. Unknown keys are rejected.
ExperimentConfig parse_experiment(std::string_view json_text);
ExperimentConfig load_experiment(const std::string& path);

/// Canonical JSON; parse_experiment(experiment_to_json(e)) == e.
std::string experiment_to_json(const ExperimentConfig& experiment, int indent = 2);
std::string scenario_to_json(const ScenarioConfig& scenario);

/// 64-bit fingerprint of the canonical scenario description (seed included).
std::uint64_t fingerprint(const ScenarioConfig& scenario);

std::vector<std::string> preset_names();
bool is_preset(std::string_view name);
/// Built-in reproduction experiments: fig4, fig5, fig6a, fig6b.
ExperimentConfig preset(std::string_view name);

/// Assumed model values (path loss, wavelength, power split), as key = value lines.
std::string declared_defaults(const ExperimentConfig& experiment);

} // namespace risdof
