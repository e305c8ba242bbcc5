// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo sweeps over scenarios, summaries against baselines, and the
// CSV output contract.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "risdof/scenario.hpp"

namespace risdof {

struct SweepRecord {
    std::string scenario_id;
    double sweep_value = 0.0;
    int trial_index = 0;
    double rate = 0.0;
    int effective_rank = 0;
    std::uint64_t seed = 0; ///< trial seed the channels were drawn from
    std::string design_labels;
};

/// trials x |sweep values| records ordered by (sweep value index, trial).
/// Work units run on up to `workers` threads; output does not depend on it.
std::vector<SweepRecord> run_scenario(const ScenarioConfig& config, int workers = 1);

/// All scenarios of an experiment, concatenated in declaration order.
std::vector<SweepRecord> run_experiment(const ExperimentConfig& experiment, int workers = 1);

struct SummaryRow {
    std::string scenario_id;
    double sweep_value = 0.0;
    double mean_rate = 0.0;
    double ratio_vs_baseline = 0.0; ///< +inf when the baseline mean is 0
    int trials = 0;
    double standard_error = 0.0;
};

/// Per-sweep-value means of `scenario_id` and their ratio to `baseline_id`.
/// Throws ConfigError when the two do not share the same sweep values.
std::vector<SummaryRow> summarize(const std::vector<SweepRecord>& records,
                                  const std::string& scenario_id, const std::string& baseline_id);

/// Summary of every scenario against its declared baseline.
std::vector<SummaryRow> summarize(const std::vector<SweepRecord>& records,
                                  const ExperimentConfig& experiment);

/// Header: scenario_id,sweep_value,trial_index,rate,effective_rank,seed,design_labels
void write_records_csv(std::ostream& out, const std::vector<SweepRecord>& records);
/// Header: scenario_id,sweep_value,mean_rate,ratio_vs_baseline
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

std::string records_csv(const std::vector<SweepRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// %.12g, "inf" for infinities.
std::string format_float(double value);

/// Writes to a temporary sibling and renames it into place. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);

/// Number of worker threads to use when the caller asks for 0 (auto).
int default_workers();

} // namespace risdof
