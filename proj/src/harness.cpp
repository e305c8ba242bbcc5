// SPDX-License-Identifier: Apache-2.0

#include "risdof/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "risdof/errors.hpp"
#include "risdof/random.hpp"
#include "risdof/simulation.hpp"

namespace risdof {

namespace {

// Runs fn(i) for i in [0, count) on up to `workers` threads. The first
// exception (lowest index) is rethrown after every thread has joined.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn fn) {
    const std::size_t threads =
        std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = count;
    std::exception_ptr error;
    auto work = [&]() {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back(work);
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace

int default_workers() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<SweepRecord> run_scenario(const ScenarioConfig& config, int workers) {
    validate(config);
    const std::size_t values = config.sweep.values.size();
    const std::size_t trials = static_cast<std::size_t>(config.trials);
    std::vector<ScenarioConfig> points;
    for (double v : config.sweep.values) {
        points.push_back(config.at_sweep_value(v));
    }
    std::vector<SweepRecord> records(values * trials);
    parallel_for(records.size(), workers == 0 ? default_workers() : workers, [&](std::size_t i) {
        const std::size_t v = i / trials;
        const std::size_t t = i % trials;
        const std::uint64_t seed = trial_seed(config.seed, v, t);
        const TrialOutcome outcome = evaluate_trial(points[v], seed);
        SweepRecord& r = records[i];
        r.scenario_id = config.id;
        r.sweep_value = config.sweep.values[v];
        r.trial_index = static_cast<int>(t);
        r.rate = outcome.rate;
        r.effective_rank = outcome.effective_rank;
        r.seed = seed;
        r.design_labels = points[v].design_labels();
    });
    return records;
}

std::vector<SweepRecord> run_experiment(const ExperimentConfig& experiment, int workers) {
    validate(experiment);
    std::vector<SweepRecord> all;
    for (const ScenarioConfig& s : experiment.scenarios) {
        std::vector<SweepRecord> part = run_scenario(s, workers);
        all.insert(all.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return all;
}

namespace {

struct Aggregate {
    std::vector<double> rates; // ordered by trial index
};

// sweep value -> rates, with rates ordered by trial index so the sum does not
// depend on record order.
std::map<double, Aggregate> group(const std::vector<SweepRecord>& records, const std::string& id) {
    std::map<double, std::map<int, double>> by_trial;
    for (const SweepRecord& r : records) {
        if (r.scenario_id == id) {
            by_trial[r.sweep_value][r.trial_index] = r.rate;
        }
    }
    std::map<double, Aggregate> out;
    for (const auto& [value, trials] : by_trial) {
        for (const auto& [t, rate] : trials) {
            out[value].rates.push_back(rate);
        }
    }
    return out;
}

double mean(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    return sum / static_cast<double>(xs.size());
}

double standard_error(const std::vector<double>& xs, double mu) {
    if (xs.size() < 2) {
        return 0.0;
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mu) * (x - mu);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
}

} // namespace

std::vector<SummaryRow> summarize(const std::vector<SweepRecord>& records,
                                  const std::string& scenario_id, const std::string& baseline_id) {
    const std::map<double, Aggregate> own = group(records, scenario_id);
    const std::map<double, Aggregate> base = group(records, baseline_id);
    if (own.empty()) {
        throw ConfigError("summarize: no records for scenario '" + scenario_id + "'");
    }
    if (own.size() != base.size()) {
        throw ConfigError("summarize: scenario '" + scenario_id + "' and baseline '" +
                          baseline_id + "' have different sweep values");
    }
    std::vector<SummaryRow> rows;
    for (const auto& [value, agg] : own) {
        const auto b = base.find(value);
        if (b == base.end()) {
            throw ConfigError("summarize: baseline '" + baseline_id + "' has no sweep value " +
                              format_float(value));
        }
        SummaryRow row;
        row.scenario_id = scenario_id;
        row.sweep_value = value;
        row.mean_rate = mean(agg.rates);
        row.trials = static_cast<int>(agg.rates.size());
        row.standard_error = standard_error(agg.rates, row.mean_rate);
        const double base_mean = mean(b->second.rates);
        row.ratio_vs_baseline = base_mean == 0.0 ? std::numeric_limits<double>::infinity()
                                                 : row.mean_rate / base_mean;
        rows.push_back(row);
    }
    return rows;
}

std::vector<SummaryRow> summarize(const std::vector<SweepRecord>& records,
                                  const ExperimentConfig& experiment) {
    std::vector<SummaryRow> rows;
    for (const ScenarioConfig& s : experiment.scenarios) {
        std::vector<SummaryRow> part = summarize(records, s.id, s.baseline_id());
        // keep the declared sweep order rather than numeric order
        std::vector<SummaryRow> ordered;
        for (double v : s.sweep.values) {
            for (const SummaryRow& r : part) {
                if (r.sweep_value == v) {
                    ordered.push_back(r);
                }
            }
        }
        rows.insert(rows.end(), ordered.begin(), ordered.end());
    }
    return rows;
}

std::string format_float(double value) {
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_records_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    out << "scenario_id,sweep_value,trial_index,rate,effective_rank,seed,design_labels\n";
    for (const SweepRecord& r : records) {
        out << r.scenario_id << ',' << format_float(r.sweep_value) << ',' << r.trial_index << ','
            << format_float(r.rate) << ',' << r.effective_rank << ',' << r.seed << ','
            << r.design_labels << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "scenario_id,sweep_value,mean_rate,ratio_vs_baseline\n";
    for (const SummaryRow& r : rows) {
        out << r.scenario_id << ',' << format_float(r.sweep_value) << ','
            << format_float(r.mean_rate) << ',' << format_float(r.ratio_vs_baseline) << '\n';
    }
}

std::string records_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    write_records_csv(os, records);
    return os.str();
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream os;
    write_summary_csv(os, rows);
    return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw IoError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path + "'");
    }
}

} // namespace risdof
