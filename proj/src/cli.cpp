// SPDX-License-Identifier: Apache-2.0

#include "risdof/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "risdof/errors.hpp"
#include "risdof/harness.hpp"
#include "risdof/placement.hpp"
#include "risdof/random.hpp"
#include "risdof/simulation.hpp"

namespace risdof {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
    std::string source;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int workers = 0;
};

ExperimentConfig resolve_source(const CommonOptions& o) {
    ExperimentConfig e;
    if (is_preset(o.source)) {
        e = preset(o.source);
    } else if (fs::exists(o.source)) {
        e = load_experiment(o.source);
    } else {
        throw ConfigError("'" + o.source + "' is neither a preset (" + [] {
            std::string names;
            for (const std::string& p : preset_names()) {
                names += (names.empty() ? "" : ", ") + p;
            }
            return names;
        }() + ") nor a scenario file");
    }
    if (o.seed_given) {
        for (ScenarioConfig& s : e.scenarios) {
            s.seed = o.seed;
        }
    }
    validate(e);
    return e;
}

struct OutputPaths {
    fs::path data;
    fs::path summary;
    fs::path meta;
};

OutputPaths output_paths(const CommonOptions& o, const std::string& name) {
    fs::path data;
    if (!o.out.empty()) {
        data = o.out;
    } else {
        const char* dir = std::getenv(kOutputDirEnv);
        data = fs::path(dir && *dir ? dir : ".") / (name + ".csv");
    }
    const fs::path stem = data.parent_path() / data.stem();
    OutputPaths p{data, stem.string() + "_summary.csv", stem.string() + ".meta.json"};
    const fs::path parent = data.parent_path().empty() ? fs::path(".") : data.parent_path();
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (!fs::is_directory(parent)) {
        throw IoError("output directory '" + parent.string() + "' cannot be created");
    }
    return p;
}

std::string metadata_json(const ExperimentConfig& e) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(experiment_to_json(e, 2));
    nlohmann::ordered_json meta;
    nlohmann::ordered_json prints = nlohmann::ordered_json::object();
    nlohmann::ordered_json seeds = nlohmann::ordered_json::object();
    for (const ScenarioConfig& s : e.scenarios) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fingerprint(s)));
        prints[s.id] = buf;
        seeds[s.id] = s.seed;
    }
    meta["fingerprints"] = prints;
    meta["seeds"] = seeds;
    nlohmann::ordered_json defaults = nlohmann::ordered_json::array();
    std::istringstream lines(declared_defaults(e));
    for (std::string line; std::getline(lines, line);) {
        defaults.push_back(line);
    }
    meta["declared_defaults"] = defaults;
    meta["units"] = {{"rate", "bits/s/Hz"}, {"noise", "dBm"}, {"power", "W"}, {"distance", "m"}};
    doc["metadata"] = meta;
    return doc.dump(2) + "\n";
}

int run_and_write(const ExperimentConfig& e, const CommonOptions& o, std::ostream& out,
                  std::ostream& err) {
    const OutputPaths paths = output_paths(o, e.name);
    const std::vector<SweepRecord> records = run_experiment(e, o.workers);
    const std::vector<SummaryRow> summary = summarize(records, e);
    write_file_atomic(paths.data.string(), records_csv(records));
    write_file_atomic(paths.summary.string(), summary_csv(summary));
    write_file_atomic(paths.meta.string(), metadata_json(e));
    write_summary_csv(out, summary);
    err << "wrote " << paths.data.string() << ", " << paths.summary.string() << ", "
        << paths.meta.string() << "\n";
    return kExitOk;
}

int cmd_rank(const CommonOptions& o, int trial, std::ostream& out) {
    const ExperimentConfig e = resolve_source(o);
    out << "scenario_id,sweep_value,trial_index,effective_rank,condition_number\n";
    for (const ScenarioConfig& s : e.scenarios) {
        for (std::size_t v = 0; v < s.sweep.values.size(); ++v) {
            const ScenarioConfig point = s.at_sweep_value(s.sweep.values[v]);
            const ChannelSet set = build_channels(point, scenario_plan(point),
                                                  trial_seed(s.seed, v, static_cast<std::uint64_t>(trial)));
            const std::vector<RisConfig> configs = alternating_phase_design(set);
            const ComplexMatrix h = composite_channel(set, configs);
            const int rank = numerical_rank(h);
            out << s.id << ',' << format_float(s.sweep.values[v]) << ',' << trial << ',' << rank
                << ',' << format_float(rank > 0 ? condition_number(h, rank) : 0.0) << '\n';
        }
    }
    return kExitOk;
}

int cmd_rate(const CommonOptions& o, int trial, std::ostream& out) {
    const ExperimentConfig e = resolve_source(o);
    out << "scenario_id,sweep_value,trial_index,rate,effective_rank,streams,per_stream_snr_db\n";
    for (const ScenarioConfig& s : e.scenarios) {
        for (std::size_t v = 0; v < s.sweep.values.size(); ++v) {
            const TrialOutcome t =
                evaluate_trial(s.at_sweep_value(s.sweep.values[v]),
                               trial_seed(s.seed, v, static_cast<std::uint64_t>(trial)));
            std::string snrs;
            for (double x : t.per_stream_snr_db) {
                snrs += (snrs.empty() ? "" : ";") + format_float(x);
            }
            out << s.id << ',' << format_float(s.sweep.values[v]) << ',' << trial << ','
                << format_float(t.rate) << ',' << t.effective_rank << ',' << t.stream_count << ','
                << snrs << '\n';
        }
    }
    return kExitOk;
}

struct PlanOptions {
    int k = 4;
    int m = 64;
    int n = 256;
    int sites = 0;
    std::string direct = "los";
    double base_bs_deg = 90.0;
    double base_user_deg = 90.0;
    std::string out;
};

int cmd_plan(const PlanOptions& o, std::ostream& out, std::ostream& err) {
    const LinkModel direct = parse_link_model(o.direct);
    if (direct == LinkModel::rayleigh) {
        throw ConfigError("plan: the direct link must be los or blocked");
    }
    constexpr double rad = std::numbers::pi / 180.0;
    if (o.base_bs_deg < 0 || o.base_bs_deg > 180 || o.base_user_deg < 0 || o.base_user_deg > 180) {
        throw ConfigError("plan: base angles must lie in [0, 180] degrees");
    }
    PlacementRequest req;
    req.target_rank = o.k;
    req.direct_rank = direct == LinkModel::los ? 1 : 0;
    req.bs = ArrayGeometry::half_wavelength(o.m);
    req.user = ArrayGeometry::half_wavelength(o.k);
    req.base_bs_angle = o.base_bs_deg * rad;
    req.base_user_angle = o.base_user_deg * rad;
    if (o.sites > 0) {
        req.site_count = o.sites;
    }
    req.total_elements = o.n;
    const PlacementPlan plan = plan_distributed(req);
    PlanLinks links;
    links.bs = req.bs;
    links.user = req.user;
    const std::string report = format_site_report(plan, evaluate_plan(plan, links));
    if (o.out.empty()) {
        out << report;
    } else {
        write_file_atomic(o.out, report);
        err << "wrote " << o.out << "\n";
    }
    return kExitOk;
}

void add_common(CLI::App* cmd, CommonOptions& o, bool source_required = true) {
    cmd->add_option("source", o.source, "Preset name (fig4, fig5, fig6a, fig6b) or scenario file")
        ->required(source_required);
    cmd->add_option("--seed", o.seed, "Override the seed of every scenario")
        ->each([&o](const std::string&) { o.seed_given = true; });
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"RIS degrees-of-freedom simulator", "risdof"};
    app.require_subcommand(1);

    CommonOptions common;
    int trial = 0;
    PlanOptions plan;

    CLI::App* rank = app.add_subcommand("rank", "Composite-channel rank of one trial per sweep value");
    add_common(rank, common);
    rank->add_option("--trial", trial, "Trial index")->check(CLI::NonNegativeNumber);

    CLI::App* rate = app.add_subcommand("rate", "Achievable rate of one trial per sweep value");
    add_common(rate, common);
    rate->add_option("--trial", trial, "Trial index")->check(CLI::NonNegativeNumber);

    CLI::App* sweep = app.add_subcommand("sweep", "Run every trial and write CSV outputs");
    add_common(sweep, common);
    sweep->add_option("--workers", common.workers, "Worker threads, 0 = all cores")
        ->check(CLI::NonNegativeNumber);
    sweep->add_option("--out", common.out, "Records CSV path");

    CLI::App* reproduce = app.add_subcommand("reproduce", "Run a built-in figure preset");
    reproduce->add_option("preset", common.source, "fig4, fig5, fig6a or fig6b")->required();
    reproduce->add_option("--seed", common.seed, "Override the seed of every scenario")
        ->each([&common](const std::string&) { common.seed_given = true; });
    reproduce->add_option("--workers", common.workers, "Worker threads, 0 = all cores")
        ->check(CLI::NonNegativeNumber);
    reproduce->add_option("--out", common.out, "Records CSV path");

    CLI::App* plan_cmd = app.add_subcommand("plan", "Distributed RIS placement report");
    plan_cmd->add_option("--k", plan.k, "User antennas (target rank)")->check(CLI::PositiveNumber);
    plan_cmd->add_option("--m", plan.m, "BS antennas")->check(CLI::PositiveNumber);
    plan_cmd->add_option("--n", plan.n, "Total RIS elements")->check(CLI::PositiveNumber);
    plan_cmd->add_option("--sites", plan.sites, "Number of RISs, default K - direct rank")
        ->check(CLI::NonNegativeNumber);
    plan_cmd->add_option("--direct", plan.direct, "Direct link: los or blocked");
    plan_cmd->add_option("--base-bs-deg", plan.base_bs_deg, "Chain origin at the BS, degrees");
    plan_cmd->add_option("--base-user-deg", plan.base_user_deg, "Chain origin at the user, degrees");
    plan_cmd->add_option("--out", plan.out, "Report path, default stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (*rank) {
            return cmd_rank(common, trial, out);
        }
        if (*rate) {
            return cmd_rate(common, trial, out);
        }
        if (*sweep) {
            return run_and_write(resolve_source(common), common, out, err);
        }
        if (*reproduce) {
            if (!is_preset(common.source)) {
                throw ConfigError("unknown preset '" + common.source +
                                  "' (expected fig4, fig5, fig6a, fig6b)");
            }
            const ExperimentConfig e = resolve_source(common);
            err << "declared defaults (assumed model values):\n";
            std::istringstream lines(declared_defaults(e));
            for (std::string line; std::getline(lines, line);) {
                err << "  " << line << "\n";
            }
            return run_and_write(e, common, out, err);
        }
        if (*plan_cmd) {
            return cmd_plan(plan, out, err);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}

} // namespace risdof
