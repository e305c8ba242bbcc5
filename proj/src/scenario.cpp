// SPDX-License-Identifier: Apache-2.0

#include "risdof/scenario.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "risdof/errors.hpp"
#include "risdof/random.hpp"

namespace risdof {

using Json = nlohmann::ordered_json;

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<Enum, N>& options, const char* what) {
    for (Enum e : options) {
        if (to_string(e) == text) {
            return e;
        }
    }
    std::string msg = std::string("unknown ") + what + " '" + std::string(text) + "' (expected";
    for (Enum e : options) {
        msg += " " + std::string(to_string(e));
    }
    throw ConfigError(msg + ")");
}

constexpr std::array kRisModes{RisMode::passive, RisMode::active};
constexpr std::array kDesigns{TransmitDesign::eigenmode, TransmitDesign::mrt,
                              TransmitDesign::null_space};
constexpr std::array kPlacements{PlacementMode::geometric, PlacementMode::planned};
constexpr std::array kAxes{SweepAxis::none,          SweepAxis::n,
                           SweepAxis::m,             SweepAxis::j,
                           SweepAxis::ris_noise_dbm, SweepAxis::user_noise_dbm};
constexpr std::array kPolicies{PowerPolicy::water_filling, PowerPolicy::equal};

void reject_unknown(const Json& object, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    if (!object.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    for (const auto& item : object.items()) {
        bool known = false;
        for (const char* key : allowed) {
            known = known || item.key() == key;
        }
        if (!known) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <typename T>
void read(const Json& object, const char* key, T& target, const std::string& where) {
    if (!object.contains(key)) {
        return;
    }
    try {
        target = object.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("bad value for '" + std::string(key) + "' in " + where);
    }
}

template <typename Enum, std::size_t N>
void read_enum(const Json& object, const char* key, Enum& target,
               const std::array<Enum, N>& options, const std::string& where) {
    std::string text;
    read(object, key, text, where);
    if (!text.empty()) {
        target = parse_enum(text, options, key);
    }
}

void read_link(const Json& object, const char* key, LinkModel& target, const std::string& where) {
    std::string text;
    read(object, key, text, where);
    if (!text.empty()) {
        target = parse_link_model(text);
    }
}

const Json& section(const Json& object, const char* key) {
    static const Json empty = Json::object();
    return object.contains(key) ? object.at(key) : empty;
}

ScenarioConfig scenario_from_json(const Json& s) {
    ScenarioConfig c;
    const std::string where = "scenario";
    reject_unknown(s,
                   {"id", "baseline", "geometry", "links", "noise", "power", "design", "sweep",
                    "trials", "seed"},
                   where);
    read(s, "id", c.id, where);
    read(s, "baseline", c.baseline, where);
    read(s, "trials", c.trials, where);
    read(s, "seed", c.seed, where);

    const Json& g = section(s, "geometry");
    reject_unknown(g, {"m", "n", "k", "j", "wavelength", "placement", "distances"}, "geometry");
    read(g, "m", c.m, "geometry");
    read(g, "n", c.n, "geometry");
    read(g, "k", c.k, "geometry");
    read(g, "j", c.j, "geometry");
    read(g, "wavelength", c.wavelength, "geometry");
    read_enum(g, "placement", c.placement, kPlacements, "geometry");
    const Json& d = section(g, "distances");
    reject_unknown(d, {"bs_ris", "ris_user", "bs_user"}, "geometry.distances");
    read(d, "bs_ris", c.distances.bs_ris, "geometry.distances");
    read(d, "ris_user", c.distances.ris_user, "geometry.distances");
    read(d, "bs_user", c.distances.bs_user, "geometry.distances");

    const Json& l = section(s, "links");
    reject_unknown(l, {"direct", "bs_ris", "ris_user", "path_loss"}, "links");
    read_link(l, "direct", c.links.direct, "links");
    read_link(l, "bs_ris", c.links.bs_ris, "links");
    read_link(l, "ris_user", c.links.ris_user, "links");
    const Json& pl = section(l, "path_loss");
    reject_unknown(pl, {"reference_loss_db", "los_exponent", "rayleigh_exponent"},
                   "links.path_loss");
    read(pl, "reference_loss_db", c.path_loss.reference_loss_db, "links.path_loss");
    read(pl, "los_exponent", c.path_loss.los_exponent, "links.path_loss");
    read(pl, "rayleigh_exponent", c.path_loss.rayleigh_exponent, "links.path_loss");

    const Json& nz = section(s, "noise");
    reject_unknown(nz, {"user_dbm", "ris_dbm"}, "noise");
    read(nz, "user_dbm", c.user_noise_dbm, "noise");
    read(nz, "ris_dbm", c.ris_noise_dbm, "noise");

    const Json& p = section(s, "power");
    reject_unknown(p, {"sum_w", "ris_fraction", "ris_mode", "policy"}, "power");
    read(p, "sum_w", c.power_sum_w, "power");
    read(p, "ris_fraction", c.ris_power_fraction, "power");
    read_enum(p, "ris_mode", c.ris_mode, kRisModes, "power");
    read_enum(p, "policy", c.power_policy, kPolicies, "power");

    const Json& ds = section(s, "design");
    reject_unknown(ds, {"transmit", "phase_bits"}, "design");
    read_enum(ds, "transmit", c.transmit, kDesigns, "design");
    read(ds, "phase_bits", c.phase_bits, "design");

    const Json& sw = section(s, "sweep");
    reject_unknown(sw, {"axis", "values"}, "sweep");
    read_enum(sw, "axis", c.sweep.axis, kAxes, "sweep");
    read(sw, "values", c.sweep.values, "sweep");
    return c;
}

Json scenario_json(const ScenarioConfig& c) {
    Json s;
    s["id"] = c.id;
    s["baseline"] = c.baseline;
    s["geometry"] = {{"m", c.m},
                     {"n", c.n},
                     {"k", c.k},
                     {"j", c.j},
                     {"wavelength", c.wavelength},
                     {"placement", to_string(c.placement)},
                     {"distances",
                      {{"bs_ris", c.distances.bs_ris},
                       {"ris_user", c.distances.ris_user},
                       {"bs_user", c.distances.bs_user}}}};
    s["links"] = {{"direct", to_string(c.links.direct)},
                  {"bs_ris", to_string(c.links.bs_ris)},
                  {"ris_user", to_string(c.links.ris_user)},
                  {"path_loss",
                   {{"reference_loss_db", c.path_loss.reference_loss_db},
                    {"los_exponent", c.path_loss.los_exponent},
                    {"rayleigh_exponent", c.path_loss.rayleigh_exponent}}}};
    s["noise"] = {{"user_dbm", c.user_noise_dbm}, {"ris_dbm", c.ris_noise_dbm}};
    s["power"] = {{"sum_w", c.power_sum_w},
                  {"ris_fraction", c.ris_power_fraction},
                  {"ris_mode", to_string(c.ris_mode)},
                  {"policy", to_string(c.power_policy)}};
    s["design"] = {{"transmit", to_string(c.transmit)}, {"phase_bits", c.phase_bits}};
    s["sweep"] = {{"axis", to_string(c.sweep.axis)}, {"values", c.sweep.values}};
    s["trials"] = c.trials;
    s["seed"] = c.seed;
    return s;
}

void check_integral(double value, const char* axis) {
    if (value != std::round(value)) {
        throw ConfigError(std::string("sweep values on axis '") + axis + "' must be integers");
    }
}

} // namespace

std::string_view to_string(RisMode mode) {
    return mode == RisMode::active ? "active" : "passive";
}

std::string_view to_string(TransmitDesign design) {
    switch (design) {
    case TransmitDesign::eigenmode:
        return "eigenmode";
    case TransmitDesign::mrt:
        return "mrt";
    case TransmitDesign::null_space:
        return "null_space";
    }
    return "unknown";
}

std::string_view to_string(PlacementMode mode) {
    return mode == PlacementMode::planned ? "planned" : "geometric";
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::none:
        return "none";
    case SweepAxis::n:
        return "n";
    case SweepAxis::m:
        return "m";
    case SweepAxis::j:
        return "j";
    case SweepAxis::ris_noise_dbm:
        return "ris_noise_dbm";
    case SweepAxis::user_noise_dbm:
        return "user_noise_dbm";
    }
    return "unknown";
}

std::string_view to_string(PowerPolicy policy) {
    return policy == PowerPolicy::equal ? "equal" : "water_filling";
}

ScenarioConfig ScenarioConfig::at_sweep_value(double value) const {
    ScenarioConfig c = *this;
    switch (sweep.axis) {
    case SweepAxis::none:
        break;
    case SweepAxis::n:
        c.n = static_cast<int>(value);
        break;
    case SweepAxis::m:
        c.m = static_cast<int>(value);
        break;
    case SweepAxis::j:
        c.j = static_cast<int>(value);
        break;
    case SweepAxis::ris_noise_dbm:
        c.ris_noise_dbm = value;
        break;
    case SweepAxis::user_noise_dbm:
        c.user_noise_dbm = value;
        break;
    }
    return c;
}

std::string ScenarioConfig::design_labels() const {
    if (j == 0) {
        return std::string(to_string(transmit)) + "+" + std::string(to_string(power_policy)) +
               "+no_ris";
    }
    std::string labels = std::string(to_string(transmit)) + "+" +
                         std::string(to_string(power_policy)) + "+phase_align+" +
                         std::string(to_string(ris_mode));
    if (transmit == TransmitDesign::null_space) {
        labels += "+zero_forcing";
    }
    if (phase_bits > 0) {
        labels += "+q" + std::to_string(phase_bits);
    }
    return labels;
}

bool ScenarioConfig::deterministic() const {
    const bool ris_random = j > 0 && (links.bs_ris == LinkModel::rayleigh ||
                                      links.ris_user == LinkModel::rayleigh);
    return links.direct != LinkModel::rayleigh && !ris_random;
}

void validate(const ScenarioConfig& c) {
    const std::string who = "scenario '" + c.id + "': ";
    if (c.id.empty() || c.id.find_first_of(",\"\n") != std::string::npos) {
        throw ConfigError("scenario id must be non-empty and free of commas, quotes and newlines");
    }
    if (c.trials < 1) {
        throw ConfigError(who + "trials must be at least 1");
    }
    if (c.sweep.values.empty()) {
        throw ConfigError(who + "sweep needs at least one value");
    }
    if (!(c.wavelength > 0.0)) {
        throw ConfigError(who + "wavelength must be positive");
    }
    if (!(c.distances.bs_ris > 0.0 && c.distances.ris_user > 0.0 && c.distances.bs_user > 0.0)) {
        throw ConfigError(who + "distances must be positive");
    }
    if (!(c.power_sum_w > 0.0)) {
        throw ConfigError(who + "power sum must be positive");
    }
    if (c.phase_bits < 0 || c.phase_bits > 16) {
        throw ConfigError(who + "phase_bits must lie in [0, 16]");
    }
    std::set<double> seen;
    for (double v : c.sweep.values) {
        if (!std::isfinite(v)) {
            throw ConfigError(who + "sweep values must be finite");
        }
        if (!seen.insert(v).second) {
            throw ConfigError(who + "duplicate sweep value");
        }
        if (c.sweep.axis == SweepAxis::n || c.sweep.axis == SweepAxis::m ||
            c.sweep.axis == SweepAxis::j) {
            check_integral(v, std::string(to_string(c.sweep.axis)).c_str());
        }
    }
    if (c.sweep.axis == SweepAxis::none && c.sweep.values.size() != 1) {
        throw ConfigError(who + "a scenario without sweep axis takes exactly one sweep value");
    }

    for (double v : c.sweep.values) {
        const ScenarioConfig s = c.at_sweep_value(v);
        if (s.m < 1 || s.k < 1 || s.n < 0 || s.j < 0) {
            throw ConfigError(who + "array sizes must be positive and j non-negative");
        }
        if (s.j > 0 && s.n < s.j) {
            throw ConfigError(who + "fewer RIS elements than RISs");
        }
        if (s.j > 1 && s.placement == PlacementMode::geometric) {
            throw ConfigError(who + "geometric placement supports a single RIS; use planned");
        }
        if (s.j > 0 && s.placement == PlacementMode::planned) {
            if (s.links.direct == LinkModel::rayleigh) {
                throw ConfigError(who + "planned placement needs a LoS or blocked direct link");
            }
            if (s.j > s.k) {
                throw ConfigError(who + "planned placement supports at most K RISs");
            }
            if (s.links.direct == LinkModel::blocked && s.j > s.k) {
                throw ConfigError(who + "too many RISs for the user array");
            }
        }
        if (s.j > 0 && s.placement == PlacementMode::geometric) {
            const Distances& d = s.distances;
            if (d.bs_ris + d.ris_user <= d.bs_user || d.bs_ris + d.bs_user <= d.ris_user ||
                d.ris_user + d.bs_user <= d.bs_ris) {
                throw ConfigError(who + "distances do not form a triangle");
            }
        }
        if (s.ris_mode == RisMode::active && s.j > 0 &&
            !(s.ris_power_fraction > 0.0 && s.ris_power_fraction < 1.0)) {
            throw ConfigError(who + "active RIS needs ris_fraction in (0, 1)");
        }
    }
}

void validate(const ExperimentConfig& e) {
    if (e.scenarios.empty()) {
        throw ConfigError("experiment '" + e.name + "' has no scenarios");
    }
    std::set<std::string> ids;
    for (const ScenarioConfig& s : e.scenarios) {
        validate(s);
        if (!ids.insert(s.id).second) {
            throw ConfigError("duplicate scenario id '" + s.id + "'");
        }
    }
    for (const ScenarioConfig& s : e.scenarios) {
        if (!ids.contains(s.baseline_id())) {
            throw ConfigError("scenario '" + s.id + "' names unknown baseline '" + s.baseline +
                              "'");
        }
        for (const ScenarioConfig& b : e.scenarios) {
            if (b.id == s.baseline_id() &&
                (b.sweep.axis != s.sweep.axis || b.sweep.values != s.sweep.values)) {
                throw ConfigError("scenario '" + s.id + "' and its baseline '" + b.id +
                                  "' sweep different axes or values");
            }
        }
    }
}

ExperimentConfig parse_experiment(std::string_view json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("scenario file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("scenario file must contain a JSON object");
    }
    ExperimentConfig e;
    if (!doc.contains("scenarios")) {
        Json single = doc;
        single.erase("metadata");
        e.name = single.value("id", std::string("scenario"));
        e.scenarios.push_back(scenario_from_json(single));
        validate(e);
        return e;
    }
    reject_unknown(doc, {"name", "defaults", "scenarios", "metadata"}, "experiment");
    read(doc, "name", e.name, "experiment");
    const Json defaults = doc.contains("defaults") ? doc.at("defaults") : Json::object();
    if (!doc.at("scenarios").is_array()) {
        throw ConfigError("'scenarios' must be an array");
    }
    for (const Json& item : doc.at("scenarios")) {
        Json merged = defaults;
        merged.merge_patch(item);
        e.scenarios.push_back(scenario_from_json(merged));
    }
    validate(e);
    return e;
}

ExperimentConfig load_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read scenario file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment(buffer.str());
}

std::string experiment_to_json(const ExperimentConfig& experiment, int indent) {
    Json doc;
    doc["name"] = experiment.name;
    doc["scenarios"] = Json::array();
    for (const ScenarioConfig& s : experiment.scenarios) {
        doc["scenarios"].push_back(scenario_json(s));
    }
    return doc.dump(indent);
}

std::string scenario_to_json(const ScenarioConfig& scenario) {
    return scenario_json(scenario).dump();
}

std::uint64_t fingerprint(const ScenarioConfig& scenario) {
    return fnv1a64(scenario_to_json(scenario));
}

std::vector<std::string> preset_names() {
    return {"fig4", "fig5", "fig6a", "fig6b"};
}

bool is_preset(std::string_view name) {
    for (const std::string& p : preset_names()) {
        if (p == name) {
            return true;
        }
    }
    return false;
}

namespace {

ScenarioConfig paper_setup() {
    ScenarioConfig c;
    c.distances = {82.0, 28.0, 100.0};
    c.k = 4;
    c.user_noise_dbm = -70.0;
    c.ris_noise_dbm = -90.0;
    c.ris_mode = RisMode::active;
    return c;
}

constexpr int kRayleighTrials = 200;

ExperimentConfig fig4() {
    ExperimentConfig e;
    e.name = "fig4";
    for (int m : {64, 128}) {
        const std::string suffix = "_m" + std::to_string(m);
        ScenarioConfig base = paper_setup();
        base.m = m;
        base.n = 1024;
        base.links.direct = LinkModel::los;
        base.sweep = {SweepAxis::n, {64, 128, 256, 512, 1024}};

        ScenarioConfig none = base;
        none.id = "los_no_ris" + suffix;
        none.j = 0;

        ScenarioConfig all_los = base;
        all_los.id = "all_los_ris" + suffix;
        all_los.baseline = none.id;

        ScenarioConfig mixed = base;
        mixed.id = "los_rayleigh_ris" + suffix;
        mixed.baseline = none.id;
        mixed.links.ris_user = LinkModel::rayleigh;
        mixed.trials = kRayleighTrials;

        e.scenarios.insert(e.scenarios.end(), {none, all_los, mixed});
    }
    return e;
}

ExperimentConfig fig5() {
    ExperimentConfig e;
    e.name = "fig5";
    ScenarioConfig base = paper_setup();
    base.m = 64;
    base.links.direct = LinkModel::blocked;
    base.sweep = {SweepAxis::n, {64, 128, 256, 512, 1024}};

    ScenarioConfig none = base;
    none.id = "no_link_no_ris";
    none.j = 0;

    ScenarioConfig all_los = base;
    all_los.id = "all_los_ris";
    all_los.baseline = none.id;

    ScenarioConfig rayleigh = base;
    rayleigh.id = "rayleigh_ris";
    rayleigh.baseline = none.id;
    rayleigh.links.bs_ris = LinkModel::rayleigh;
    rayleigh.links.ris_user = LinkModel::rayleigh;
    rayleigh.trials = kRayleighTrials;

    e.scenarios = {none, all_los, rayleigh};
    return e;
}

ExperimentConfig fig6(SweepAxis axis) {
    ExperimentConfig e;
    e.name = axis == SweepAxis::ris_noise_dbm ? "fig6a" : "fig6b";
    ScenarioConfig base = paper_setup();
    base.m = 128;
    base.n = 600;
    base.links.direct = LinkModel::los;
    base.placement = PlacementMode::planned;
    base.transmit = TransmitDesign::null_space;
    base.sweep = {axis, {-120, -110, -100, -90, -80, -70, -60}};

    ScenarioConfig none = base;
    none.id = "no_ris";
    none.j = 0;
    e.scenarios.push_back(none);
    for (int j = 1; j <= 4; ++j) {
        ScenarioConfig s = base;
        s.id = "distributed_j" + std::to_string(j);
        s.baseline = none.id;
        s.j = j;
        e.scenarios.push_back(s);
    }
    return e;
}

} // namespace

ExperimentConfig preset(std::string_view name) {
    if (name == "fig4") {
        return fig4();
    }
    if (name == "fig5") {
        return fig5();
    }
    if (name == "fig6a") {
        return fig6(SweepAxis::ris_noise_dbm);
    }
    if (name == "fig6b") {
        return fig6(SweepAxis::user_noise_dbm);
    }
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig4, fig5, fig6a, fig6b)");
}

std::string declared_defaults(const ExperimentConfig& experiment) {
    std::ostringstream os;
    os << std::setprecision(12);
    std::set<std::string> lines;
    for (const ScenarioConfig& s : experiment.scenarios) {
        std::ostringstream l;
        l << std::setprecision(12);
        l << "path_loss = " << s.path_loss.reference_loss_db << " dB + 10*alpha*log10(d/1 m), alpha_los = "
          << s.path_loss.los_exponent << ", alpha_rayleigh = " << s.path_loss.rayleigh_exponent;
        lines.insert(l.str());
        std::ostringstream w;
        w << std::setprecision(12) << "wavelength_m = " << s.wavelength
          << ", element_spacing = wavelength/2";
        lines.insert(w.str());
        std::ostringstream p;
        p << std::setprecision(12) << "power_sum_w = " << s.power_sum_w;
        lines.insert(p.str());
        if (s.ris_mode == RisMode::active && s.j > 0) {
            std::ostringstream f;
            f << std::setprecision(12) << "ris_power_fraction = " << s.ris_power_fraction
              << " (equal split across RISs)";
            lines.insert(f.str());
        }
        lines.insert("power_policy[" + s.id + "] = " + std::string(to_string(s.power_policy)));
        lines.insert("ris_mode[" + s.id + "] = " + std::string(to_string(s.ris_mode)));
    }
    for (const std::string& l : lines) {
        os << l << "\n";
    }
    return os.str();
}

} // namespace risdof
