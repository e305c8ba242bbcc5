#include <string>

#include "doctest.h"
#include "risdof/errors.hpp"
#include "risdof/scenario.hpp"

using namespace risdof;

namespace {

const char* kSmall = R"({
  "name": "small",
  "defaults": {
    "geometry": {"m": 16, "n": 64, "k": 2},
    "sweep": {"axis": "n", "values": [32, 64]}
  },
  "scenarios": [
    {"id": "base", "geometry": {"j": 0}},
    {"id": "ris", "baseline": "base", "links": {"ris_user": "rayleigh"}, "trials": 3, "seed": 9}
  ]
})";

std::string with(const std::string& body) {
    return R"({"name": "x", "scenarios": [)" + body + "]}";
}

} // namespace

TEST_CASE("parse merges defaults into scenarios") {
    const ExperimentConfig e = parse_experiment(kSmall);
    CHECK(e.name == "small");
    REQUIRE(e.scenarios.size() == 2);
    const ScenarioConfig& ris = e.scenarios[1];
    CHECK(ris.m == 16);
    CHECK(ris.k == 2);
    CHECK(ris.j == 1);
    CHECK(ris.baseline_id() == "base");
    CHECK(e.scenarios[0].baseline_id() == "base");
    CHECK(ris.links.ris_user == LinkModel::rayleigh);
    CHECK(ris.sweep.axis == SweepAxis::n);
    CHECK(ris.sweep.values == std::vector<double>{32, 64});
    CHECK(ris.trials == 3);
    CHECK(ris.seed == 9);
    CHECK_FALSE(ris.deterministic());
    CHECK(e.scenarios[0].deterministic());
    CHECK(ris.at_sweep_value(32).n == 32);
}

TEST_CASE("a single scenario object is an experiment of one") {
    const ExperimentConfig e = parse_experiment(R"({"id": "solo", "geometry": {"m": 8, "n": 16}})");
    REQUIRE(e.scenarios.size() == 1);
    CHECK(e.scenarios[0].id == "solo");
    CHECK(e.scenarios[0].m == 8);
}

TEST_CASE("canonical JSON round-trips") {
    for (const std::string& name : preset_names()) {
        const ExperimentConfig e = preset(name);
        const std::string text = experiment_to_json(e);
        const ExperimentConfig back = parse_experiment(text);
        CHECK(experiment_to_json(back) == text);
        REQUIRE(back.scenarios.size() == e.scenarios.size());
        for (std::size_t i = 0; i < e.scenarios.size(); ++i) {
            CHECK(fingerprint(back.scenarios[i]) == fingerprint(e.scenarios[i]));
        }
    }
    const ExperimentConfig small = parse_experiment(kSmall);
    CHECK(experiment_to_json(parse_experiment(experiment_to_json(small))) ==
          experiment_to_json(small));
}

TEST_CASE("fingerprint changes with the seed") {
    ScenarioConfig a;
    ScenarioConfig b = a;
    b.seed = 2;
    CHECK(fingerprint(a) != fingerprint(b));
    CHECK(fingerprint(a) == fingerprint(ScenarioConfig{}));
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_experiment(with(R"({"id": "a", "colour": 1})")), ConfigError);
    CHECK_THROWS_AS(parse_experiment(with(R"({"id": "a", "geometry": {"mm": 1}})")), ConfigError);
    CHECK_THROWS_AS(parse_experiment(with(R"({"id": "a", "power": {"mode": "active"}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment(R"({"name": "x", "extra": 1, "scenarios": []})"), ConfigError);
    try {
        parse_experiment(with(R"({"id": "a", "noise": {"ris": -90}})"));
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("'ris'") != std::string::npos);
    }
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(parse_experiment("not json"), ConfigError);
    CHECK_THROWS_AS(parse_experiment("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(parse_experiment(R"({"name": "x", "scenarios": []})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment(with(R"({"id": "a,b"})")), ConfigError);
    CHECK_THROWS_AS(parse_experiment(with(R"({"id": "a", "trials": 0})")), ConfigError);
    CHECK_THROWS_AS(parse_experiment(with(R"({"id": "a"}, {"id": "a"})")), ConfigError);
    CHECK_THROWS_AS(parse_experiment(with(R"({"id": "a", "baseline": "zz"})")), ConfigError);
    CHECK_THROWS_AS(parse_experiment(with(R"({"id": "a", "geometry": {"m": 0}})")), ConfigError);
    CHECK_THROWS_AS(parse_experiment(with(R"({"id": "a", "geometry": {"m": "many"}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment(with(R"({"id": "a", "links": {"direct": "nlos"}})")),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_experiment(with(R"({"id": "a", "sweep": {"axis": "n", "values": [64, 64]}})")),
        ConfigError);
    CHECK_THROWS_AS(
        parse_experiment(with(R"({"id": "a", "sweep": {"axis": "n", "values": [64.5]}})")),
        ConfigError);
    CHECK_THROWS_AS(
        parse_experiment(with(R"({"id": "a", "geometry": {"distances": {"bs_ris": 1, "ris_user": 1, "bs_user": 5}}})")),
        ConfigError);
    CHECK_THROWS_AS(parse_experiment(with(R"({"id": "a", "geometry": {"j": 2}})")), ConfigError);
    CHECK_THROWS_AS(
        parse_experiment(with(R"({"id": "a", "power": {"ris_mode": "active", "ris_fraction": 1.0}})")),
        ConfigError);
    CHECK_THROWS_AS(
        parse_experiment(with(R"({"id": "a", "geometry": {"placement": "planned", "j": 2}, "links": {"direct": "rayleigh"}})")),
        ConfigError);
    CHECK_THROWS_AS(
        parse_experiment(with(R"({"id": "b", "sweep": {"axis": "n", "values": [64]}}, {"id": "a", "baseline": "b"})")),
        ConfigError);
    CHECK_THROWS_AS(load_experiment("/proc/risdof/file.json"), Error);
}

TEST_CASE("presets share the published setup") {
    CHECK_THROWS_AS(preset("fig7"), ConfigError);
    CHECK(is_preset("fig6b"));
    CHECK_FALSE(is_preset("fig7"));
    for (const std::string& name : preset_names()) {
        const ExperimentConfig e = preset(name);
        CHECK_NOTHROW(validate(e));
        for (const ScenarioConfig& s : e.scenarios) {
            CHECK(s.k == 4);
            CHECK(s.distances.bs_ris == 82.0);
            CHECK(s.distances.ris_user == 28.0);
            CHECK(s.distances.bs_user == 100.0);
            CHECK(s.power_sum_w == 1.0);
            if (s.sweep.axis != SweepAxis::user_noise_dbm) {
                CHECK(s.user_noise_dbm == -70.0);
            }
            if (s.sweep.axis != SweepAxis::ris_noise_dbm) {
                CHECK(s.ris_noise_dbm == -90.0);
            }
        }
        CHECK(declared_defaults(e).find("path_loss") != std::string::npos);
    }
}

TEST_CASE("preset shapes") {
    const ExperimentConfig f4 = preset("fig4");
    CHECK(f4.scenarios.size() == 6);
    for (const ScenarioConfig& s : f4.scenarios) {
        CHECK(s.n == 1024);
        CHECK((s.m == 64 || s.m == 128));
        CHECK(s.sweep.axis == SweepAxis::n);
    }

    const ExperimentConfig f5 = preset("fig5");
    for (const ScenarioConfig& s : f5.scenarios) {
        CHECK(s.links.direct == LinkModel::blocked);
        CHECK(s.m == 64);
    }

    for (const char* name : {"fig6a", "fig6b"}) {
        const ExperimentConfig f6 = preset(name);
        CHECK(f6.scenarios.size() == 5);
        for (const ScenarioConfig& s : f6.scenarios) {
            CHECK(s.m == 128);
            CHECK(s.n == 600);
            CHECK(s.sweep.values.front() == -120.0);
            CHECK(s.sweep.values.back() == -60.0);
        }
        CHECK(f6.scenarios[4].j == 4);
    }
    CHECK(preset("fig6a").scenarios[1].sweep.axis == SweepAxis::ris_noise_dbm);
    CHECK(preset("fig6b").scenarios[1].sweep.axis == SweepAxis::user_noise_dbm);
}

TEST_CASE("design labels") {
    ScenarioConfig s;
    CHECK(s.design_labels() == "eigenmode+water_filling+phase_align+passive");
    s.transmit = TransmitDesign::null_space;
    s.phase_bits = 2;
    CHECK(s.design_labels().find("zero_forcing") != std::string::npos);
    CHECK(s.design_labels().find("q2") != std::string::npos);
    s.j = 0;
    CHECK(s.design_labels().find("no_ris") != std::string::npos);
}
