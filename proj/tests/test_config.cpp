#include <doctest.h>

#include "nfis/config.hpp"
#include "nfis/errors.hpp"

using namespace nfis;

namespace {

const char* kMinimalConfig = R"({
  "datasets": [{"id": "d1", "path": "data.csv", "target": "power"}],
  "models": [{"id": "m1", "kind": "ntsk-wrls", "r_max": 4}]
})";

} // namespace

TEST_CASE("minimal config fills documented defaults") {
    const RunConfig cfg = parse_config_text(kMinimalConfig);
    CHECK(cfg.seed == 42);
    CHECK(cfg.split_fraction == doctest::Approx(0.8));
    CHECK(cfg.output_dir == "nfis_out");
    REQUIRE(cfg.datasets.size() == 1);
    CHECK(cfg.datasets[0].drop_na);
    CHECK(cfg.datasets[0].horizon == 1);
    REQUIRE(cfg.models.size() == 1);
    CHECK(cfg.models[0].hparams.r_max == 4);
}

TEST_CASE("unknown keys are rejected with their path") {
    const char* bad = R"({
      "datasets": [{"id": "d1", "path": "d.csv", "target": "p"}],
      "models": [{"kind": "nmr", "modle": 3}]
    })";
    try {
        parse_config_text(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("modle") != std::string::npos);
        CHECK(std::string(e.what()).find("models[0]") != std::string::npos);
    }
}

TEST_CASE("range violations are config errors") {
    const char* bad_split = R"({
      "split_fraction": 1.2,
      "datasets": [{"path": "d.csv", "target": "p"}],
      "models": [{"kind": "nmr"}]
    })";
    CHECK_THROWS_AS(parse_config_text(bad_split), ConfigError);

    const char* bad_lambda = R"({
      "datasets": [{"path": "d.csv", "target": "p"}],
      "models": [{"kind": "ntsk-rls", "lambda": 0.0}]
    })";
    CHECK_THROWS_AS(parse_config_text(bad_lambda), ConfigError);

    const char* bad_kind = R"({
      "datasets": [{"path": "d.csv", "target": "p"}],
      "models": [{"kind": "lstm"}]
    })";
    CHECK_THROWS_AS(parse_config_text(bad_kind), ConfigError);
}

TEST_CASE("blocks must match the model kind") {
    const char* ga_on_plain = R"({
      "datasets": [{"path": "d.csv", "target": "p"}],
      "models": [{"kind": "nmr", "ga": {"generations": 5}}]
    })";
    CHECK_THROWS_AS(parse_config_text(ga_on_plain), ConfigError);

    const char* ok = R"({
      "datasets": [{"path": "d.csv", "target": "p"}],
      "models": [
        {"kind": "gen-nmr", "ga": {"generations": 5}},
        {"kind": "r-ntsk", "ensemble": {"n_members": 3, "z": 2}},
        {"kind": "rf-ntsk", "ensemble": {"n_members": 3}, "forest": {"n_trees": 10}}
      ]
    })";
    const RunConfig cfg = parse_config_text(ok);
    CHECK(cfg.models[0].ga.generations == 5);
    CHECK(cfg.models[1].ensemble.n_members == 3);
    CHECK(cfg.models[2].forest.n_trees == 10);
}

TEST_CASE("duplicate ids are rejected") {
    const char* dup = R"({
      "datasets": [{"id": "a", "path": "1.csv", "target": "p"},
                   {"id": "a", "path": "2.csv", "target": "p"}],
      "models": [{"kind": "nmr"}]
    })";
    CHECK_THROWS_AS(parse_config_text(dup), ConfigError);
}

TEST_CASE("parse-serialize-parse round-trips") {
    const char* full = R"({
      "seed": 7,
      "split_fraction": 0.75,
      "output_dir": "out",
      "mape_zero_policy": "epsilon",
      "mape_epsilon": 1e-6,
      "datasets": [{"id": "d", "path": "d.csv", "target": "p", "lags": 2}],
      "models": [
        {"id": "base", "kind": "ntsk-rls", "r_max": 3, "lambda": 0.97,
         "grid": {"r_max": [1, 2, 3], "lambda": [0.9, 1.0]}},
        {"id": "gen", "kind": "gen-ntsk-wrls",
         "ga": {"population_size": 10, "generations": 4, "mutation_rate": 0.2}},
        {"id": "rnd", "kind": "r-nmr", "ensemble": {"n_members": 2, "z": 2}}
      ]
    })";
    const RunConfig once = parse_config_text(full);
    const std::string echo = serialize_config(once);
    const RunConfig twice = parse_config_text(echo);
    CHECK(serialize_config(twice) == echo);
    CHECK(twice.models[0].grid.has_value());
    CHECK(twice.models[0].grid->lambda_values == std::vector<double>{0.9, 1.0});
    CHECK(twice.models[1].ga.mutation_rate == doctest::Approx(0.2));
}

TEST_CASE("find helpers resolve ids") {
    const RunConfig cfg = parse_config_text(kMinimalConfig);
    CHECK(find_dataset(cfg, "d1").path == "data.csv");
    CHECK(find_dataset(cfg, "").id == "d1"); // single entry needs no id
    CHECK(find_model(cfg, "m1").kind == RunModelKind::NtskWrls);
    CHECK_THROWS_AS(find_dataset(cfg, "nope"), ConfigError);
}

TEST_CASE("NFIS_SEED environment variable overrides the config seed") {
    setenv("NFIS_SEED", "123", 1);
    const RunConfig cfg = parse_config_text(kMinimalConfig);
    unsetenv("NFIS_SEED");
    CHECK(cfg.seed == 123);

    setenv("NFIS_SEED", "notanumber", 1);
    CHECK_THROWS_AS(parse_config_text(kMinimalConfig), ConfigError);
    unsetenv("NFIS_SEED");
}
