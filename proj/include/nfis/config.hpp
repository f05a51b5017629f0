#pragma once

#include "nfis/ensemble.hpp"
#include "nfis/genetic.hpp"
#include "nfis/grid_search.hpp"
#include "nfis/metrics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nfis {

struct DatasetSpec {
    std::string id;
    std::string path;
    std::string target;
    bool drop_na = true;
    int horizon = 1;
    int lags = 0;
};

/// Benchmarkable model kinds: the base fuzzy models, their genetic
/// variants, the randomized ensembles, the random forest, and RF-NTSK.
enum class RunModelKind {
    Nmr,
    NtskRls,
    NtskWrls,
    GenNmr,
    GenNtskRls,
    GenNtskWrls,
    RNmr,
    RNtsk,
    Rf,
    RfNtsk,
};

const char* run_model_kind_name(RunModelKind kind);
RunModelKind run_model_kind_from(const std::string& name);

struct ModelSpec {
    std::string id;
    RunModelKind kind = RunModelKind::NtskWrls;
    ModelHparams hparams;
    std::optional<GridSpec> grid;
    GaConfig ga;            // gen-* kinds
    EnsembleConfig ensemble; // r-* and rf-ntsk kinds
    ForestConfig forest;     // rf and rf-ntsk kinds
};

struct RunConfig {
    std::uint64_t seed = 42;
    double split_fraction = 0.8;
    std::string output_dir = "nfis_out";
    MapeZeroPolicy mape_zero_policy = MapeZeroPolicy::Skip;
    double mape_epsilon = 1e-8;
    std::vector<DatasetSpec> datasets;
    std::vector<ModelSpec> models;
};

/// Strict parse: unknown keys are rejected with their field path, ranges
/// checked, blocks validated against the model kind, defaults filled in.
/// The NFIS_SEED environment variable overrides the config seed.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");

/// Full round-trippable echo of the config with defaults resolved.
std::string serialize_config(const RunConfig& cfg);

const DatasetSpec& find_dataset(const RunConfig& cfg, const std::string& id);
const ModelSpec& find_model(const RunConfig& cfg, const std::string& id);

} // namespace nfis
