#include "nfis/config.hpp"
#include "nfis/errors.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace nfis {

using nlohmann::json;

namespace {

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw ConfigError(path + ": unknown key \"" + key + "\"");
}

template <typename T>
T get_or(const json& j, const std::string& key, const T& fallback, const std::string& path) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(path + "." + key + ": wrong type");
    }
}

template <typename T>
T get_required(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw ConfigError(path + ": missing required key \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(path + "." + key + ": wrong type");
    }
}

void check_fraction(double v, const std::string& path) {
    if (!(v > 0.0 && v < 1.0)) throw ConfigError(path + ": must lie in (0, 1)");
}

void check_rate(double v, const std::string& path) {
    if (v < 0.0 || v > 1.0) throw ConfigError(path + ": must lie in [0, 1]");
}

GaConfig parse_ga(const json& j, const std::string& path, std::uint64_t run_seed) {
    expect_object(j, path);
    reject_unknown(j,
                   {"population_size", "generations", "crossover_rate", "mutation_rate",
                    "elitism_count", "fitness_metric", "early_stop_stagnant",
                    "validation_fraction"},
                   path);
    GaConfig cfg;
    cfg.seed = run_seed;
    cfg.population_size = get_or(j, "population_size", cfg.population_size, path);
    cfg.generations = get_or(j, "generations", cfg.generations, path);
    cfg.crossover_rate = get_or(j, "crossover_rate", cfg.crossover_rate, path);
    check_rate(cfg.crossover_rate, path + ".crossover_rate");
    if (j.contains("mutation_rate")) {
        cfg.mutation_rate = get_required<double>(j, "mutation_rate", path);
        check_rate(cfg.mutation_rate, path + ".mutation_rate");
    }
    cfg.elitism_count = get_or(j, "elitism_count", cfg.elitism_count, path);
    cfg.early_stop_stagnant = get_or(j, "early_stop_stagnant", cfg.early_stop_stagnant, path);
    cfg.validation_fraction = get_or(j, "validation_fraction", cfg.validation_fraction, path);
    check_fraction(cfg.validation_fraction, path + ".validation_fraction");
    const std::string metric = get_or<std::string>(j, "fitness_metric", "rmse", path);
    if (metric == "rmse")
        cfg.fitness_metric = FitnessMetric::Rmse;
    else if (metric == "nrmse")
        cfg.fitness_metric = FitnessMetric::Nrmse;
    else
        throw ConfigError(path + ".fitness_metric: expected \"rmse\" or \"nrmse\"");
    validate(cfg);
    return cfg;
}

EnsembleConfig parse_ensemble(const json& j, const std::string& path, std::uint64_t run_seed) {
    expect_object(j, path);
    reject_unknown(j, {"n_members", "z", "subset_prob", "combination", "validation_fraction"},
                   path);
    EnsembleConfig cfg;
    cfg.seed = run_seed;
    cfg.n_members = get_or(j, "n_members", cfg.n_members, path);
    cfg.z = get_or(j, "z", cfg.z, path);
    cfg.subset_prob = get_or(j, "subset_prob", cfg.subset_prob, path);
    if (!(cfg.subset_prob > 0.0 && cfg.subset_prob <= 1.0))
        throw ConfigError(path + ".subset_prob: must lie in (0, 1]");
    cfg.validation_fraction = get_or(j, "validation_fraction", cfg.validation_fraction, path);
    check_fraction(cfg.validation_fraction, path + ".validation_fraction");
    const std::string comb = get_or<std::string>(j, "combination", "mean", path);
    if (comb == "mean")
        cfg.combination = EnsembleCombination::Mean;
    else if (comb == "error_weighted")
        cfg.combination = EnsembleCombination::ErrorWeighted;
    else
        throw ConfigError(path + ".combination: expected \"mean\" or \"error_weighted\"");
    if (cfg.n_members < 1) throw ConfigError(path + ".n_members: must be >= 1");
    if (cfg.z < 1) throw ConfigError(path + ".z: must be >= 1");
    return cfg;
}

ForestConfig parse_forest(const json& j, const std::string& path, std::uint64_t run_seed) {
    expect_object(j, path);
    reject_unknown(
        j, {"n_trees", "max_depth", "min_samples_leaf", "feature_fraction", "bootstrap"}, path);
    ForestConfig cfg;
    cfg.seed = run_seed;
    cfg.n_trees = get_or(j, "n_trees", cfg.n_trees, path);
    cfg.max_depth = get_or(j, "max_depth", cfg.max_depth, path);
    cfg.min_samples_leaf = get_or(j, "min_samples_leaf", cfg.min_samples_leaf, path);
    if (j.contains("feature_fraction")) {
        cfg.feature_fraction = get_required<double>(j, "feature_fraction", path);
        if (!(cfg.feature_fraction > 0.0 && cfg.feature_fraction <= 1.0))
            throw ConfigError(path + ".feature_fraction: must lie in (0, 1]");
    }
    cfg.bootstrap = get_or(j, "bootstrap", cfg.bootstrap, path);
    if (cfg.n_trees < 1) throw ConfigError(path + ".n_trees: must be >= 1");
    if (cfg.max_depth < 0) throw ConfigError(path + ".max_depth: must be >= 0");
    if (cfg.min_samples_leaf < 1) throw ConfigError(path + ".min_samples_leaf: must be >= 1");
    return cfg;
}

GridSpec parse_grid(const json& j, const std::string& path) {
    expect_object(j, path);
    reject_unknown(j, {"r_max", "lambda"}, path);
    GridSpec grid;
    grid.r_max_values = get_required<std::vector<int>>(j, "r_max", path);
    if (grid.r_max_values.empty()) throw ConfigError(path + ".r_max: empty lattice");
    for (int r : grid.r_max_values)
        if (r < 1) throw ConfigError(path + ".r_max: values must be >= 1");
    if (j.contains("lambda")) {
        grid.lambda_values = get_required<std::vector<double>>(j, "lambda", path);
        for (double l : grid.lambda_values)
            if (!(l > 0.0 && l <= 1.0)) throw ConfigError(path + ".lambda: values must lie in (0, 1]");
    }
    return grid;
}

bool kind_uses_ga(RunModelKind k) {
    return k == RunModelKind::GenNmr || k == RunModelKind::GenNtskRls ||
           k == RunModelKind::GenNtskWrls;
}

bool kind_uses_ensemble(RunModelKind k) {
    return k == RunModelKind::RNmr || k == RunModelKind::RNtsk || k == RunModelKind::RfNtsk;
}

bool kind_uses_forest(RunModelKind k) {
    return k == RunModelKind::Rf || k == RunModelKind::RfNtsk;
}

ModelSpec parse_model(const json& j, const std::string& path, std::uint64_t run_seed) {
    expect_object(j, path);
    reject_unknown(j, {"id", "kind", "r_max", "lambda", "grid", "ga", "ensemble", "forest"}, path);
    ModelSpec spec;
    spec.kind = run_model_kind_from(get_required<std::string>(j, "kind", path));
    spec.id = get_or<std::string>(j, "id", run_model_kind_name(spec.kind), path);
    spec.hparams.r_max = get_or(j, "r_max", spec.hparams.r_max, path);
    if (spec.hparams.r_max < 1) throw ConfigError(path + ".r_max: must be >= 1");
    if (j.contains("lambda")) {
        spec.hparams.lambda = get_required<double>(j, "lambda", path);
        if (!(spec.hparams.lambda > 0.0 && spec.hparams.lambda <= 1.0))
            throw ConfigError(path + ".lambda: must lie in (0, 1]");
    }
    if (j.contains("grid")) spec.grid = parse_grid(j.at("grid"), path + ".grid");

    spec.ga.seed = run_seed;
    spec.ensemble.seed = run_seed;
    spec.forest.seed = run_seed;
    if (j.contains("ga")) {
        if (!kind_uses_ga(spec.kind))
            throw ConfigError(path + ".ga: block not applicable to kind \"" +
                              run_model_kind_name(spec.kind) + "\"");
        spec.ga = parse_ga(j.at("ga"), path + ".ga", run_seed);
    }
    if (j.contains("ensemble")) {
        if (!kind_uses_ensemble(spec.kind))
            throw ConfigError(path + ".ensemble: block not applicable to kind \"" +
                              run_model_kind_name(spec.kind) + "\"");
        spec.ensemble = parse_ensemble(j.at("ensemble"), path + ".ensemble", run_seed);
    }
    if (j.contains("forest")) {
        if (!kind_uses_forest(spec.kind))
            throw ConfigError(path + ".forest: block not applicable to kind \"" +
                              run_model_kind_name(spec.kind) + "\"");
        spec.forest = parse_forest(j.at("forest"), path + ".forest", run_seed);
    }
    return spec;
}

DatasetSpec parse_dataset(const json& j, const std::string& path) {
    expect_object(j, path);
    reject_unknown(j, {"id", "path", "target", "drop_na", "horizon", "lags"}, path);
    DatasetSpec spec;
    spec.path = get_required<std::string>(j, "path", path);
    spec.target = get_required<std::string>(j, "target", path);
    spec.id = get_or<std::string>(j, "id", spec.path, path);
    spec.drop_na = get_or(j, "drop_na", spec.drop_na, path);
    spec.horizon = get_or(j, "horizon", spec.horizon, path);
    spec.lags = get_or(j, "lags", spec.lags, path);
    if (spec.horizon < 1) throw ConfigError(path + ".horizon: must be >= 1");
    if (spec.lags < 0) throw ConfigError(path + ".lags: must be >= 0");
    return spec;
}

} // namespace

const char* run_model_kind_name(RunModelKind kind) {
    switch (kind) {
    case RunModelKind::Nmr: return "nmr";
    case RunModelKind::NtskRls: return "ntsk-rls";
    case RunModelKind::NtskWrls: return "ntsk-wrls";
    case RunModelKind::GenNmr: return "gen-nmr";
    case RunModelKind::GenNtskRls: return "gen-ntsk-rls";
    case RunModelKind::GenNtskWrls: return "gen-ntsk-wrls";
    case RunModelKind::RNmr: return "r-nmr";
    case RunModelKind::RNtsk: return "r-ntsk";
    case RunModelKind::Rf: return "rf";
    case RunModelKind::RfNtsk: return "rf-ntsk";
    }
    return "unknown";
}

RunModelKind run_model_kind_from(const std::string& name) {
    static const std::pair<const char*, RunModelKind> table[] = {
        {"nmr", RunModelKind::Nmr},
        {"ntsk-rls", RunModelKind::NtskRls},
        {"ntsk-wrls", RunModelKind::NtskWrls},
        {"gen-nmr", RunModelKind::GenNmr},
        {"gen-ntsk-rls", RunModelKind::GenNtskRls},
        {"gen-ntsk-wrls", RunModelKind::GenNtskWrls},
        {"r-nmr", RunModelKind::RNmr},
        {"r-ntsk", RunModelKind::RNtsk},
        {"rf", RunModelKind::Rf},
        {"rf-ntsk", RunModelKind::RfNtsk},
    };
    for (const auto& [n, k] : table)
        if (name == n) return k;
    throw ConfigError("unknown model kind \"" + name + "\"");
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": invalid JSON: " + e.what());
    }
    expect_object(j, origin);
    reject_unknown(j,
                   {"seed", "split_fraction", "output_dir", "mape_zero_policy", "mape_epsilon",
                    "datasets", "models"},
                   origin);

    RunConfig cfg;
    cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed, origin);
    if (const char* env_seed = std::getenv("NFIS_SEED")) {
        try {
            cfg.seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            throw ConfigError("NFIS_SEED: not an unsigned integer");
        }
    }
    cfg.split_fraction = get_or(j, "split_fraction", cfg.split_fraction, origin);
    check_fraction(cfg.split_fraction, origin + ".split_fraction");
    cfg.output_dir = get_or<std::string>(j, "output_dir", cfg.output_dir, origin);
    const std::string policy = get_or<std::string>(j, "mape_zero_policy", "skip", origin);
    if (policy == "skip")
        cfg.mape_zero_policy = MapeZeroPolicy::Skip;
    else if (policy == "epsilon")
        cfg.mape_zero_policy = MapeZeroPolicy::Epsilon;
    else
        throw ConfigError(origin + ".mape_zero_policy: expected \"skip\" or \"epsilon\"");
    cfg.mape_epsilon = get_or(j, "mape_epsilon", cfg.mape_epsilon, origin);
    if (!(cfg.mape_epsilon > 0.0)) throw ConfigError(origin + ".mape_epsilon: must be > 0");

    if (!j.contains("datasets") || !j.at("datasets").is_array() || j.at("datasets").empty())
        throw ConfigError(origin + ".datasets: at least one dataset is required");
    std::size_t i = 0;
    for (const auto& dj : j.at("datasets"))
        cfg.datasets.push_back(parse_dataset(dj, origin + ".datasets[" + std::to_string(i++) + "]"));

    if (!j.contains("models") || !j.at("models").is_array() || j.at("models").empty())
        throw ConfigError(origin + ".models: at least one model is required");
    i = 0;
    for (const auto& mj : j.at("models"))
        cfg.models.push_back(parse_model(mj, origin + ".models[" + std::to_string(i++) + "]", cfg.seed));

    std::set<std::string> ids;
    for (const auto& d : cfg.datasets)
        if (!ids.insert("d:" + d.id).second)
            throw ConfigError(origin + ": duplicate dataset id \"" + d.id + "\"");
    for (const auto& m : cfg.models)
        if (!ids.insert("m:" + m.id).second)
            throw ConfigError(origin + ": duplicate model id \"" + m.id + "\"");
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    j["seed"] = cfg.seed;
    j["split_fraction"] = cfg.split_fraction;
    j["output_dir"] = cfg.output_dir;
    j["mape_zero_policy"] = cfg.mape_zero_policy == MapeZeroPolicy::Skip ? "skip" : "epsilon";
    j["mape_epsilon"] = cfg.mape_epsilon;
    j["datasets"] = json::array();
    for (const auto& d : cfg.datasets)
        j["datasets"].push_back({{"id", d.id},
                                 {"path", d.path},
                                 {"target", d.target},
                                 {"drop_na", d.drop_na},
                                 {"horizon", d.horizon},
                                 {"lags", d.lags}});
    j["models"] = json::array();
    for (const auto& m : cfg.models) {
        json mj;
        mj["id"] = m.id;
        mj["kind"] = run_model_kind_name(m.kind);
        mj["r_max"] = m.hparams.r_max;
        mj["lambda"] = m.hparams.lambda;
        if (m.grid) {
            mj["grid"]["r_max"] = m.grid->r_max_values;
            if (!m.grid->lambda_values.empty()) mj["grid"]["lambda"] = m.grid->lambda_values;
        }
        if (kind_uses_ga(m.kind)) {
            mj["ga"] = {{"population_size", m.ga.population_size},
                        {"generations", m.ga.generations},
                        {"crossover_rate", m.ga.crossover_rate},
                        {"elitism_count", m.ga.elitism_count},
                        {"fitness_metric",
                         m.ga.fitness_metric == FitnessMetric::Rmse ? "rmse" : "nrmse"},
                        {"early_stop_stagnant", m.ga.early_stop_stagnant},
                        {"validation_fraction", m.ga.validation_fraction}};
            if (m.ga.mutation_rate >= 0.0) mj["ga"]["mutation_rate"] = m.ga.mutation_rate;
        }
        if (kind_uses_ensemble(m.kind)) {
            mj["ensemble"] = {{"n_members", m.ensemble.n_members},
                              {"z", m.ensemble.z},
                              {"subset_prob", m.ensemble.subset_prob},
                              {"combination",
                               m.ensemble.combination == EnsembleCombination::Mean
                                   ? "mean"
                                   : "error_weighted"},
                              {"validation_fraction", m.ensemble.validation_fraction}};
        }
        if (kind_uses_forest(m.kind)) {
            mj["forest"] = {{"n_trees", m.forest.n_trees},
                            {"max_depth", m.forest.max_depth},
                            {"min_samples_leaf", m.forest.min_samples_leaf},
                            {"bootstrap", m.forest.bootstrap}};
            if (m.forest.feature_fraction > 0.0)
                mj["forest"]["feature_fraction"] = m.forest.feature_fraction;
        }
        j["models"].push_back(std::move(mj));
    }
    return j.dump(2);
}

const DatasetSpec& find_dataset(const RunConfig& cfg, const std::string& id) {
    if (id.empty()) {
        if (cfg.datasets.size() == 1) return cfg.datasets.front();
        throw ConfigError("config defines several datasets; pick one with --dataset");
    }
    for (const auto& d : cfg.datasets)
        if (d.id == id) return d;
    throw ConfigError("dataset id not found in config: " + id);
}

const ModelSpec& find_model(const RunConfig& cfg, const std::string& id) {
    if (id.empty()) {
        if (cfg.models.size() == 1) return cfg.models.front();
        throw ConfigError("config defines several models; pick one with --model");
    }
    for (const auto& m : cfg.models)
        if (m.id == id) return m;
    throw ConfigError("model id not found in config: " + id);
}

} // namespace nfis
