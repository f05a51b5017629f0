#include "nfis/model_io.hpp"
#include "nfis/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <type_traits>

namespace nfis {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kFormatVersion = 1;

json to_json(const GaussianSet& set) { return json{{"mean", set.mean}, {"std", set.stddev}}; }

GaussianSet gaussian_from(const json& j) {
    return GaussianSet{j.at("mean").get<double>(), j.at("std").get<double>()};
}

json antecedent_to_json(const AntecedentRule& rule) {
    json sets = json::array();
    for (const auto& set : rule.sets) sets.push_back(to_json(set));
    return sets;
}

AntecedentRule antecedent_from(const json& j) {
    AntecedentRule rule;
    for (const auto& set : j) rule.sets.push_back(gaussian_from(set));
    return rule;
}

template <typename Model>
void write_common(json& j, const Model& model) {
    j["format"] = "nfis-model";
    j["version"] = kFormatVersion;
    j["attribute_names"] = model.attribute_names;
    j["feature_mask"] = model.feature_mask;
    j["target"] = model.target_name;
    j["horizon"] = model.horizon;
    j["lags"] = model.lags;
}

template <typename Model>
void read_common(const json& j, Model& model) {
    model.attribute_names = j.at("attribute_names").get<std::vector<std::string>>();
    model.feature_mask = j.at("feature_mask").get<std::vector<std::size_t>>();
    model.target_name = j.at("target").get<std::string>();
    model.horizon = j.at("horizon").get<int>();
    model.lags = j.at("lags").get<int>();
}

json nmr_to_json(const NmrModel& model) {
    json j;
    write_common(j, model);
    j["kind"] = "nmr";
    j["r_max"] = model.r_max;
    j["interval_size"] = model.interval;
    j["y_min"] = model.y_min;
    j["y_max"] = model.y_max;
    json rules = json::array();
    for (const auto& rule : model.rules) {
        rules.push_back({{"antecedent", antecedent_to_json(rule.antecedent)},
                         {"consequent_mean", rule.consequent_mean},
                         {"consequent_std", rule.consequent_std},
                         {"range", {rule.range.lo, rule.range.hi}},
                         {"support", rule.support}});
    }
    j["rules"] = std::move(rules);
    return j;
}

NmrModel nmr_from_json(const json& j) {
    NmrModel model;
    read_common(j, model);
    model.r_max = j.at("r_max").get<int>();
    model.interval = j.at("interval_size").get<double>();
    model.y_min = j.at("y_min").get<double>();
    model.y_max = j.at("y_max").get<double>();
    for (const auto& rj : j.at("rules")) {
        NmrRule rule;
        rule.antecedent = antecedent_from(rj.at("antecedent"));
        rule.consequent_mean = rj.at("consequent_mean").get<double>();
        rule.consequent_std = rj.at("consequent_std").get<double>();
        rule.range = ValueRange{rj.at("range")[0].get<double>(), rj.at("range")[1].get<double>()};
        rule.support = rj.at("support").get<std::size_t>();
        model.rules.push_back(std::move(rule));
    }
    return model;
}

json ntsk_to_json(const NtskModel& model) {
    json j;
    write_common(j, model);
    j["kind"] = "ntsk";
    j["r_max"] = model.r_max;
    j["solver"] = model.solver == NtskSolver::Rls ? "rls" : "wrls";
    j["lambda"] = model.lambda;
    j["delta_min"] = model.delta_min;
    j["delta_max"] = model.delta_max;
    json rules = json::array();
    for (const auto& rule : model.rules) {
        rules.push_back({{"antecedent", antecedent_to_json(rule.antecedent)},
                         {"theta", rule.theta},
                         {"variation_range", {rule.variation_range.lo, rule.variation_range.hi}},
                         {"support", rule.support}});
    }
    j["rules"] = std::move(rules);
    return j;
}

NtskModel ntsk_from_json(const json& j) {
    NtskModel model;
    read_common(j, model);
    model.r_max = j.at("r_max").get<int>();
    model.solver = j.at("solver").get<std::string>() == "rls" ? NtskSolver::Rls : NtskSolver::Wrls;
    model.lambda = j.at("lambda").get<double>();
    model.delta_min = j.at("delta_min").get<double>();
    model.delta_max = j.at("delta_max").get<double>();
    for (const auto& rj : j.at("rules")) {
        NtskRule rule;
        rule.antecedent = antecedent_from(rj.at("antecedent"));
        rule.theta = rj.at("theta").get<std::vector<double>>();
        rule.variation_range = ValueRange{rj.at("variation_range")[0].get<double>(),
                                          rj.at("variation_range")[1].get<double>()};
        rule.support = rj.at("support").get<std::size_t>();
        model.rules.push_back(std::move(rule));
    }
    return model;
}

json forest_to_json(const RandomForest& forest) {
    json j;
    j["format"] = "nfis-model";
    j["version"] = kFormatVersion;
    j["kind"] = "rf";
    j["attribute_names"] = forest.attribute_names;
    j["target"] = forest.target_name;
    j["horizon"] = forest.horizon;
    j["lags"] = forest.lags;
    j["n_trees"] = forest.config.n_trees;
    j["max_depth"] = forest.config.max_depth;
    j["min_samples_leaf"] = forest.config.min_samples_leaf;
    j["feature_fraction"] = forest.config.feature_fraction;
    j["bootstrap"] = forest.config.bootstrap;
    j["seed"] = forest.config.seed;
    json trees = json::array();
    for (const auto& tree : forest.trees) {
        json nodes = json::array();
        for (const auto& node : tree.nodes)
            nodes.push_back({node.attribute, node.threshold, node.value, node.left, node.right});
        trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
    return j;
}

RandomForest forest_from_json(const json& j) {
    RandomForest forest;
    forest.attribute_names = j.at("attribute_names").get<std::vector<std::string>>();
    forest.target_name = j.at("target").get<std::string>();
    forest.horizon = j.at("horizon").get<int>();
    forest.lags = j.at("lags").get<int>();
    forest.config.n_trees = j.at("n_trees").get<int>();
    forest.config.max_depth = j.at("max_depth").get<int>();
    forest.config.min_samples_leaf = j.at("min_samples_leaf").get<int>();
    forest.config.feature_fraction = j.at("feature_fraction").get<double>();
    forest.config.bootstrap = j.at("bootstrap").get<bool>();
    forest.config.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& tj : j.at("trees")) {
        RegressionTree tree;
        for (const auto& nj : tj) {
            TreeNode node;
            node.attribute = nj[0].get<int>();
            node.threshold = nj[1].get<double>();
            node.value = nj[2].get<double>();
            node.left = nj[3].get<int>();
            node.right = nj[4].get<int>();
            tree.nodes.push_back(node);
        }
        forest.trees.push_back(std::move(tree));
    }
    return forest;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError(path + ": invalid JSON: " + e.what());
    }
    return j;
}

std::string member_path(const std::string& manifest_path, std::size_t index) {
    fs::path p(manifest_path);
    fs::path stem = p.parent_path() / p.stem();
    char buf[32];
    std::snprintf(buf, sizeof buf, "_member_%03zu.json", index);
    return stem.string() + buf;
}

void save_ensemble(const Ensemble& e, const std::string& path) {
    json j;
    j["format"] = "nfis-model";
    j["version"] = kFormatVersion;
    j["kind"] = "ensemble";
    j["combination"] = e.combination == EnsembleCombination::Mean ? "mean" : "error_weighted";
    j["n_members"] = e.n_members;
    j["z"] = e.z;
    j["attribute_names"] = e.attribute_names;
    j["target"] = e.target_name;
    j["horizon"] = e.horizon;
    j["lags"] = e.lags;
    json members = json::array();
    for (std::size_t i = 0; i < e.members.size(); ++i) {
        const std::string file = member_path(path, i);
        const auto& member = e.members[i];
        std::visit([&](const auto& m) { save_model(ModelAny{m}, file); }, member.model);
        members.push_back({{"mask", member.mask},
                           {"model_file", fs::path(file).filename().string()},
                           {"validation_error", member.validation_error}});
    }
    j["members"] = std::move(members);
    write_json(j, path);
}

Ensemble ensemble_from_json(const json& j, const std::string& path) {
    Ensemble e;
    e.combination = j.at("combination").get<std::string>() == "error_weighted"
                        ? EnsembleCombination::ErrorWeighted
                        : EnsembleCombination::Mean;
    e.n_members = j.at("n_members").get<int>();
    e.z = j.at("z").get<int>();
    e.attribute_names = j.at("attribute_names").get<std::vector<std::string>>();
    e.target_name = j.at("target").get<std::string>();
    e.horizon = j.at("horizon").get<int>();
    e.lags = j.at("lags").get<int>();
    const fs::path dir = fs::path(path).parent_path();
    for (const auto& mj : j.at("members")) {
        EnsembleMember member;
        member.mask = mj.at("mask").get<std::vector<std::size_t>>();
        member.validation_error = mj.at("validation_error").get<double>();
        const std::string file = (dir / mj.at("model_file").get<std::string>()).string();
        const ModelAny any = load_model(file);
        if (std::holds_alternative<NmrModel>(any))
            member.model = std::get<NmrModel>(any);
        else if (std::holds_alternative<NtskModel>(any))
            member.model = std::get<NtskModel>(any);
        else
            throw DataError(file + ": ensemble member must be a fuzzy model");
        e.members.push_back(std::move(member));
    }
    return e;
}

} // namespace

double predict_any(const ModelAny& model, const std::vector<double>& x) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NmrModel>)
                return predict_nmr(m, x);
            else if constexpr (std::is_same_v<T, NtskModel>)
                return predict_ntsk(m, x);
            else if constexpr (std::is_same_v<T, Ensemble>)
                return predict_ensemble(m, x);
            else if constexpr (std::is_same_v<T, RandomForest>)
                return predict_forest(m, x);
            else
                return predict_rf_ntsk(m, x);
        },
        model);
}

std::vector<double> predict_any(const ModelAny& model,
                                const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(predict_any(model, row));
    return out;
}

InputShape input_shape(const ModelAny& model) {
    return std::visit(
        [](const auto& m) -> InputShape {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RfNtskModel>)
                return InputShape{m.forest.attribute_names, m.forest.target_name,
                                  m.forest.horizon, m.forest.lags};
            else
                return InputShape{m.attribute_names, m.target_name, m.horizon, m.lags};
        },
        model);
}

void set_supervision(ModelAny& model, int horizon, int lags) {
    std::visit(
        [&](auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RfNtskModel>) {
                m.forest.horizon = m.rntsk.horizon = horizon;
                m.forest.lags = m.rntsk.lags = lags;
            } else if constexpr (std::is_same_v<T, Ensemble>) {
                m.horizon = horizon;
                m.lags = lags;
                for (auto& member : m.members)
                    std::visit(
                        [&](auto& inner) {
                            inner.horizon = horizon;
                            inner.lags = lags;
                        },
                        member.model);
            } else {
                m.horizon = horizon;
                m.lags = lags;
            }
        },
        model);
}

void save_model(const ModelAny& model, const std::string& path) {
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NmrModel>) {
                write_json(nmr_to_json(m), path);
            } else if constexpr (std::is_same_v<T, NtskModel>) {
                write_json(ntsk_to_json(m), path);
            } else if constexpr (std::is_same_v<T, Ensemble>) {
                save_ensemble(m, path);
            } else if constexpr (std::is_same_v<T, RandomForest>) {
                write_json(forest_to_json(m), path);
            } else {
                const fs::path p(path);
                const std::string stem = (p.parent_path() / p.stem()).string();
                json j;
                j["format"] = "nfis-model";
                j["version"] = kFormatVersion;
                j["kind"] = "rf-ntsk";
                j["eps_rf"] = m.eps_rf;
                j["eps_rntsk"] = m.eps_rntsk;
                j["forest_file"] = fs::path(stem + "_forest.json").filename().string();
                j["rntsk_file"] = fs::path(stem + "_rntsk.json").filename().string();
                save_model(ModelAny{m.forest}, stem + "_forest.json");
                save_model(ModelAny{m.rntsk}, stem + "_rntsk.json");
                write_json(j, path);
            }
        },
        model);
}

ModelAny load_model(const std::string& path) {
    const json j = read_json(path);
    if (!j.contains("kind")) throw DataError(path + ": missing model kind");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "nmr") return nmr_from_json(j);
    if (kind == "ntsk") return ntsk_from_json(j);
    if (kind == "rf") return forest_from_json(j);
    if (kind == "ensemble") return ensemble_from_json(j, path);
    if (kind == "rf-ntsk") {
        RfNtskModel model;
        model.eps_rf = j.at("eps_rf").get<double>();
        model.eps_rntsk = j.at("eps_rntsk").get<double>();
        const fs::path dir = fs::path(path).parent_path();
        model.forest = std::get<RandomForest>(
            load_model((dir / j.at("forest_file").get<std::string>()).string()));
        model.rntsk =
            std::get<Ensemble>(load_model((dir / j.at("rntsk_file").get<std::string>()).string()));
        return model;
    }
    throw DataError(path + ": unknown model kind '" + kind + "'");
}

RuleTable export_rule_table_any(const ModelAny& model) {
    return std::visit(
        [](const auto& m) -> RuleTable {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NmrModel> || std::is_same_v<T, NtskModel>)
                return export_rule_table(m);
            else
                throw ConfigError("not a single rule-based model");
        },
        model);
}

} // namespace nfis
