#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nfis/benchmark.hpp"
#include "nfis/errors.hpp"
#include "nfis/grid_search.hpp"
#include "nfis/model_io.hpp"

namespace py = pybind11;
using namespace nfis;

namespace {

// Generic holder so every trained predictor crosses the boundary the same way.
struct PyModel {
    ModelAny model;

    double predict_one(const std::vector<double>& x) const { return predict_any(model, x); }
    std::vector<double> predict(const std::vector<std::vector<double>>& rows) const {
        return predict_any(model, rows);
    }
    std::string kind() const {
        return std::visit(
            [](const auto& m) -> std::string {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, NmrModel>) return "nmr";
                else if constexpr (std::is_same_v<T, NtskModel>) return "ntsk";
                else if constexpr (std::is_same_v<T, Ensemble>) return "ensemble";
                else if constexpr (std::is_same_v<T, RandomForest>) return "rf";
                else return "rf-ntsk";
            },
            model);
    }
    std::size_t rules() const {
        if (const auto* nmr = std::get_if<NmrModel>(&model)) return nmr->rules.size();
        if (const auto* ntsk = std::get_if<NtskModel>(&model)) return ntsk->rules.size();
        throw ConfigError("rule count is only defined for nmr/ntsk models");
    }
    std::vector<std::string> attributes() const { return input_shape(model).attribute_names; }
    std::string rule_table_markdown() const { return render_markdown(export_rule_table_any(model)); }
    std::string rule_table_csv() const { return render_csv(export_rule_table_any(model)); }
    void save(const std::string& path) const { save_model(model, path); }
};

GaConfig make_ga_config(int population_size, int generations, double crossover_rate,
                        double mutation_rate, int elitism_count, std::uint64_t seed,
                        const std::string& fitness_metric, int early_stop_stagnant,
                        double validation_fraction) {
    GaConfig cfg;
    cfg.population_size = population_size;
    cfg.generations = generations;
    cfg.crossover_rate = crossover_rate;
    cfg.mutation_rate = mutation_rate;
    cfg.elitism_count = elitism_count;
    cfg.seed = seed;
    if (fitness_metric == "rmse")
        cfg.fitness_metric = FitnessMetric::Rmse;
    else if (fitness_metric == "nrmse")
        cfg.fitness_metric = FitnessMetric::Nrmse;
    else
        throw ConfigError("fitness_metric must be 'rmse' or 'nrmse'");
    cfg.early_stop_stagnant = early_stop_stagnant;
    cfg.validation_fraction = validation_fraction;
    return cfg;
}

ModelKind kind_from_string(const std::string& name) {
    if (name == "nmr") return ModelKind::Nmr;
    if (name == "ntsk-rls") return ModelKind::NtskRls;
    if (name == "ntsk-wrls") return ModelKind::NtskWrls;
    throw ConfigError("model kind must be 'nmr', 'ntsk-rls' or 'ntsk-wrls'");
}

} // namespace

PYBIND11_MODULE(_nfis, m) {
    m.doc() = "Data-driven fuzzy inference systems (NMR, NTSK, genetic and "
              "ensemble variants) for one-step-ahead time-series forecasting";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<TimeSeriesFrame>(m, "TimeSeriesFrame")
        .def(py::init<>())
        .def_readwrite("column_names", &TimeSeriesFrame::column_names)
        .def_readwrite("columns", &TimeSeriesFrame::columns)
        .def_readwrite("timestamps", &TimeSeriesFrame::timestamps)
        .def("__len__", &TimeSeriesFrame::length);

    py::class_<RegressionDataset>(m, "RegressionDataset")
        .def(py::init<>())
        .def_readwrite("X", &RegressionDataset::X)
        .def_readwrite("y", &RegressionDataset::y)
        .def_readwrite("attribute_names", &RegressionDataset::attribute_names)
        .def_readwrite("target_name", &RegressionDataset::target_name)
        .def("__len__", &RegressionDataset::num_samples);

    py::class_<PyModel>(m, "Model")
        .def("predict_one", &PyModel::predict_one, py::arg("x"))
        .def("predict", &PyModel::predict, py::arg("rows"))
        .def_property_readonly("kind", &PyModel::kind)
        .def_property_readonly("rules", &PyModel::rules)
        .def_property_readonly("attributes", &PyModel::attributes)
        .def("rule_table_markdown", &PyModel::rule_table_markdown)
        .def("rule_table_csv", &PyModel::rule_table_csv)
        .def("save", &PyModel::save, py::arg("path"));

    m.def("load_csv", &load_csv, py::arg("path"), py::arg("target_column"),
          py::arg("drop_na") = true);
    m.def("make_supervised", &make_supervised, py::arg("frame"), py::arg("target"),
          py::arg("horizon") = 1, py::arg("lags") = 0);
    m.def("chronological_split", &chronological_split, py::arg("dataset"),
          py::arg("train_fraction"));
    m.def("save_dataset_csv", &save_dataset_csv, py::arg("dataset"), py::arg("path"));
    m.def("load_dataset_csv", &load_dataset_csv, py::arg("path"));

    m.def(
        "membership",
        [](double x, double mean, double std) { return membership(x, GaussianSet{mean, std}); },
        py::arg("x"), py::arg("mean"), py::arg("std"));
    m.def(
        "firing_degrees",
        [](const std::vector<double>& x,
           const std::vector<std::vector<std::pair<double, double>>>& rules) {
            std::vector<AntecedentRule> antecedents;
            for (const auto& sets : rules) {
                AntecedentRule rule;
                for (const auto& [mean, std] : sets) rule.sets.push_back(GaussianSet{mean, std});
                antecedents.push_back(std::move(rule));
            }
            return firing_degrees(x, antecedents);
        },
        py::arg("x"), py::arg("rules"),
        "Normalized rule activations; rules are lists of (mean, std) pairs");

    m.def(
        "fit_nmr",
        [](const RegressionDataset& ds, int r_max) { return PyModel{fit_nmr(ds, r_max)}; },
        py::arg("dataset"), py::arg("r_max"));
    m.def(
        "fit_ntsk",
        [](const RegressionDataset& ds, int r_max, const std::string& solver, double lambda) {
            const NtskSolver s = solver == "rls" ? NtskSolver::Rls : NtskSolver::Wrls;
            if (solver != "rls" && solver != "wrls")
                throw ConfigError("solver must be 'rls' or 'wrls'");
            return PyModel{fit_ntsk(ds, r_max, s, lambda)};
        },
        py::arg("dataset"), py::arg("r_max"), py::arg("solver") = "wrls",
        py::arg("lambda_") = 1.0);

    m.def(
        "run_ga",
        [](const std::string& kind, const RegressionDataset& train, int r_max, double lambda,
           int population_size, int generations, double crossover_rate, double mutation_rate,
           int elitism_count, std::uint64_t seed, const std::string& fitness_metric,
           int early_stop_stagnant, double validation_fraction) {
            const GaConfig cfg =
                make_ga_config(population_size, generations, crossover_rate, mutation_rate,
                               elitism_count, seed, fitness_metric, early_stop_stagnant,
                               validation_fraction);
            const GaResult result = run_ga(kind_from_string(kind), train, cfg,
                                           ModelHparams{r_max, lambda});
            std::vector<int> mask(result.best.mask.begin(), result.best.mask.end());
            std::vector<std::pair<int, double>> history;
            for (const auto& gen : result.history)
                history.emplace_back(gen.generation, gen.best_fitness);
            PyModel model{std::holds_alternative<NmrModel>(result.model)
                              ? ModelAny{std::get<NmrModel>(result.model)}
                              : ModelAny{std::get<NtskModel>(result.model)}};
            return py::make_tuple(mask, result.best.fitness, std::move(model), history);
        },
        py::arg("kind"), py::arg("train"), py::arg("r_max") = 4, py::arg("lambda_") = 1.0,
        py::arg("population_size") = 20, py::arg("generations") = 30,
        py::arg("crossover_rate") = 0.9, py::arg("mutation_rate") = -1.0,
        py::arg("elitism_count") = 1, py::arg("seed") = 42, py::arg("fitness_metric") = "rmse",
        py::arg("early_stop_stagnant") = 0, py::arg("validation_fraction") = 0.25,
        "Genetic feature selection; returns (mask, fitness, model, history)");

    m.def(
        "fit_random_ensemble",
        [](const std::string& kind, const RegressionDataset& ds, int n_members, int z,
           double subset_prob, std::uint64_t seed, int r_max, double lambda) {
            EnsembleConfig cfg;
            cfg.n_members = n_members;
            cfg.z = z;
            cfg.subset_prob = subset_prob;
            cfg.seed = seed;
            return PyModel{
                fit_random_ensemble(kind_from_string(kind), ds, cfg, ModelHparams{r_max, lambda})};
        },
        py::arg("kind"), py::arg("dataset"), py::arg("n_members") = 10, py::arg("z") = 5,
        py::arg("subset_prob") = 0.5, py::arg("seed") = 42, py::arg("r_max") = 4,
        py::arg("lambda_") = 1.0);

    m.def(
        "fit_random_forest",
        [](const RegressionDataset& ds, int n_trees, int max_depth, int min_samples_leaf,
           double feature_fraction, bool bootstrap, std::uint64_t seed) {
            ForestConfig cfg;
            cfg.n_trees = n_trees;
            cfg.max_depth = max_depth;
            cfg.min_samples_leaf = min_samples_leaf;
            cfg.feature_fraction = feature_fraction;
            cfg.bootstrap = bootstrap;
            cfg.seed = seed;
            return PyModel{fit_random_forest(ds, cfg)};
        },
        py::arg("dataset"), py::arg("n_trees") = 100, py::arg("max_depth") = 16,
        py::arg("min_samples_leaf") = 2, py::arg("feature_fraction") = -1.0,
        py::arg("bootstrap") = true, py::arg("seed") = 42);

    m.def(
        "fit_rf_ntsk",
        [](const RegressionDataset& ds, int n_trees, int n_members, int z, int r_max,
           std::uint64_t seed) {
            RfNtskConfig cfg;
            cfg.forest.n_trees = n_trees;
            cfg.forest.seed = seed;
            cfg.ensemble.n_members = n_members;
            cfg.ensemble.z = z;
            cfg.ensemble.seed = seed;
            cfg.ntsk_hparams = ModelHparams{r_max, 1.0};
            return PyModel{fit_rf_ntsk(ds, cfg)};
        },
        py::arg("dataset"), py::arg("n_trees") = 100, py::arg("n_members") = 10, py::arg("z") = 5,
        py::arg("r_max") = 4, py::arg("seed") = 42);

    m.def("rf_ntsk_combine", &rf_ntsk_combine, py::arg("y_rf"), py::arg("y_rntsk"),
          py::arg("eps_rf"), py::arg("eps_rntsk"));

    m.def("rmse", &rmse, py::arg("y"), py::arg("y_hat"));
    m.def("nrmse", &nrmse, py::arg("y"), py::arg("y_hat"));
    m.def("ndei", &ndei, py::arg("y"), py::arg("y_hat"));
    m.def("mape", &mape, py::arg("y"), py::arg("y_hat"));

    m.def(
        "grid_search",
        [](const std::string& kind, const std::vector<int>& r_max_values,
           const std::vector<double>& lambda_values, const RegressionDataset& train,
           const RegressionDataset& val) {
            GridSpec grid;
            grid.r_max_values = r_max_values;
            grid.lambda_values = lambda_values;
            const GridResult result = grid_search(kind_from_string(kind), grid, train, val);
            return py::make_tuple(result.best.r_max, result.best.lambda, result.best_error,
                                  result.best_rules);
        },
        py::arg("kind"), py::arg("r_max_values"), py::arg("lambda_values"), py::arg("train"),
        py::arg("val"), "Exhaustive search; returns (r_max, lambda, val_rmse, rules)");

    m.def(
        "load_model", [](const std::string& path) { return PyModel{load_model(path)}; },
        py::arg("path"));

    m.attr("__version__") = "0.1.0";
}
