#include <CLI11.hpp>

#include "nfis/benchmark.hpp"
#include "nfis/errors.hpp"
#include "nfis/grid_search.hpp"
#include "nfis/model_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace nfis;

namespace {

struct LoadedSplit {
    RegressionDataset full;
    RegressionDataset train;
    RegressionDataset test;
};

LoadedSplit load_split(const RunConfig& cfg, const DatasetSpec& spec) {
    LoadedSplit out;
    const TimeSeriesFrame frame = load_csv(spec.path, spec.target, spec.drop_na);
    out.full = make_supervised(frame, spec.target, spec.horizon, spec.lags);
    std::tie(out.train, out.test) = chronological_split(out.full, cfg.split_fraction);
    return out;
}

void print_metrics(const char* label, const MetricReport& report) {
    std::printf("%s nrmse=%.5f ndei=%.5f mape=%.5f rmse=%.8g", label, report.nrmse, report.ndei,
                report.mape, report.rmse);
    if (report.rules) std::printf(" rules=%zu", *report.rules);
    if (report.mape_skipped > 0) std::printf(" mape_skipped=%zu", report.mape_skipped);
    std::printf("\n");
}

int cmd_fit(const std::string& config_path, const std::string& dataset_id,
            const std::string& model_id, const std::string& out_path) {
    const RunConfig cfg = parse_config(config_path);
    const DatasetSpec& dspec = find_dataset(cfg, dataset_id);
    const ModelSpec& mspec = find_model(cfg, model_id);
    const LoadedSplit split = load_split(cfg, dspec);

    TrainedModel trained = train_model(mspec, split.train, cfg.seed);
    set_supervision(trained.model, dspec.horizon, dspec.lags);

    const std::vector<double> y_hat = trained.predict_rows(split.test.X);
    const MetricReport report = evaluate(split.test.y, y_hat, mspec.id, dspec.id, trained.rules,
                                         cfg.mape_zero_policy, cfg.mape_epsilon);
    print_metrics("test:", report);
    if (trained.grid_choice)
        std::printf("grid: r_max=%d lambda=%g\n", trained.grid_choice->r_max,
                    trained.grid_choice->lambda);

    if (!out_path.empty()) {
        save_model(trained.model, out_path);
        std::printf("model written to %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path, bool supervised) {
    const ModelAny model = load_model(model_path);
    const InputShape shape = input_shape(model);

    RegressionDataset ds;
    if (supervised) {
        ds = load_dataset_csv(data_path);
    } else {
        const TimeSeriesFrame frame = load_csv(data_path, shape.target_name, true);
        ds = make_supervised(frame, shape.target_name, shape.horizon, shape.lags);
    }

    // Project the input columns onto the model's expected attributes.
    std::vector<std::size_t> keep;
    for (const auto& name : shape.attribute_names) {
        const auto it = std::find(ds.attribute_names.begin(), ds.attribute_names.end(), name);
        if (it == ds.attribute_names.end())
            throw DataError(data_path + ": missing attribute column: " + name);
        keep.push_back(static_cast<std::size_t>(it - ds.attribute_names.begin()));
    }
    const RegressionDataset projected = select_attributes(ds, keep);
    const std::vector<double> y_hat = predict_any(model, projected.X);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw DataError("cannot write file: " + out_path);
        out = &file;
    }
    char buf[64];
    *out << "index,y,y_hat\n";
    for (std::size_t k = 0; k < y_hat.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g", k, projected.y[k], y_hat[k]);
        *out << buf << '\n';
    }
    if (!projected.y.empty()) {
        const MetricReport report = evaluate(projected.y, y_hat, "model", "data");
        print_metrics("metrics:", report);
    }
    return 0;
}

int cmd_benchmark(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = parse_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    const BenchmarkResult result = run_benchmark(cfg);
    std::cout << result.table_csv;
    std::cout << "artifacts written to " << cfg.output_dir << "\n";
    const bool any_ok =
        std::any_of(result.cells.begin(), result.cells.end(), [](const auto& c) { return c.ok; });
    if (!any_ok) throw DataError("every benchmark pair failed; see run.log");
    return 0;
}

int cmd_grid_search(const std::string& config_path, const std::string& dataset_id,
                    const std::string& model_id, const std::string& out_path) {
    const RunConfig cfg = parse_config(config_path);
    const DatasetSpec& dspec = find_dataset(cfg, dataset_id);
    const ModelSpec& mspec = find_model(cfg, model_id);
    if (!mspec.grid) throw ConfigError("model \"" + mspec.id + "\" has no grid block");
    ModelKind kind;
    switch (mspec.kind) {
    case RunModelKind::Nmr: kind = ModelKind::Nmr; break;
    case RunModelKind::NtskRls: kind = ModelKind::NtskRls; break;
    case RunModelKind::NtskWrls: kind = ModelKind::NtskWrls; break;
    default:
        throw ConfigError("grid-search runs on base kinds (nmr, ntsk-rls, ntsk-wrls); "
                          "wrapper kinds run their grids inside fit and benchmark");
    }

    const LoadedSplit split = load_split(cfg, dspec);
    const auto [inner_train, inner_val] = chronological_split(split.train, 0.75);
    const GridResult result = grid_search(kind, *mspec.grid, inner_train, inner_val);
    std::printf("best: r_max=%d lambda=%g val_rmse=%.8g rules=%zu\n", result.best.r_max,
                result.best.lambda, result.best_error, result.best_rules);

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw DataError("cannot write file: " + out_path);
        out << "r_max,lambda,val_rmse,rules,failed\n";
        char buf[128];
        for (const auto& eval : result.evaluations) {
            std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g,%zu,%d", eval.config.r_max,
                          eval.config.lambda, eval.error, eval.rules, eval.failed ? 1 : 0);
            out << buf << '\n';
        }
        std::printf("evaluations written to %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_ga_select(const std::string& config_path, const std::string& dataset_id,
                  const std::string& model_id, const std::string& out_path,
                  const std::string& history_path) {
    const RunConfig cfg = parse_config(config_path);
    const DatasetSpec& dspec = find_dataset(cfg, dataset_id);
    const ModelSpec& mspec = find_model(cfg, model_id);

    ModelKind kind;
    switch (mspec.kind) {
    case RunModelKind::GenNmr: kind = ModelKind::Nmr; break;
    case RunModelKind::GenNtskRls: kind = ModelKind::NtskRls; break;
    case RunModelKind::GenNtskWrls: kind = ModelKind::NtskWrls; break;
    default:
        throw ConfigError("ga-select needs a gen-* model kind, got \"" +
                          std::string(run_model_kind_name(mspec.kind)) + "\"");
    }

    const LoadedSplit split = load_split(cfg, dspec);
    GaConfig ga = mspec.ga;
    ga.seed = cfg.seed;
    const GaResult result = run_ga(kind, split.train, ga, mspec.hparams);

    std::printf("best mask=%s fitness=%.8g generations=%zu\n",
                mask_to_string(result.best.mask).c_str(), result.best.fitness,
                result.history.size() - 1);
    std::printf("selected attributes:");
    for (std::size_t j = 0; j < result.best.mask.size(); ++j)
        if (result.best.mask[j]) std::printf(" %s", split.train.attribute_names[j].c_str());
    std::printf("\n");

    if (!history_path.empty()) {
        write_ga_history_csv(history_path, result.history);
        std::printf("history written to %s\n", history_path.c_str());
    }
    if (!out_path.empty()) {
        ModelAny model = std::holds_alternative<NmrModel>(result.model)
                             ? ModelAny{std::get<NmrModel>(result.model)}
                             : ModelAny{std::get<NtskModel>(result.model)};
        set_supervision(model, dspec.horizon, dspec.lags);
        save_model(model, out_path);
        std::printf("model written to %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_ensemble_fit(const std::string& config_path, const std::string& dataset_id,
                     const std::string& model_id, const std::string& out_path) {
    const RunConfig cfg = parse_config(config_path);
    const DatasetSpec& dspec = find_dataset(cfg, dataset_id);
    const ModelSpec& mspec = find_model(cfg, model_id);
    if (mspec.kind != RunModelKind::RNmr && mspec.kind != RunModelKind::RNtsk &&
        mspec.kind != RunModelKind::Rf && mspec.kind != RunModelKind::RfNtsk)
        throw ConfigError("ensemble-fit needs an ensemble kind (r-nmr, r-ntsk, rf, rf-ntsk)");

    const LoadedSplit split = load_split(cfg, dspec);
    TrainedModel trained = train_model(mspec, split.train, cfg.seed);
    set_supervision(trained.model, dspec.horizon, dspec.lags);

    const std::vector<double> y_hat = predict_any(trained.model, split.test.X);
    const MetricReport report = evaluate(split.test.y, y_hat, mspec.id, dspec.id, std::nullopt,
                                         cfg.mape_zero_policy, cfg.mape_epsilon);
    print_metrics("test:", report);
    if (const auto* combined = std::get_if<RfNtskModel>(&trained.model))
        std::printf("weights: eps_rf=%.8g eps_rntsk=%.8g\n", combined->eps_rf,
                    combined->eps_rntsk);

    if (!out_path.empty()) {
        save_model(trained.model, out_path);
        std::printf("model written to %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_export_rules(const std::string& model_path, const std::string& out_path,
                     const std::string& format) {
    const ModelAny model = load_model(model_path);
    const RuleTable table = export_rule_table_any(model);
    const std::string rendered = format == "csv" ? render_csv(table) : render_markdown(table);
    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(out_path);
        if (!out) throw DataError("cannot write file: " + out_path);
        out << rendered;
        std::printf("rule table written to %s\n", out_path.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nfis: data-driven fuzzy inference systems for time-series forecasting"};
    app.require_subcommand(1);

    std::string config_path, dataset_id, model_id, model_path, data_path, out_path, out_dir;
    std::string history_path, format = "md";
    bool supervised = false;

    auto* fit = app.add_subcommand("fit", "train one model on one dataset");
    fit->add_option("--config", config_path, "run config JSON")->required();
    fit->add_option("--dataset", dataset_id, "dataset id (optional when unique)");
    fit->add_option("--model", model_id, "model id (optional when unique)");
    fit->add_option("--out", out_path, "file for the trained model JSON");

    auto* predict = app.add_subcommand("predict", "apply a saved model to a CSV");
    predict->add_option("--model", model_path, "trained model JSON")->required();
    predict->add_option("--data", data_path, "input CSV")->required();
    predict->add_option("--out", out_path, "predictions CSV (default stdout)");
    predict->add_flag("--supervised", supervised,
                      "input is an exported dataset CSV, not a raw series");

    auto* benchmark = app.add_subcommand("benchmark", "run every dataset x model pair");
    benchmark->add_option("--config", config_path, "run config JSON")->required();
    benchmark->add_option("--out-dir", out_dir, "output directory (overrides config)");

    auto* grid = app.add_subcommand("grid-search", "exhaustive hyperparameter search");
    grid->add_option("--config", config_path, "run config JSON")->required();
    grid->add_option("--dataset", dataset_id, "dataset id (optional when unique)");
    grid->add_option("--model", model_id, "model id (optional when unique)");
    grid->add_option("--out", out_path, "evaluations CSV");

    auto* ga = app.add_subcommand("ga-select", "genetic feature selection");
    ga->add_option("--config", config_path, "run config JSON")->required();
    ga->add_option("--dataset", dataset_id, "dataset id (optional when unique)");
    ga->add_option("--model", model_id, "model id (optional when unique)");
    ga->add_option("--out", out_path, "file for the refit model JSON");
    ga->add_option("--history", history_path, "per-generation history CSV");

    auto* ensemble = app.add_subcommand("ensemble-fit", "fit a randomized ensemble");
    ensemble->add_option("--config", config_path, "run config JSON")->required();
    ensemble->add_option("--dataset", dataset_id, "dataset id (optional when unique)");
    ensemble->add_option("--model", model_id, "model id (optional when unique)");
    ensemble->add_option("--out", out_path, "file for the ensemble manifest JSON");

    auto* rules = app.add_subcommand("export-rules", "render the rule table of a saved model");
    rules->add_option("--model", model_path, "trained model JSON")->required();
    rules->add_option("--out", out_path, "output file (default stdout)");
    rules->add_option("--format", format, "md or csv")->check(CLI::IsMember({"md", "csv"}));

    try {
        app.parse(argc, argv);
        if (fit->parsed()) return cmd_fit(config_path, dataset_id, model_id, out_path);
        if (predict->parsed()) return cmd_predict(model_path, data_path, out_path, supervised);
        if (benchmark->parsed()) return cmd_benchmark(config_path, out_dir);
        if (grid->parsed()) return cmd_grid_search(config_path, dataset_id, model_id, out_path);
        if (ga->parsed()) return cmd_ga_select(config_path, dataset_id, model_id, out_path,
                                               history_path);
        if (ensemble->parsed()) return cmd_ensemble_fit(config_path, dataset_id, model_id, out_path);
        if (rules->parsed()) return cmd_export_rules(model_path, out_path, format);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage problems are config errors
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
