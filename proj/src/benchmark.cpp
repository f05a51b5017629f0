#include "nfis/benchmark.hpp"
#include "nfis/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace nfis {

namespace fs = std::filesystem;

namespace {

ModelKind base_kind(RunModelKind kind) {
    switch (kind) {
    case RunModelKind::Nmr:
    case RunModelKind::GenNmr:
    case RunModelKind::RNmr:
        return ModelKind::Nmr;
    case RunModelKind::NtskRls:
    case RunModelKind::GenNtskRls:
        return ModelKind::NtskRls;
    default:
        return ModelKind::NtskWrls;
    }
}

std::string sanitize(const std::string& id) {
    std::string out;
    for (char c : id)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

std::string fmt5(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

TrainedModel train_once(const ModelSpec& spec, const RegressionDataset& train,
                        const ModelHparams& hp, std::uint64_t seed) {
    TrainedModel out;
    const ModelKind kind = base_kind(spec.kind);
    switch (spec.kind) {
    case RunModelKind::Nmr:
    case RunModelKind::NtskRls:
    case RunModelKind::NtskWrls: {
        const FuzzyModel model = fit_fuzzy(kind, train, hp);
        out.rules = rule_count(model);
        if (std::holds_alternative<NmrModel>(model))
            out.model = std::get<NmrModel>(model);
        else
            out.model = std::get<NtskModel>(model);
        break;
    }
    case RunModelKind::GenNmr:
    case RunModelKind::GenNtskRls:
    case RunModelKind::GenNtskWrls: {
        GaConfig ga = spec.ga;
        ga.seed = seed;
        const GaResult result = run_ga(kind, train, ga, hp);
        out.rules = rule_count(result.model);
        out.ga_history = result.history;
        out.input_mask = mask_to_indices(result.best.mask);
        if (std::holds_alternative<NmrModel>(result.model))
            out.model = std::get<NmrModel>(result.model);
        else
            out.model = std::get<NtskModel>(result.model);
        break;
    }
    case RunModelKind::RNmr:
    case RunModelKind::RNtsk: {
        EnsembleConfig ecfg = spec.ensemble;
        ecfg.seed = seed;
        out.model = fit_random_ensemble(kind, train, ecfg, hp);
        break;
    }
    case RunModelKind::Rf: {
        ForestConfig fcfg = spec.forest;
        fcfg.seed = seed;
        out.model = fit_random_forest(train, fcfg);
        break;
    }
    case RunModelKind::RfNtsk: {
        RfNtskConfig rcfg;
        rcfg.forest = spec.forest;
        rcfg.forest.seed = seed;
        rcfg.ensemble = spec.ensemble;
        rcfg.ensemble.seed = seed;
        rcfg.ntsk_hparams = hp;
        rcfg.ntsk_kind = ModelKind::NtskWrls;
        out.model = fit_rf_ntsk(train, rcfg);
        break;
    }
    }
    return out;
}

} // namespace

double TrainedModel::predict_row(const std::vector<double>& x) const {
    return input_mask.empty() ? predict_any(model, x) : predict_any(model, apply_mask(x, input_mask));
}

std::vector<double> TrainedModel::predict_rows(const std::vector<std::vector<double>>& rows) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(predict_row(row));
    return out;
}

TrainedModel train_model(const ModelSpec& spec, const RegressionDataset& train,
                         std::uint64_t seed) {
    ModelHparams hp = spec.hparams;
    std::optional<ModelHparams> choice;
    if (spec.grid) {
        // Hyperparameters are chosen on an inner chronological split, then
        // the winning point is retrained on the full training data.
        const auto [inner_train, inner_val] = chronological_split(train, 0.75);
        double best_error = std::numeric_limits<double>::infinity();
        std::size_t best_rules = 0;
        bool have_best = false;
        std::vector<double> lambdas = spec.grid->lambda_values;
        if (lambdas.empty() || base_kind(spec.kind) != ModelKind::NtskRls)
            lambdas = {spec.hparams.lambda};
        for (int r_max : spec.grid->r_max_values) {
            for (double lambda : lambdas) {
                const ModelHparams point{r_max, lambda};
                double error = std::numeric_limits<double>::infinity();
                std::size_t rules = 0;
                try {
                    const TrainedModel candidate = train_once(spec, inner_train, point, seed);
                    error = rmse(inner_val.y, candidate.predict_rows(inner_val.X));
                    rules = candidate.rules.value_or(0);
                } catch (const std::exception&) {
                    // failed grid point scores +infinity
                }
                const bool better = !have_best || error < best_error ||
                                    (error == best_error && rules < best_rules);
                if (better) {
                    best_error = error;
                    best_rules = rules;
                    hp = point;
                    have_best = true;
                }
            }
        }
        choice = hp;
    }
    TrainedModel out = train_once(spec, train, hp, seed);
    out.grid_choice = choice;
    return out;
}

BenchmarkResult run_benchmark(const RunConfig& cfg, bool write_files) {
    BenchmarkResult result;
    result.seed = cfg.seed;

    std::ostringstream log;
    log << "seed=" << cfg.seed << '\n';
    log << "config:\n" << serialize_config(cfg) << '\n';

    if (write_files) fs::create_directories(cfg.output_dir);

    for (const auto& dspec : cfg.datasets) {
        RegressionDataset train, test;
        bool data_ok = true;
        std::string data_error;
        try {
            const TimeSeriesFrame frame = load_csv(dspec.path, dspec.target, dspec.drop_na);
            const RegressionDataset ds =
                make_supervised(frame, dspec.target, dspec.horizon, dspec.lags);
            std::tie(train, test) = chronological_split(ds, cfg.split_fraction);
        } catch (const std::exception& e) {
            data_ok = false;
            data_error = e.what();
        }

        for (const auto& mspec : cfg.models) {
            BenchmarkCell cell;
            cell.dataset_id = dspec.id;
            cell.model_id = mspec.id;
            if (!data_ok) {
                cell.error = data_error;
                log << "[fail] dataset=" << dspec.id << " model=" << mspec.id << ": "
                    << data_error << '\n';
                result.cells.push_back(std::move(cell));
                continue;
            }
            try {
                const TrainedModel trained = train_model(mspec, train, cfg.seed);
                const std::vector<double> y_hat = trained.predict_rows(test.X);
                cell.report = evaluate(test.y, y_hat, mspec.id, dspec.id, trained.rules,
                                       cfg.mape_zero_policy, cfg.mape_epsilon);
                cell.ok = true;

                if (const auto* combined = std::get_if<RfNtskModel>(&trained.model)) {
                    CombinerBound bound;
                    bound.rmse_rf = rmse(test.y, predict_forest(combined->forest, test.X));
                    bound.rmse_rntsk = rmse(test.y, predict_ensemble(combined->rntsk, test.X));
                    bound.rmse_combined = cell.report.rmse;
                    bound.holds =
                        bound.rmse_combined <= std::max(bound.rmse_rf, bound.rmse_rntsk);
                    cell.bound = bound;
                    log << "[bound] dataset=" << dspec.id << " model=" << mspec.id
                        << " rf=" << fmt_g(bound.rmse_rf) << " rntsk=" << fmt_g(bound.rmse_rntsk)
                        << " combined=" << fmt_g(bound.rmse_combined)
                        << (bound.holds ? " holds" : " VIOLATED") << '\n';
                }

                log << "[ok] dataset=" << dspec.id << " model=" << mspec.id
                    << " nrmse=" << fmt5(cell.report.nrmse);
                if (cell.report.rules) log << " rules=" << *cell.report.rules;
                if (trained.grid_choice)
                    log << " grid_r_max=" << trained.grid_choice->r_max;
                log << '\n';

                if (write_files) {
                    const std::string stem =
                        sanitize(dspec.id) + "_" + sanitize(mspec.id);
                    // predictions: index, y, yhat
                    std::ofstream pred(fs::path(cfg.output_dir) / ("predictions_" + stem + ".csv"));
                    pred << "index,y,y_hat\n";
                    for (std::size_t k = 0; k < test.y.size(); ++k)
                        pred << k << ',' << fmt_g(test.y[k]) << ',' << fmt_g(y_hat[k]) << '\n';

                    if (std::holds_alternative<NmrModel>(trained.model) ||
                        std::holds_alternative<NtskModel>(trained.model)) {
                        std::ofstream rules(fs::path(cfg.output_dir) / ("rules_" + stem + ".md"));
                        rules << render_markdown(export_rule_table_any(trained.model));
                    }
                    if (!trained.ga_history.empty())
                        write_ga_history_csv(
                            (fs::path(cfg.output_dir) / ("ga_history_" + stem + ".csv")).string(),
                            trained.ga_history);
                }
            } catch (const std::exception& e) {
                cell.error = e.what();
                log << "[fail] dataset=" << dspec.id << " model=" << mspec.id << ": " << e.what()
                    << '\n';
            }
            result.cells.push_back(std::move(cell));
        }
    }

    result.table_csv = render_benchmark_table(result);
    if (write_files) {
        std::ofstream table(fs::path(cfg.output_dir) / "benchmark.csv");
        table << result.table_csv;
        std::ofstream run_log(fs::path(cfg.output_dir) / "run.log");
        run_log << log.str();
    }
    return result;
}

std::string render_benchmark_table(const BenchmarkResult& result) {
    std::ostringstream out;
    out << "# seed=" << result.seed << '\n';
    out << "dataset,model,nrmse,ndei,mape,rmse,rules,status\n";
    for (const auto& cell : result.cells) {
        out << cell.dataset_id << ',' << cell.model_id << ',';
        if (cell.ok) {
            out << fmt5(cell.report.nrmse) << ',' << fmt5(cell.report.ndei) << ','
                << fmt5(cell.report.mape) << ',' << fmt_g(cell.report.rmse) << ',';
            if (cell.report.rules)
                out << *cell.report.rules;
            else
                out << '-';
            out << ",ok\n";
        } else {
            out << ",,,,-,failed\n";
        }
    }
    return out.str();
}

} // namespace nfis
