#pragma once

#include "nfis/config.hpp"
#include "nfis/genetic.hpp"
#include "nfis/model_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nfis {

/// Everything produced while training one model spec on one training split.
struct TrainedModel {
    ModelAny model;
    std::optional<std::size_t> rules; // absent for ensembles and forests
    std::vector<GenerationStats> ga_history;
    std::optional<ModelHparams> grid_choice;
    std::vector<std::size_t> input_mask; // non-empty for GA-selected models:
                                         // project full rows before predicting

    double predict_row(const std::vector<double>& x) const;
    std::vector<double> predict_rows(const std::vector<std::vector<double>>& rows) const;
};

/// Trains a model spec end to end: optional grid search on an inner
/// chronological split, then the kind's own pipeline (plain fit, GA
/// selection, randomized ensemble, forest, or RF-NTSK) on the full split.
TrainedModel train_model(const ModelSpec& spec, const RegressionDataset& train,
                         std::uint64_t seed);

/// RF-NTSK convexity check: combined test RMSE never exceeds the worse of
/// the two component test RMSEs.
struct CombinerBound {
    double rmse_rf = 0.0;
    double rmse_rntsk = 0.0;
    double rmse_combined = 0.0;
    bool holds = false;
};

struct BenchmarkCell {
    std::string dataset_id;
    std::string model_id;
    bool ok = false;
    std::string error;
    MetricReport report;
    std::optional<CombinerBound> bound;
};

struct BenchmarkResult {
    std::uint64_t seed = 0;
    std::vector<BenchmarkCell> cells;
    std::string table_csv; // byte-stable given config + seed
};

/// Runs every dataset x model pair: load, split chronologically, train,
/// predict the test split, report NRMSE/NDEI/MAPE/rules. Failures are
/// logged per pair and the run continues. With write_files set, emits the
/// table CSV, one predictions CSV per pair, rule tables, GA histories and
/// a run log under cfg.output_dir.
BenchmarkResult run_benchmark(const RunConfig& cfg, bool write_files = true);

std::string render_benchmark_table(const BenchmarkResult& result);

} // namespace nfis
