#pragma once

#include "nfis/ensemble.hpp"
#include "nfis/model.hpp"
#include "nfis/rule_table.hpp"

#include <string>
#include <variant>

namespace nfis {

/// Any trained predictor the CLI can save and reload.
using ModelAny = std::variant<NmrModel, NtskModel, Ensemble, RandomForest, RfNtskModel>;

double predict_any(const ModelAny& model, const std::vector<double>& x);
std::vector<double> predict_any(const ModelAny& model,
                                const std::vector<std::vector<double>>& rows);

/// How a saved model expects its inputs: attribute names in input order
/// (the masked subset for fuzzy models, the original list for ensembles
/// and forests) plus the supervision parameters recorded at fit time.
struct InputShape {
    std::vector<std::string> attribute_names;
    std::string target_name = "target";
    int horizon = 1;
    int lags = 0;
};

InputShape input_shape(const ModelAny& model);

/// Records the supervision parameters used at fit time on the model so a
/// reloaded model can rebuild its inputs from a raw series.
void set_supervision(ModelAny& model, int horizon, int lags);

/// Saves a model as self-describing JSON next to `path`. Ensembles write a
/// manifest at `path` plus one model file per member (path stem +
/// "_member_<i>.json"); RF-NTSK writes a manifest referencing its forest
/// and ensemble files.
void save_model(const ModelAny& model, const std::string& path);
ModelAny load_model(const std::string& path);

/// Rule table for rule-based models; throws ConfigError
/// ("not a single rule-based model") for ensembles, forests and RF-NTSK.
RuleTable export_rule_table_any(const ModelAny& model);

} // namespace nfis
