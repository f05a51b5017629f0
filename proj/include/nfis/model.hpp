#pragma once

#include "nfis/nmr.hpp"
#include "nfis/ntsk.hpp"

#include <variant>

namespace nfis {

/// Base fuzzy model kinds trainable by the GA wrapper and the ensembles.
enum class ModelKind { Nmr, NtskRls, NtskWrls };

struct ModelHparams {
    int r_max = 4;
    double lambda = 0.95; // RLS forgetting factor; ignored elsewhere
};

using FuzzyModel = std::variant<NmrModel, NtskModel>;

FuzzyModel fit_fuzzy(ModelKind kind, const RegressionDataset& ds, const ModelHparams& hp);

double predict(const FuzzyModel& model, const std::vector<double>& x);
std::vector<double> predict(const FuzzyModel& model,
                            const std::vector<std::vector<double>>& rows);

std::size_t rule_count(const FuzzyModel& model);

const char* model_kind_name(ModelKind kind);

} // namespace nfis
