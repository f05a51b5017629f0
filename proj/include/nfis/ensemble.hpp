#pragma once

#include "nfis/dataset.hpp"
#include "nfis/forest.hpp"
#include "nfis/model.hpp"

#include <cstdint>
#include <vector>

namespace nfis {

enum class EnsembleCombination { Mean, ErrorWeighted };

struct EnsembleMember {
    std::vector<std::size_t> mask; // selected attribute indices, original space
    FuzzyModel model;
    double validation_error = 0.0; // winning candidate's error, pre-refit
};

/// Per-round diagnostics: the errors of all z candidates and the winner.
struct EnsembleRound {
    std::vector<double> candidate_errors;
    double selected_error = 0.0;
};

struct Ensemble {
    std::vector<EnsembleMember> members;
    EnsembleCombination combination = EnsembleCombination::Mean;
    int n_members = 0;
    int z = 0;
    std::vector<std::string> attribute_names; // original input space
    std::string target_name = "target";
    int horizon = 1;
    int lags = 0;
    std::vector<EnsembleRound> rounds; // training diagnostics, not serialized
};

struct EnsembleConfig {
    int n_members = 10;
    int z = 5;
    double subset_prob = 0.5;
    EnsembleCombination combination = EnsembleCombination::Mean;
    std::uint64_t seed = 42;
    double validation_fraction = 0.25;
};

/// Repeats n_members times: draw z random attribute masks (each attribute
/// kept with subset_prob, repaired to non-empty), train z candidates on the
/// head of the training split, and keep the one with the lowest error on
/// the chronological validation tail, refit on the full split.
Ensemble fit_random_ensemble(ModelKind kind, const RegressionDataset& ds,
                             const EnsembleConfig& cfg, const ModelHparams& hp);

/// Unweighted mean of member predictions (inverse-validation-error weights
/// when the ensemble was built with ErrorWeighted). `x` is a full input
/// vector; members apply their own masks.
double predict_ensemble(const Ensemble& e, const std::vector<double>& x);
std::vector<double> predict_ensemble(const Ensemble& e,
                                     const std::vector<std::vector<double>>& rows);

/// Error-inverse weighted average of the random-forest and R-NTSK outputs:
///   y = y_rf * e_rntsk / (e_rf + e_rntsk) + y_rntsk * e_rf / (e_rf + e_rntsk).
/// Both errors zero falls back to equal weights.
double rf_ntsk_combine(double y_rf, double y_rntsk, double eps_rf, double eps_rntsk);

/// Random forest + R-NTSK pair with the held-out training errors that set
/// the combination weights.
struct RfNtskModel {
    RandomForest forest;
    Ensemble rntsk;
    double eps_rf = 0.0;    // RMSE of the forest on the validation tail
    double eps_rntsk = 0.0; // RMSE of the R-NTSK ensemble on the same tail
};

struct RfNtskConfig {
    ForestConfig forest;
    EnsembleConfig ensemble;
    ModelHparams ntsk_hparams;
    ModelKind ntsk_kind = ModelKind::NtskWrls;
    double validation_fraction = 0.25;
};

/// Fits both sides on the head of the training split to estimate their
/// errors on the chronological tail, then refits each on the full split.
RfNtskModel fit_rf_ntsk(const RegressionDataset& ds, const RfNtskConfig& cfg);

double predict_rf_ntsk(const RfNtskModel& model, const std::vector<double>& x);
std::vector<double> predict_rf_ntsk(const RfNtskModel& model,
                                    const std::vector<std::vector<double>>& rows);

} // namespace nfis
