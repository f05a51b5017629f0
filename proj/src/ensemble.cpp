#include "nfis/ensemble.hpp"
#include "nfis/errors.hpp"
#include "nfis/genetic.hpp"
#include "nfis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace nfis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::uint8_t> draw_mask(std::size_t p, double subset_prob, std::mt19937_64& rng) {
    std::bernoulli_distribution keep(subset_prob);
    std::vector<std::uint8_t> mask(p);
    for (auto& bit : mask) bit = keep(rng) ? 1 : 0;
    repair(mask, rng);
    return mask;
}

} // namespace

Ensemble fit_random_ensemble(ModelKind kind, const RegressionDataset& ds,
                             const EnsembleConfig& cfg, const ModelHparams& hp) {
    if (cfg.n_members < 1) throw ConfigError("ensemble: n_members must be >= 1");
    if (cfg.z < 1) throw ConfigError("ensemble: z must be >= 1");
    if (!(cfg.subset_prob > 0.0 && cfg.subset_prob <= 1.0))
        throw ConfigError("ensemble: subset_prob outside (0, 1]");

    const auto [inner_train, inner_val] = chronological_split(ds, 1.0 - cfg.validation_fraction);
    const std::size_t p = ds.num_attributes();
    std::mt19937_64 rng(cfg.seed);

    Ensemble ensemble;
    ensemble.combination = cfg.combination;
    ensemble.n_members = cfg.n_members;
    ensemble.z = cfg.z;
    ensemble.attribute_names = ds.attribute_names;
    ensemble.target_name = ds.target_name;

    for (int round = 0; round < cfg.n_members; ++round) {
        EnsembleRound diag;
        std::vector<std::uint8_t> best_mask;
        double best_error = kInf;
        for (int cand = 0; cand < cfg.z; ++cand) {
            const std::vector<std::uint8_t> mask = draw_mask(p, cfg.subset_prob, rng);
            const double err =
                evaluate_fitness(mask, kind, inner_train, inner_val, hp, FitnessMetric::Rmse);
            diag.candidate_errors.push_back(err);
            if (err < best_error) {
                best_error = err;
                best_mask = mask;
            }
        }
        if (best_mask.empty())
            throw NumericError("fit_random_ensemble: every candidate failed to fit");
        diag.selected_error = best_error;

        EnsembleMember member;
        member.mask = mask_to_indices(best_mask);
        member.validation_error = best_error;
        RegressionDataset masked = select_attributes(ds, member.mask);
        member.model = fit_fuzzy(kind, masked, hp);
        std::visit([&](auto& m) { m.feature_mask = member.mask; }, member.model);
        ensemble.members.push_back(std::move(member));
        ensemble.rounds.push_back(std::move(diag));
    }
    return ensemble;
}

double predict_ensemble(const Ensemble& e, const std::vector<double>& x) {
    if (e.members.empty()) throw ConfigError("predict_ensemble: empty ensemble");
    if (e.combination == EnsembleCombination::ErrorWeighted) {
        double num = 0.0, den = 0.0;
        for (const auto& member : e.members) {
            const double w = 1.0 / std::max(member.validation_error, 1e-12);
            num += w * predict(member.model, apply_mask(x, member.mask));
            den += w;
        }
        return num / den;
    }
    double acc = 0.0;
    for (const auto& member : e.members)
        acc += predict(member.model, apply_mask(x, member.mask));
    return acc / static_cast<double>(e.members.size());
}

std::vector<double> predict_ensemble(const Ensemble& e,
                                     const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(predict_ensemble(e, row));
    return out;
}

double rf_ntsk_combine(double y_rf, double y_rntsk, double eps_rf, double eps_rntsk) {
    if (eps_rf < 0.0 || eps_rntsk < 0.0) throw ConfigError("rf_ntsk_combine: negative error");
    const double total = eps_rf + eps_rntsk;
    if (total == 0.0) return 0.5 * y_rf + 0.5 * y_rntsk;
    return y_rf * (eps_rntsk / total) + y_rntsk * (eps_rf / total);
}

RfNtskModel fit_rf_ntsk(const RegressionDataset& ds, const RfNtskConfig& cfg) {
    const auto [head, tail] = chronological_split(ds, 1.0 - cfg.validation_fraction);

    RfNtskModel model;
    const RandomForest head_forest = fit_random_forest(head, cfg.forest);
    const Ensemble head_rntsk =
        fit_random_ensemble(cfg.ntsk_kind, head, cfg.ensemble, cfg.ntsk_hparams);
    model.eps_rf = rmse(tail.y, predict_forest(head_forest, tail.X));
    model.eps_rntsk = rmse(tail.y, predict_ensemble(head_rntsk, tail.X));

    model.forest = fit_random_forest(ds, cfg.forest);
    model.rntsk = fit_random_ensemble(cfg.ntsk_kind, ds, cfg.ensemble, cfg.ntsk_hparams);
    return model;
}

double predict_rf_ntsk(const RfNtskModel& model, const std::vector<double>& x) {
    return rf_ntsk_combine(predict_forest(model.forest, x), predict_ensemble(model.rntsk, x),
                           model.eps_rf, model.eps_rntsk);
}

std::vector<double> predict_rf_ntsk(const RfNtskModel& model,
                                    const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(predict_rf_ntsk(model, row));
    return out;
}

} // namespace nfis
