#pragma once

#include "nfis/dataset.hpp"
#include "nfis/fuzzy_core.hpp"
#include "nfis/nmr.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace nfis {

/// Consequent estimator: RLS trains each rule on its own samples with an
/// exponential forgetting factor; wRLS runs one recursion per rule over all
/// samples, each update weighted by the rule's normalized firing degree.
enum class NtskSolver { Rls, Wrls };

/// Recursive least-squares state for one rule's affine consequent.
struct RlsState {
    std::vector<double> theta;          // length p+1, intercept first
    std::vector<std::vector<double>> P; // (p+1) x (p+1), symmetric positive definite
};

/// Fresh state: theta = 0, P = initial_p * I.
RlsState make_rls_state(std::size_t dim, double initial_p = 1e8);

/// Exponentially-weighted RLS step with observation weight w in (0, 1]:
///   g = P x / (lambda / w + x' P x)
///   theta += g (y - x' theta)
///   P = (P - g x' P) / lambda, re-symmetrized.
/// Throws NumericError when the update goes non-finite (caller resets P).
void rls_update(RlsState& state, const std::vector<double>& x_ext, double y, double weight,
                double lambda);

/// Delta[k] = y[k+1] - y[k]; length T-1. Throws DataError for T < 2.
std::vector<double> target_variations(const std::vector<double>& y);

/// One TSK rule: Gaussian antecedents, an affine consequent, and the target
/// variation interval the rule covers.
struct NtskRule {
    AntecedentRule antecedent;
    std::vector<double> theta; // intercept + one coefficient per attribute
    ValueRange variation_range;
    std::size_t support = 0;
};

struct NtskModel {
    std::vector<NtskRule> rules;
    int r_max = 1;
    NtskSolver solver = NtskSolver::Wrls;
    double lambda = 1.0; // forgetting factor; fixed at 1 for wRLS
    double delta_min = 0.0;
    double delta_max = 0.0;
    std::vector<std::string> attribute_names;
    std::vector<std::size_t> feature_mask;
    std::string target_name = "target";
    int horizon = 1;
    int lags = 0;
};

/// Bins samples by the one-step variation of the target into r_max
/// equal-width intervals, estimates Gaussian antecedents per retained bin,
/// then fits affine consequents with the chosen solver. A constant-variation
/// series degrades to a single rule with a warning on stderr.
NtskModel fit_ntsk(const RegressionDataset& ds, int r_max,
                   NtskSolver solver = NtskSolver::Wrls, double lambda = 1.0);

/// Firing-degree-weighted sum of the per-rule affine outputs.
double predict_ntsk(const NtskModel& model, const std::vector<double>& x);

std::vector<double> predict_ntsk(const NtskModel& model,
                                 const std::vector<std::vector<double>>& rows);

/// Consequent-fitting passes, exposed for direct verification against
/// batch least-squares solutions.
std::vector<std::vector<double>> fit_consequents_rls(
    const RegressionDataset& ds, const std::vector<std::vector<std::size_t>>& rule_samples,
    double lambda);
std::vector<std::vector<double>> fit_consequents_wrls(
    const RegressionDataset& ds, const std::vector<AntecedentRule>& antecedents);

} // namespace nfis
