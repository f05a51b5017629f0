#pragma once

#include "nfis/dataset.hpp"
#include "nfis/fuzzy_core.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace nfis {

struct ValueRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// IS = (y_max - y_min) / r_max. Throws DataError("constant target") when
/// the amplitude is zero.
double interval_size(double y_min, double y_max, int r_max);

/// Range_i = [y_min + (i-1) IS, y_min + i IS] for i = 1..r_max. Adjacent
/// bounds are bitwise identical, so the ranges tile the amplitude with no
/// gaps or overlaps.
std::vector<ValueRange> rule_ranges(double y_min, double is, int r_max);

/// 1-based bin index of y: floor((y - y_min) / IS) + 1 clamped to
/// [1, r_max]; any y >= y_max maps to r_max. Out-of-range y clamps to the
/// nearest end rule.
int assign_rule(double y, double y_min, double y_max, double is, int r_max);

/// One Mamdani rule: Gaussian antecedents plus a Gaussian consequent
/// summarized by its mean/std and the target interval it covers.
struct NmrRule {
    AntecedentRule antecedent;
    double consequent_mean = 0.0;
    double consequent_std = 0.0; // kept for rule-table export only
    ValueRange range;
    std::size_t support = 0;
};

struct NmrModel {
    std::vector<NmrRule> rules; // empty bins dropped, so |rules| <= r_max
    int r_max = 1;
    double interval = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
    std::vector<std::string> attribute_names;
    std::vector<std::size_t> feature_mask; // original attribute indices
    std::string target_name = "target";
    int horizon = 1;
    int lags = 0;
};

/// Bins the training targets into r_max equal-width intervals, estimates
/// per-rule Gaussian antecedents and consequents, and drops empty bins.
NmrModel fit_nmr(const RegressionDataset& ds, int r_max);

/// Weighted mean of consequent means under the normalized firing degrees.
double predict_nmr(const NmrModel& model, const std::vector<double>& x);

std::vector<double> predict_nmr(const NmrModel& model,
                                const std::vector<std::vector<double>>& rows);

} // namespace nfis
