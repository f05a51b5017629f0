#pragma once

#include "nfis/dataset.hpp"

#include <cstddef>
#include <vector>

namespace nfis {

/// Gaussian fuzzy set, parameterized by mean and standard deviation.
/// The stddev is kept at or above the floor chosen at fit time, so
/// membership evaluation never divides by zero.
struct GaussianSet {
    double mean = 0.0;
    double stddev = 1.0;
};

/// IF-part of one rule: one Gaussian set per selected attribute.
/// Feature masking happens before rule construction, so the sets cover
/// exactly the dataset the rule was fitted on.
struct AntecedentRule {
    std::vector<GaussianSet> sets;
};

/// exp(-((x - mean)^2) / (2 stddev^2)), strictly positive.
double membership(double x, const GaussianSet& set);

/// Log of the above; used to keep rule products finite for far inputs.
double log_membership(double x, const GaussianSet& set);

/// Normalized firing degrees over the retained rules: per-rule products of
/// attribute memberships normalized to sum to one. Computed in log space
/// with max subtraction, so far-from-all-rules inputs still yield a
/// well-defined weight vector.
std::vector<double> firing_degrees(const std::vector<double>& x,
                                   const std::vector<AntecedentRule>& rules);

/// Lower bound for fitted standard deviations: 1e-6 of the attribute's
/// training amplitude, or 1e-12 when the amplitude is zero.
double sigma_floor(double amplitude);

/// Per-attribute amplitude (max - min) over the dataset.
std::vector<double> attribute_amplitudes(const RegressionDataset& ds);

/// Mean and population standard deviation of `values`, stddev clamped to `floor`.
GaussianSet estimate_gaussian(const std::vector<double>& values, double floor);

/// One Gaussian set per attribute over the rows listed in `sample_indices`.
AntecedentRule estimate_antecedent(const RegressionDataset& ds,
                                   const std::vector<std::size_t>& sample_indices,
                                   const std::vector<double>& floors);

} // namespace nfis
