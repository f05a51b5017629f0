#include "nfis/fuzzy_core.hpp"
#include "nfis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nfis {

double membership(double x, const GaussianSet& set) {
    const double t = (x - set.mean) / set.stddev;
    return std::exp(-0.5 * t * t);
}

double log_membership(double x, const GaussianSet& set) {
    const double t = (x - set.mean) / set.stddev;
    return -0.5 * t * t;
}

std::vector<double> firing_degrees(const std::vector<double>& x,
                                   const std::vector<AntecedentRule>& rules) {
    if (rules.empty()) throw ConfigError("firing_degrees: no rules");
    const std::size_t p = rules.front().sets.size();
    if (x.size() != p)
        throw ConfigError("firing_degrees: input has " + std::to_string(x.size()) +
                          " attributes, rules expect " + std::to_string(p));

    std::vector<double> logs(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const AntecedentRule& rule = rules[i];
        if (rule.sets.size() != p)
            throw ConfigError("firing_degrees: inconsistent rule dimensions");
        double acc = 0.0;
        for (std::size_t j = 0; j < p; ++j) acc += log_membership(x[j], rule.sets[j]);
        logs[i] = acc;
    }

    const double max_log = *std::max_element(logs.begin(), logs.end());
    std::vector<double> w(rules.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::exp(logs[i] - max_log);
        sum += w[i];
    }
    for (double& wi : w) wi /= sum;
    return w;
}

double sigma_floor(double amplitude) {
    const double floor = 1e-6 * std::abs(amplitude);
    return floor > 0.0 ? floor : 1e-12;
}

std::vector<double> attribute_amplitudes(const RegressionDataset& ds) {
    const std::size_t p = ds.num_attributes();
    std::vector<double> lo(p, std::numeric_limits<double>::infinity());
    std::vector<double> hi(p, -std::numeric_limits<double>::infinity());
    for (const auto& row : ds.X)
        for (std::size_t j = 0; j < p; ++j) {
            lo[j] = std::min(lo[j], row[j]);
            hi[j] = std::max(hi[j], row[j]);
        }
    std::vector<double> amp(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) amp[j] = ds.X.empty() ? 0.0 : hi[j] - lo[j];
    return amp;
}

GaussianSet estimate_gaussian(const std::vector<double>& values, double floor) {
    if (values.empty()) throw DataError("estimate_gaussian: no samples");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size()); // population convention
    const double sd = std::sqrt(var);
    return GaussianSet{mean, std::max(sd, floor)};
}

AntecedentRule estimate_antecedent(const RegressionDataset& ds,
                                   const std::vector<std::size_t>& sample_indices,
                                   const std::vector<double>& floors) {
    const std::size_t p = ds.num_attributes();
    AntecedentRule rule;
    rule.sets.reserve(p);
    std::vector<double> values(sample_indices.size());
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t s = 0; s < sample_indices.size(); ++s)
            values[s] = ds.X[sample_indices[s]][j];
        rule.sets.push_back(estimate_gaussian(values, floors[j]));
    }
    return rule;
}

} // namespace nfis
