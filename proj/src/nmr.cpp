#include "nfis/nmr.hpp"
#include "nfis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nfis {

double interval_size(double y_min, double y_max, int r_max) {
    if (r_max < 1) throw ConfigError("r_max must be >= 1");
    if (!(y_max > y_min)) throw DataError("constant target");
    return (y_max - y_min) / static_cast<double>(r_max);
}

std::vector<ValueRange> rule_ranges(double y_min, double is, int r_max) {
    if (!(is > 0.0)) throw ConfigError("interval size must be positive");
    std::vector<ValueRange> ranges(static_cast<std::size_t>(r_max));
    double lo = y_min;
    for (int i = 1; i <= r_max; ++i) {
        const double hi = y_min + static_cast<double>(i) * is;
        ranges[static_cast<std::size_t>(i - 1)] = ValueRange{lo, hi};
        lo = hi;
    }
    return ranges;
}

int assign_rule(double y, double y_min, double y_max, double is, int r_max) {
    if (y >= y_max) return r_max;
    if (y <= y_min) return 1;
    const int idx = static_cast<int>(std::floor((y - y_min) / is)) + 1;
    return std::clamp(idx, 1, r_max);
}

NmrModel fit_nmr(const RegressionDataset& ds, int r_max) {
    if (ds.num_samples() == 0) throw DataError("fit_nmr: empty dataset");
    if (r_max < 1) throw ConfigError("r_max must be >= 1");

    const auto [lo_it, hi_it] = std::minmax_element(ds.y.begin(), ds.y.end());
    const double y_min = *lo_it, y_max = *hi_it;
    const double is = interval_size(y_min, y_max, r_max);
    const std::vector<ValueRange> ranges = rule_ranges(y_min, is, r_max);

    std::vector<std::vector<std::size_t>> bins(static_cast<std::size_t>(r_max));
    for (std::size_t k = 0; k < ds.num_samples(); ++k) {
        const int rule = assign_rule(ds.y[k], y_min, y_max, is, r_max);
        bins[static_cast<std::size_t>(rule - 1)].push_back(k);
    }

    const std::vector<double> floors_amp = attribute_amplitudes(ds);
    std::vector<double> floors(floors_amp.size());
    for (std::size_t j = 0; j < floors.size(); ++j) floors[j] = sigma_floor(floors_amp[j]);
    const double target_floor = sigma_floor(y_max - y_min);

    NmrModel model;
    model.r_max = r_max;
    model.interval = is;
    model.y_min = y_min;
    model.y_max = y_max;
    model.attribute_names = ds.attribute_names;
    model.feature_mask.resize(ds.num_attributes());
    std::iota(model.feature_mask.begin(), model.feature_mask.end(), std::size_t{0});
    model.target_name = ds.target_name;

    std::vector<double> targets;
    for (int i = 0; i < r_max; ++i) {
        const auto& members = bins[static_cast<std::size_t>(i)];
        if (members.empty()) continue; // empty bins dropped
        NmrRule rule;
        rule.antecedent = estimate_antecedent(ds, members, floors);
        targets.clear();
        for (std::size_t k : members) targets.push_back(ds.y[k]);
        const GaussianSet consequent = estimate_gaussian(targets, target_floor);
        rule.consequent_mean = consequent.mean;
        rule.consequent_std = consequent.stddev;
        rule.range = ranges[static_cast<std::size_t>(i)];
        rule.support = members.size();
        model.rules.push_back(std::move(rule));
    }
    return model;
}

double predict_nmr(const NmrModel& model, const std::vector<double>& x) {
    std::vector<AntecedentRule> antecedents;
    antecedents.reserve(model.rules.size());
    for (const auto& r : model.rules) antecedents.push_back(r.antecedent);
    const std::vector<double> w = firing_degrees(x, antecedents);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        num += model.rules[i].consequent_mean * w[i];
        den += w[i];
    }
    return num / den;
}

std::vector<double> predict_nmr(const NmrModel& model,
                                const std::vector<std::vector<double>>& rows) {
    std::vector<AntecedentRule> antecedents;
    antecedents.reserve(model.rules.size());
    for (const auto& r : model.rules) antecedents.push_back(r.antecedent);

    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        const std::vector<double> w = firing_degrees(row, antecedents);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            num += model.rules[i].consequent_mean * w[i];
            den += w[i];
        }
        out.push_back(num / den);
    }
    return out;
}

} // namespace nfis
