#include "nfis/ntsk.hpp"
#include "nfis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

namespace nfis {

namespace {

std::vector<double> extended_input(const std::vector<double>& x) {
    std::vector<double> ext;
    ext.reserve(x.size() + 1);
    ext.push_back(1.0);
    ext.insert(ext.end(), x.begin(), x.end());
    return ext;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool finite(const RlsState& state) {
    for (double t : state.theta)
        if (!std::isfinite(t)) return false;
    for (const auto& row : state.P)
        for (double v : row)
            if (!std::isfinite(v)) return false;
    return true;
}

constexpr double kInitialP = 1e8;

} // namespace

RlsState make_rls_state(std::size_t dim, double initial_p) {
    RlsState state;
    state.theta.assign(dim, 0.0);
    state.P.assign(dim, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) state.P[i][i] = initial_p;
    return state;
}

void rls_update(RlsState& state, const std::vector<double>& x_ext, double y, double weight,
                double lambda) {
    const std::size_t n = state.theta.size();
    if (x_ext.size() != n) throw ConfigError("rls_update: dimension mismatch");
    if (!(weight > 0.0 && weight <= 1.0)) throw ConfigError("rls_update: weight outside (0, 1]");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ConfigError("rls_update: lambda outside (0, 1]");

    std::vector<double> Px(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) Px[i] = dot(state.P[i], x_ext);
    const double denom = lambda / weight + dot(x_ext, Px);

    std::vector<double> gain(n);
    for (std::size_t i = 0; i < n; ++i) gain[i] = Px[i] / denom;

    // Build the updated state first; commit only if it stayed finite, so a
    // failed step leaves the state untouched for the caller to reset.
    RlsState next;
    next.theta = state.theta;
    const double innovation = y - dot(x_ext, state.theta);
    for (std::size_t i = 0; i < n; ++i) next.theta[i] += gain[i] * innovation;

    // P = (P - g (Px)') / lambda, then symmetrize.
    next.P.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            next.P[i][j] = (state.P[i][j] - gain[i] * Px[j]) / lambda;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = 0.5 * (next.P[i][j] + next.P[j][i]);
            next.P[i][j] = s;
            next.P[j][i] = s;
        }

    if (!finite(next)) throw NumericError("rls_update: non-finite update");
    state = std::move(next);
}

std::vector<double> target_variations(const std::vector<double>& y) {
    if (y.size() < 2) throw DataError("target_variations: series too short");
    std::vector<double> delta(y.size() - 1);
    for (std::size_t k = 0; k + 1 < y.size(); ++k) delta[k] = y[k + 1] - y[k];
    return delta;
}

std::vector<std::vector<double>> fit_consequents_rls(
    const RegressionDataset& ds, const std::vector<std::vector<std::size_t>>& rule_samples,
    double lambda) {
    const std::size_t dim = ds.num_attributes() + 1;
    std::vector<std::vector<double>> thetas;
    thetas.reserve(rule_samples.size());
    for (const auto& samples : rule_samples) {
        RlsState state = make_rls_state(dim, kInitialP);
        for (std::size_t k : samples) {
            const std::vector<double> x_ext = extended_input(ds.X[k]);
            try {
                rls_update(state, x_ext, ds.y[k], 1.0, lambda);
            } catch (const NumericError&) {
                state.P = make_rls_state(dim, kInitialP).P; // reset on ill-conditioning
            }
        }
        thetas.push_back(state.theta);
    }
    return thetas;
}

std::vector<std::vector<double>> fit_consequents_wrls(
    const RegressionDataset& ds, const std::vector<AntecedentRule>& antecedents) {
    const std::size_t dim = ds.num_attributes() + 1;
    const std::size_t R = antecedents.size();
    std::vector<RlsState> states;
    states.reserve(R);
    for (std::size_t i = 0; i < R; ++i) states.push_back(make_rls_state(dim, kInitialP));

    for (std::size_t k = 0; k < ds.num_samples(); ++k) {
        const std::vector<double> w = firing_degrees(ds.X[k], antecedents);
        const std::vector<double> x_ext = extended_input(ds.X[k]);
        for (std::size_t i = 0; i < R; ++i) {
            if (w[i] <= 0.0) continue; // underflowed weight carries no information
            try {
                rls_update(states[i], x_ext, ds.y[k], w[i], 1.0);
            } catch (const NumericError&) {
                states[i].P = make_rls_state(dim, kInitialP).P;
            }
        }
    }

    std::vector<std::vector<double>> thetas;
    thetas.reserve(R);
    for (auto& s : states) thetas.push_back(std::move(s.theta));
    return thetas;
}

NtskModel fit_ntsk(const RegressionDataset& ds, int r_max, NtskSolver solver, double lambda) {
    if (ds.num_samples() < 2) throw DataError("fit_ntsk: need at least 2 samples");
    if (r_max < 1) throw ConfigError("r_max must be >= 1");
    if (solver == NtskSolver::Wrls) lambda = 1.0;
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ConfigError("lambda outside (0, 1]");

    const std::vector<double> deltas = target_variations(ds.y);
    const auto [lo_it, hi_it] = std::minmax_element(deltas.begin(), deltas.end());
    const double d_min = *lo_it, d_max = *hi_it;

    NtskModel model;
    model.r_max = r_max;
    model.solver = solver;
    model.lambda = lambda;
    model.delta_min = d_min;
    model.delta_max = d_max;
    model.attribute_names = ds.attribute_names;
    model.feature_mask.resize(ds.num_attributes());
    std::iota(model.feature_mask.begin(), model.feature_mask.end(), std::size_t{0});
    model.target_name = ds.target_name;

    std::vector<std::vector<std::size_t>> bins;
    std::vector<ValueRange> retained_ranges;
    if (!(d_max > d_min)) {
        // Constant variation: every sample lands in one bin.
        if (r_max > 1)
            std::cerr << "nfis: warning: constant target variation, using a single rule\n";
        bins.assign(1, std::vector<std::size_t>(ds.num_samples()));
        std::iota(bins[0].begin(), bins[0].end(), std::size_t{0});
        retained_ranges.assign(1, ValueRange{d_min, d_max});
    } else {
        const double is = interval_size(d_min, d_max, r_max);
        const std::vector<ValueRange> ranges = rule_ranges(d_min, is, r_max);
        std::vector<std::vector<std::size_t>> all_bins(static_cast<std::size_t>(r_max));
        for (std::size_t k = 0; k < ds.num_samples(); ++k) {
            // Sample k's variation is the transition ending at its target;
            // the first sample has none and falls in delta = 0's bin.
            const double delta = k == 0 ? 0.0 : deltas[k - 1];
            const int rule = assign_rule(delta, d_min, d_max, is, r_max);
            all_bins[static_cast<std::size_t>(rule - 1)].push_back(k);
        }
        for (int i = 0; i < r_max; ++i) {
            if (all_bins[static_cast<std::size_t>(i)].empty()) continue;
            bins.push_back(std::move(all_bins[static_cast<std::size_t>(i)]));
            retained_ranges.push_back(ranges[static_cast<std::size_t>(i)]);
        }
    }

    const std::vector<double> amps = attribute_amplitudes(ds);
    std::vector<double> floors(amps.size());
    for (std::size_t j = 0; j < floors.size(); ++j) floors[j] = sigma_floor(amps[j]);

    std::vector<AntecedentRule> antecedents;
    antecedents.reserve(bins.size());
    for (const auto& members : bins) antecedents.push_back(estimate_antecedent(ds, members, floors));

    const std::vector<std::vector<double>> thetas =
        solver == NtskSolver::Rls ? fit_consequents_rls(ds, bins, lambda)
                                  : fit_consequents_wrls(ds, antecedents);

    for (std::size_t i = 0; i < bins.size(); ++i) {
        NtskRule rule;
        rule.antecedent = std::move(antecedents[i]);
        rule.theta = thetas[i];
        rule.variation_range = retained_ranges[i];
        rule.support = bins[i].size();
        model.rules.push_back(std::move(rule));
    }
    return model;
}

double predict_ntsk(const NtskModel& model, const std::vector<double>& x) {
    std::vector<AntecedentRule> antecedents;
    antecedents.reserve(model.rules.size());
    for (const auto& r : model.rules) antecedents.push_back(r.antecedent);
    const std::vector<double> w = firing_degrees(x, antecedents);

    const std::vector<double> x_ext = extended_input(x);
    double out = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) out += w[i] * dot(x_ext, model.rules[i].theta);
    return out;
}

std::vector<double> predict_ntsk(const NtskModel& model,
                                 const std::vector<std::vector<double>>& rows) {
    std::vector<AntecedentRule> antecedents;
    antecedents.reserve(model.rules.size());
    for (const auto& r : model.rules) antecedents.push_back(r.antecedent);

    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        const std::vector<double> w = firing_degrees(row, antecedents);
        const std::vector<double> x_ext = extended_input(row);
        double acc = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * dot(x_ext, model.rules[i].theta);
        out.push_back(acc);
    }
    return out;
}

} // namespace nfis
