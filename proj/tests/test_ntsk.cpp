#include <doctest.h>

#include "nfis/errors.hpp"
#include "nfis/ntsk.hpp"

#include "support/oracles.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace nfis;

TEST_CASE("target_variations differences the series") {
    CHECK(target_variations({1.0, 3.0, 2.0}) == std::vector<double>{2.0, -1.0});
    CHECK(target_variations({5.0, 5.0, 5.0}) == std::vector<double>{0.0, 0.0});
    CHECK_THROWS_AS(target_variations({1.0}), DataError);
}

TEST_CASE("rls_update leaves theta alone on zero innovation") {
    RlsState state = make_rls_state(2);
    state.theta = {1.0, 2.0};
    const std::vector<double> x_ext = {1.0, 3.0};
    const double y = 1.0 + 2.0 * 3.0;
    rls_update(state, x_ext, y, 1.0, 1.0);
    CHECK(state.theta[0] == doctest::Approx(1.0));
    CHECK(state.theta[1] == doctest::Approx(2.0));
}

TEST_CASE("rls converges to the sample mean on a constant stream") {
    RlsState state = make_rls_state(1);
    for (int k = 0; k < 200; ++k) rls_update(state, {1.0}, 4.25, 1.0, 1.0);
    CHECK(state.theta[0] == doctest::Approx(4.25).epsilon(1e-6));
}

TEST_CASE("rls matches the ridge normal equations") {
    const auto problem = oracle::make_regression(150, 3, 0.2, 5);
    RlsState state = make_rls_state(4);
    for (std::size_t k = 0; k < problem.X.size(); ++k) {
        std::vector<double> x_ext = {1.0};
        x_ext.insert(x_ext.end(), problem.X[k].begin(), problem.X[k].end());
        rls_update(state, x_ext, problem.y[k], 1.0, 1.0);
    }
    const std::vector<double> direct = oracle::least_squares(problem.X, problem.y, 1e-8);
    for (std::size_t i = 0; i < direct.size(); ++i)
        CHECK(state.theta[i] == doctest::Approx(direct[i]).epsilon(1e-6));
}

TEST_CASE("rls_update keeps P symmetric") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RlsState state = make_rls_state(3);
    for (int k = 0; k < 100; ++k) {
        const std::vector<double> x = {1.0, gauss(rng), gauss(rng)};
        rls_update(state, x, gauss(rng), 0.5 + 0.5 * std::abs(gauss(rng)) / 3.0, 0.99);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(std::abs(state.P[i][j] - state.P[j][i]) < 1e-9);
    }
}

TEST_CASE("rls_update validates its arguments") {
    RlsState state = make_rls_state(2);
    CHECK_THROWS_AS(rls_update(state, {1.0}, 0.0, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(rls_update(state, {1.0, 1.0}, 0.0, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(rls_update(state, {1.0, 1.0}, 0.0, 1.0, 1.5), ConfigError);
}

TEST_CASE("noiseless affine data is fit exactly with a single rule") {
    // y[k] = 2 x[k] + 1
    RegressionDataset ds;
    ds.attribute_names = {"x"};
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> value(-4.0, 4.0);
    for (int k = 0; k < 120; ++k) {
        const double x = value(rng);
        ds.X.push_back({x});
        ds.y.push_back(2.0 * x + 1.0);
    }
    const NtskModel model = fit_ntsk(ds, 1, NtskSolver::Rls, 1.0);
    REQUIRE(model.rules.size() == 1);
    CHECK(model.rules[0].theta[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(model.rules[0].theta[1] == doctest::Approx(2.0).epsilon(1e-6));

    double worst = 0.0;
    for (std::size_t k = 0; k < ds.X.size(); ++k)
        worst = std::max(worst, std::abs(predict_ntsk(model, ds.X[k]) - ds.y[k]));
    CHECK(worst < 1e-8);
}

TEST_CASE("constant-increment series degrades to one rule") {
    RegressionDataset ds;
    ds.attribute_names = {"x"};
    for (int k = 0; k < 20; ++k) {
        ds.X.push_back({static_cast<double>(k)});
        ds.y.push_back(3.0 + 2.0 * k); // delta is constantly 2
    }
    const NtskModel model = fit_ntsk(ds, 2, NtskSolver::Wrls);
    CHECK(model.rules.size() == 1);
    CHECK(model.rules[0].support == ds.num_samples());
}

TEST_CASE("variation binning attaches samples to the transition ending at them") {
    RegressionDataset ds;
    ds.attribute_names = {"x"};
    // Targets alternate up and down: deltas are +9, -9, +9, ...
    for (int k = 0; k < 21; ++k) {
        ds.X.push_back({static_cast<double>(k)});
        ds.y.push_back(k % 2 == 0 ? 0.0 : 9.0);
    }
    const NtskModel model = fit_ntsk(ds, 2, NtskSolver::Wrls);
    REQUIRE(model.rules.size() == 2);
    // Falling transitions end at the 10 even samples k>=2. Rising ones end
    // at the 10 odd samples; sample 0 has no transition and its delta=0
    // falls on the bin boundary, which floors into the upper bin.
    CHECK(model.rules[0].support == 10);
    CHECK(model.rules[1].support == 11);
    CHECK(model.delta_min == doctest::Approx(-9.0));
    CHECK(model.delta_max == doctest::Approx(9.0));
}

TEST_CASE("wrls with identical antecedents equals single-rule RLS over all samples") {
    const auto problem = oracle::make_regression(200, 2, 0.3, 9);
    RegressionDataset ds;
    ds.attribute_names = {"a", "b"};
    ds.X = problem.X;
    ds.y = problem.y;

    // Two identical antecedents make every firing degree exactly 1/2.
    const std::vector<double> floors = {1e-12, 1e-12};
    std::vector<std::size_t> all(ds.num_samples());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const AntecedentRule shared = estimate_antecedent(ds, all, floors);
    const auto thetas = fit_consequents_wrls(ds, {shared, shared});

    const auto single = fit_consequents_rls(ds, {all}, 1.0);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < thetas[i].size(); ++j)
            CHECK(thetas[i][j] == doctest::Approx(single[0][j]).epsilon(1e-6));
}

TEST_CASE("predict_ntsk evaluates the affine consequents") {
    NtskModel model;
    model.attribute_names = {"x"};
    NtskRule rule;
    rule.antecedent.sets = {GaussianSet{0.0, 1.0}};
    rule.theta = {1.0, 2.0};
    rule.variation_range = {0.0, 1.0};
    rule.support = 1;
    model.rules.push_back(rule);
    CHECK(predict_ntsk(model, std::vector<double>{3.0}) == doctest::Approx(7.0));

    // Second rule with identical theta: output is that affine map
    // regardless of the weights.
    NtskRule other = rule;
    other.antecedent.sets = {GaussianSet{5.0, 0.3}};
    model.rules.push_back(other);
    CHECK(predict_ntsk(model, std::vector<double>{3.0}) == doctest::Approx(7.0).epsilon(1e-12));

    for (auto& r : model.rules) r.theta = {0.0, 0.0};
    CHECK(predict_ntsk(model, std::vector<double>{123.0}) == doctest::Approx(0.0));
}

TEST_CASE("fit_ntsk input validation") {
    RegressionDataset ds;
    ds.attribute_names = {"x"};
    ds.X = {{1.0}};
    ds.y = {1.0};
    CHECK_THROWS_AS(fit_ntsk(ds, 1, NtskSolver::Rls), DataError);
    ds.X.push_back({2.0});
    ds.y.push_back(2.0);
    CHECK_THROWS_AS(fit_ntsk(ds, 0, NtskSolver::Rls), ConfigError);
    CHECK_THROWS_AS(fit_ntsk(ds, 1, NtskSolver::Rls, 1.5), ConfigError);
}
