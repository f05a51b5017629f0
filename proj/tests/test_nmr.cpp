#include <doctest.h>

#include "nfis/errors.hpp"
#include "nfis/nmr.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace nfis;

TEST_CASE("interval_size arithmetic") {
    CHECK(interval_size(1.0, 3.0, 2) == doctest::Approx(1.0));
    CHECK(interval_size(0.0, 10.0, 5) == doctest::Approx(2.0));
    CHECK(interval_size(0.0, 1.0, 1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(interval_size(2.0, 2.0, 3), DataError);
    CHECK_THROWS_AS(interval_size(0.0, 1.0, 0), ConfigError);
}

TEST_CASE("rule_ranges tiles the amplitude") {
    const auto ranges = rule_ranges(0.0, 1.0, 2);
    REQUIRE(ranges.size() == 2);
    CHECK(ranges[0].lo == 0.0);
    CHECK(ranges[0].hi == 1.0);
    CHECK(ranges[1].lo == 1.0);
    CHECK(ranges[1].hi == 2.0);

    const auto single = rule_ranges(5.0, 0.5, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0].lo == doctest::Approx(5.0));
    CHECK(single[0].hi == doctest::Approx(5.5));
}

TEST_CASE("rule_ranges reproduces the four Alice variation intervals") {
    // Four contiguous intervals from -2.56 with width 1.19:
    // [-2.56,-1.37] [-1.37,-0.18] [-0.18,1.01] [1.01,2.20]
    const auto ranges = rule_ranges(-2.56, 1.19, 4);
    REQUIRE(ranges.size() == 4);
    CHECK(ranges[0].lo == doctest::Approx(-2.56).epsilon(1e-9));
    CHECK(ranges[0].hi == doctest::Approx(-1.37).epsilon(1e-9));
    CHECK(ranges[1].hi == doctest::Approx(-0.18).epsilon(1e-9));
    CHECK(ranges[2].hi == doctest::Approx(1.01).epsilon(1e-9));
    CHECK(ranges[3].hi == doctest::Approx(2.20).epsilon(1e-9));
    for (std::size_t i = 0; i + 1 < ranges.size(); ++i)
        CHECK(ranges[i].hi == ranges[i + 1].lo); // bitwise contiguous
}

TEST_CASE("assign_rule boundaries and clamping") {
    // y_min=0, y_max=4, IS=1, R_max=4
    CHECK(assign_rule(0.0, 0.0, 4.0, 1.0, 4) == 1);
    CHECK(assign_rule(4.0, 0.0, 4.0, 1.0, 4) == 4); // y >= y_max branch
    CHECK(assign_rule(2.5, 0.0, 4.0, 1.0, 4) == 3);
    CHECK(assign_rule(-1.0, 0.0, 4.0, 1.0, 4) == 1); // clamps below
    CHECK(assign_rule(9.0, 0.0, 4.0, 1.0, 4) == 4);  // clamps above
}

TEST_CASE("assign_rule is monotone and covers every index") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lo_dist(-100.0, 100.0);
    std::uniform_real_distribution<double> amp_dist(0.1, 50.0);
    std::uniform_int_distribution<int> r_dist(1, 12);

    for (int trial = 0; trial < 300; ++trial) {
        const double y_min = lo_dist(rng);
        const double y_max = y_min + amp_dist(rng);
        const int r_max = r_dist(rng);
        const double is = interval_size(y_min, y_max, r_max);

        int prev = 1;
        std::vector<bool> seen(static_cast<std::size_t>(r_max), false);
        const int steps = 40 * r_max;
        for (int s = 0; s <= steps; ++s) {
            const double y = y_min + (y_max - y_min) * static_cast<double>(s) / steps;
            const int idx = assign_rule(y, y_min, y_max, is, r_max);
            CHECK(idx >= prev);
            CHECK(idx >= 1);
            CHECK(idx <= r_max);
            seen[static_cast<std::size_t>(idx - 1)] = true;
            prev = idx;
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
        CHECK(assign_rule(y_max, y_min, y_max, is, r_max) == r_max);
    }
}

namespace {

RegressionDataset step_dataset() {
    // Predictor equals the target; two levels.
    RegressionDataset ds;
    ds.attribute_names = {"x"};
    ds.X = {{1.0}, {1.0}, {2.0}, {2.0}};
    ds.y = {1.0, 1.0, 2.0, 2.0};
    return ds;
}

} // namespace

TEST_CASE("fit_nmr groups samples per target bin") {
    const NmrModel model = fit_nmr(step_dataset(), 2);
    REQUIRE(model.rules.size() == 2);
    CHECK(model.rules[0].consequent_mean == doctest::Approx(1.0));
    CHECK(model.rules[1].consequent_mean == doctest::Approx(2.0));
    CHECK(model.rules[0].support == 2);
    CHECK(model.rules[1].support == 2);
    CHECK(model.y_min == doctest::Approx(1.0));
    CHECK(model.y_max == doctest::Approx(2.0));
    CHECK(model.interval * model.r_max ==
          doctest::Approx(model.y_max - model.y_min).epsilon(1e-9));
}

TEST_CASE("fit_nmr with one rule reduces to the target mean") {
    const NmrModel model = fit_nmr(step_dataset(), 1);
    REQUIRE(model.rules.size() == 1);
    CHECK(model.rules[0].consequent_mean == doctest::Approx(1.5));
    CHECK(predict_nmr(model, std::vector<double>{123.0}) == doctest::Approx(1.5));
}

TEST_CASE("fit_nmr drops empty bins") {
    RegressionDataset ds;
    ds.attribute_names = {"x"};
    ds.X = {{0.0}, {0.1}, {0.2}, {10.0}};
    ds.y = {0.0, 1.0, 2.0, 10.0};
    // With R_max=4 the bins covering (2.5,7.5] hold nothing.
    const NmrModel model = fit_nmr(ds, 4);
    CHECK(model.rules.size() == 2);
    std::size_t support = 0;
    for (const auto& rule : model.rules) support += rule.support;
    CHECK(support == ds.num_samples());
}

TEST_CASE("fit_nmr rejects a constant target") {
    RegressionDataset ds;
    ds.attribute_names = {"x"};
    ds.X = {{1.0}, {2.0}};
    ds.y = {3.0, 3.0};
    CHECK_THROWS_AS(fit_nmr(ds, 2), DataError);
}

TEST_CASE("predict_nmr is the weight-mean of consequents") {
    // Two symmetric rules; at the midpoint the prediction is the average.
    RegressionDataset ds;
    ds.attribute_names = {"x"};
    ds.X = {{0.0}, {0.5}, {1.5}, {2.0}};
    ds.y = {2.0, 2.0, 4.0, 4.0};
    const NmrModel model = fit_nmr(ds, 2);
    REQUIRE(model.rules.size() == 2);
    // Symmetric memberships -> w = [0.5, 0.5] -> (2+4)/2
    const double mid = 0.5 * (model.rules[0].antecedent.sets[0].mean +
                              model.rules[1].antecedent.sets[0].mean);
    CHECK(predict_nmr(model, std::vector<double>{mid}) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("predict stays inside the consequent hull") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    RegressionDataset ds;
    ds.attribute_names = {"a", "b"};
    for (int k = 0; k < 200; ++k) {
        ds.X.push_back({value(rng), value(rng)});
        ds.y.push_back(value(rng));
    }
    const NmrModel model = fit_nmr(ds, 5);
    double lo = model.rules[0].consequent_mean, hi = lo;
    for (const auto& rule : model.rules) {
        lo = std::min(lo, rule.consequent_mean);
        hi = std::max(hi, rule.consequent_mean);
    }
    for (int q = 0; q < 500; ++q) {
        const double pred = predict_nmr(model, std::vector<double>{value(rng), value(rng)});
        CHECK(pred >= lo - 1e-9);
        CHECK(pred <= hi + 1e-9);
    }
}

TEST_CASE("training on separable bin midpoints reproduces them") {
    // Four well-separated levels, a predictor that identifies the level.
    RegressionDataset ds;
    ds.attribute_names = {"x"};
    std::vector<double> levels = {10.0, 20.0, 30.0, 40.0};
    for (int rep = 0; rep < 5; ++rep)
        for (std::size_t level = 0; level < levels.size(); ++level) {
            ds.X.push_back({static_cast<double>(level)});
            ds.y.push_back(levels[level]);
        }
    const NmrModel model = fit_nmr(ds, 4);
    REQUIRE(model.rules.size() == 4);
    for (std::size_t level = 0; level < levels.size(); ++level) {
        const double pred = predict_nmr(model, std::vector<double>{static_cast<double>(level)});
        CHECK(std::abs(pred - levels[level]) / levels[level] < 0.01);
    }
}
