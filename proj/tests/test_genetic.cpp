#include <doctest.h>

#include "nfis/errors.hpp"
#include "nfis/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace nfis;

namespace {

// Three informative attributes, the rest pure noise.
RegressionDataset informative_dataset(std::size_t noise_attrs, std::uint64_t seed,
                                      std::size_t T = 240) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RegressionDataset ds;
    ds.attribute_names = {"s1", "s2", "s3"};
    for (std::size_t j = 0; j < noise_attrs; ++j)
        ds.attribute_names.push_back("n" + std::to_string(j + 1));
    for (std::size_t k = 0; k < T; ++k) {
        std::vector<double> row(ds.attribute_names.size());
        for (auto& v : row) v = gauss(rng);
        const double y = 2.0 * row[0] - 1.0 * row[1] + 0.5 * row[2] + 0.05 * gauss(rng);
        ds.X.push_back(std::move(row));
        ds.y.push_back(y);
    }
    return ds;
}

} // namespace

TEST_CASE("repair leaves valid masks alone and fixes the all-zero mask") {
    std::mt19937_64 rng(1);
    std::vector<std::uint8_t> ok = {1, 0, 1};
    repair(ok, rng);
    CHECK(ok == std::vector<std::uint8_t>{1, 0, 1});

    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint8_t> zero = {0, 0, 0, 0};
        repair(zero, rng);
        CHECK(std::count(zero.begin(), zero.end(), 1) == 1);
    }

    std::vector<std::uint8_t> single = {0};
    repair(single, rng);
    CHECK(single == std::vector<std::uint8_t>{1});
}

TEST_CASE("evaluate_fitness rewards the informative mask") {
    const RegressionDataset ds = informative_dataset(3, 77);
    const auto [train, val] = chronological_split(ds, 0.75);
    const ModelHparams hp{1, 1.0};

    // Noiseless affine link once noise attrs are masked out entirely:
    RegressionDataset clean = informative_dataset(0, 78);
    // rebuild with zero observation noise
    for (std::size_t k = 0; k < clean.X.size(); ++k)
        clean.y[k] = 2.0 * clean.X[k][0] - clean.X[k][1] + 0.5 * clean.X[k][2];
    const auto [ctrain, cval] = chronological_split(clean, 0.75);
    const double fit = evaluate_fitness({1, 1, 1}, ModelKind::NtskRls, ctrain, cval, hp);
    CHECK(fit < 1e-6);

    // Same mask twice gives the identical fitness.
    const double a = evaluate_fitness({1, 0, 1, 0, 1, 0}, ModelKind::NtskWrls, train, val, hp);
    const double b = evaluate_fitness({1, 0, 1, 0, 1, 0}, ModelKind::NtskWrls, train, val, hp);
    CHECK(a == b);

    // The informative mask beats the complementary noise-only mask.
    const double good = evaluate_fitness({1, 1, 1, 0, 0, 0}, ModelKind::NtskRls, train, val, hp);
    const double bad = evaluate_fitness({0, 0, 0, 1, 1, 1}, ModelKind::NtskRls, train, val, hp);
    CHECK(good < bad);
}

TEST_CASE("evaluate_fitness turns fit failures into infinite fitness") {
    RegressionDataset constant;
    constant.attribute_names = {"x"};
    for (int k = 0; k < 12; ++k) {
        constant.X.push_back({static_cast<double>(k)});
        constant.y.push_back(5.0); // constant target cannot be binned
    }
    const auto [train, val] = chronological_split(constant, 0.75);
    const double fit = evaluate_fitness({1}, ModelKind::Nmr, train, val, ModelHparams{2, 1.0});
    CHECK(std::isinf(fit));
}

TEST_CASE("run_ga with zero generations returns the initial best") {
    const RegressionDataset ds = informative_dataset(5, 31);
    GaConfig cfg;
    cfg.population_size = 8;
    cfg.generations = 0;
    cfg.seed = 3;
    const GaResult result = run_ga(ModelKind::NtskRls, ds, cfg, ModelHparams{1, 1.0});
    CHECK(result.history.size() == 1);
    CHECK(result.best.fitness == result.history[0].best_fitness);
    CHECK(std::count(result.best.mask.begin(), result.best.mask.end(), 1) >= 1);
}

TEST_CASE("run_ga is deterministic under a fixed seed") {
    const RegressionDataset ds = informative_dataset(5, 41);
    GaConfig cfg;
    cfg.population_size = 10;
    cfg.generations = 8;
    cfg.seed = 99;
    const GaResult a = run_ga(ModelKind::NtskWrls, ds, cfg, ModelHparams{2, 1.0});
    const GaResult b = run_ga(ModelKind::NtskWrls, ds, cfg, ModelHparams{2, 1.0});
    CHECK(a.best.mask == b.best.mask);
    CHECK(a.best.fitness == b.best.fitness);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t g = 0; g < a.history.size(); ++g) {
        CHECK(a.history[g].best_fitness == b.history[g].best_fitness);
        CHECK(a.history[g].mean_fitness == b.history[g].mean_fitness);
        CHECK(a.history[g].best_mask == b.history[g].best_mask);
    }
}

TEST_CASE("elitism makes the per-generation best non-increasing") {
    const RegressionDataset ds = informative_dataset(5, 51);
    GaConfig cfg;
    cfg.population_size = 12;
    cfg.generations = 12;
    cfg.elitism_count = 2;
    cfg.seed = 7;
    const GaResult result = run_ga(ModelKind::NtskRls, ds, cfg, ModelHparams{1, 1.0});
    for (std::size_t g = 1; g < result.history.size(); ++g)
        CHECK(result.history[g].best_fitness <= result.history[g - 1].best_fitness);
}

TEST_CASE("every generation satisfies the at-least-one-bit invariant") {
    const RegressionDataset ds = informative_dataset(4, 61);
    GaConfig cfg;
    cfg.population_size = 10;
    cfg.generations = 10;
    cfg.mutation_rate = 0.45; // heavy mutation to stress the repair path
    cfg.seed = 13;
    const GaResult result = run_ga(ModelKind::NtskRls, ds, cfg, ModelHparams{1, 1.0});
    for (const auto& gen : result.history)
        CHECK(std::count(gen.best_mask.begin(), gen.best_mask.end(), 1) >= 1);
    CHECK(std::count(result.best.mask.begin(), result.best.mask.end(), 1) >= 1);
}

TEST_CASE("ga config validation") {
    GaConfig cfg;
    cfg.population_size = 1;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = GaConfig{};
    cfg.elitism_count = 25;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = GaConfig{};
    cfg.crossover_rate = 1.4;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("ga recovers the informative attributes against enumeration") {
    // 3 informative + 5 noise attributes; enumeration of all 255 masks is
    // the search oracle. The GA must keep all informative bits set.
    const RegressionDataset ds = informative_dataset(5, 71, 320);
    const ModelHparams hp{1, 1.0};
    const auto [train, val] = chronological_split(ds, 0.75);

    // Enumeration oracle: fitness-optimal mask over all 2^8 - 1 candidates.
    std::vector<std::uint8_t> best_mask;
    double best_fit = std::numeric_limits<double>::infinity();
    for (unsigned bits = 1; bits < 256; ++bits) {
        std::vector<std::uint8_t> mask(8);
        for (unsigned j = 0; j < 8; ++j) mask[j] = (bits >> j) & 1u;
        const double fit = evaluate_fitness(mask, ModelKind::NtskRls, train, val, hp);
        if (fit < best_fit) {
            best_fit = fit;
            best_mask = mask;
        }
    }
    REQUIRE(best_mask.size() == 8);
    CHECK(best_mask[0] == 1);
    CHECK(best_mask[1] == 1);
    CHECK(best_mask[2] == 1);

    GaConfig cfg;
    cfg.generations = 20;
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        cfg.seed = seed;
        const GaResult result = run_ga(ModelKind::NtskRls, ds, cfg, hp);
        const bool informative_kept =
            result.best.mask[0] == 1 && result.best.mask[1] == 1 && result.best.mask[2] == 1;
        if (informative_kept) ++hits;
        CHECK(result.best.fitness >= best_fit); // no better than exhaustive
    }
    CHECK(hits >= 4);
}
