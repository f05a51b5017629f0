#pragma once

#include "nfis/dataset.hpp"
#include "nfis/model.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace nfis {

/// Binary attribute mask with its validation error. At least one bit is
/// always set; fitness stays NaN until evaluated.
struct Chromosome {
    std::vector<std::uint8_t> mask;
    double fitness = std::numeric_limits<double>::quiet_NaN();
};

enum class FitnessMetric { Rmse, Nrmse };

struct GaConfig {
    int population_size = 20;
    int generations = 30;
    double crossover_rate = 0.9;
    double mutation_rate = -1.0; // negative: use 1/p at runtime
    int elitism_count = 1;
    std::uint64_t seed = 42;
    FitnessMetric fitness_metric = FitnessMetric::Rmse;
    int early_stop_stagnant = 0;       // 0 disables early stopping
    double validation_fraction = 0.25; // chronological tail of the training split
};

void validate(const GaConfig& cfg);

/// All-zero masks get one uniformly random bit set; valid masks pass through.
void repair(std::vector<std::uint8_t>& mask, std::mt19937_64& rng);

/// Fits `kind` on the mask-restricted training set and returns the chosen
/// error metric on the validation set. Model-fit failures come back as
/// +infinity so a bad chromosome loses selection instead of aborting the run.
double evaluate_fitness(const std::vector<std::uint8_t>& mask, ModelKind kind,
                        const RegressionDataset& train, const RegressionDataset& val,
                        const ModelHparams& hp, FitnessMetric metric = FitnessMetric::Rmse);

struct GenerationStats {
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    std::vector<std::uint8_t> best_mask;
};

struct GaResult {
    Chromosome best;     // lowest-error chromosome ever seen
    FuzzyModel model;    // refit on the full training split with the best mask
    std::vector<GenerationStats> history;
};

/// Tournament selection (size 2), uniform crossover, per-bit mutation,
/// repair, elitism. The validation split for fitness is the chronological
/// tail of `train`; the returned model is refit on all of `train`.
GaResult run_ga(ModelKind kind, const RegressionDataset& train, const GaConfig& cfg,
                const ModelHparams& hp);

/// generation, best_fitness, mean_fitness, best_mask rows.
void write_ga_history_csv(const std::string& path, const std::vector<GenerationStats>& history);

std::string mask_to_string(const std::vector<std::uint8_t>& mask);

} // namespace nfis
