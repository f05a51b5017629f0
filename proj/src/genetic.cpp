#include "nfis/genetic.hpp"
#include "nfis/errors.hpp"
#include "nfis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>

namespace nfis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_zero(const std::vector<std::uint8_t>& mask) {
    return std::none_of(mask.begin(), mask.end(), [](std::uint8_t b) { return b != 0; });
}

std::size_t tournament_pick(const std::vector<Chromosome>& pop, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    return pop[a].fitness <= pop[b].fitness ? a : b;
}

} // namespace

void validate(const GaConfig& cfg) {
    if (cfg.population_size < 2) throw ConfigError("ga: population_size must be >= 2");
    if (cfg.generations < 0) throw ConfigError("ga: generations must be >= 0");
    if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0)
        throw ConfigError("ga: crossover_rate outside [0, 1]");
    if (cfg.mutation_rate > 1.0) throw ConfigError("ga: mutation_rate outside [0, 1]");
    if (cfg.elitism_count < 0 || cfg.elitism_count >= cfg.population_size)
        throw ConfigError("ga: elitism_count must be < population_size");
    if (!(cfg.validation_fraction > 0.0 && cfg.validation_fraction < 1.0))
        throw ConfigError("ga: validation_fraction outside (0, 1)");
    if (cfg.early_stop_stagnant < 0) throw ConfigError("ga: early_stop_stagnant must be >= 0");
}

void repair(std::vector<std::uint8_t>& mask, std::mt19937_64& rng) {
    if (mask.empty()) throw ConfigError("repair: empty mask");
    if (!all_zero(mask)) return;
    std::uniform_int_distribution<std::size_t> pick(0, mask.size() - 1);
    mask[pick(rng)] = 1;
}

double evaluate_fitness(const std::vector<std::uint8_t>& mask, ModelKind kind,
                        const RegressionDataset& train, const RegressionDataset& val,
                        const ModelHparams& hp, FitnessMetric metric) {
    const std::vector<std::size_t> keep = mask_to_indices(mask);
    if (keep.empty()) throw ConfigError("evaluate_fitness: empty mask");
    try {
        const RegressionDataset masked_train = select_attributes(train, keep);
        const RegressionDataset masked_val = select_attributes(val, keep);
        const FuzzyModel model = fit_fuzzy(kind, masked_train, hp);
        const std::vector<double> y_hat = predict(model, masked_val.X);
        return metric == FitnessMetric::Nrmse ? nrmse(masked_val.y, y_hat)
                                              : rmse(masked_val.y, y_hat);
    } catch (const std::exception&) {
        return kInf;
    }
}

GaResult run_ga(ModelKind kind, const RegressionDataset& train, const GaConfig& cfg,
                const ModelHparams& hp) {
    validate(cfg);
    const std::size_t p = train.num_attributes();
    if (p == 0) throw DataError("run_ga: dataset has no attributes");

    const auto [inner_train, inner_val] = chronological_split(train, 1.0 - cfg.validation_fraction);
    const double mut_rate =
        cfg.mutation_rate >= 0.0 ? cfg.mutation_rate : 1.0 / static_cast<double>(p);

    std::mt19937_64 rng(cfg.seed);
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution cross(cfg.crossover_rate);
    std::bernoulli_distribution mutate(mut_rate);

    auto evaluate = [&](Chromosome& c) {
        c.fitness = evaluate_fitness(c.mask, kind, inner_train, inner_val, hp, cfg.fitness_metric);
    };

    // Initial population: the full mask plus random chromosomes.
    std::vector<Chromosome> pop(static_cast<std::size_t>(cfg.population_size));
    pop[0].mask.assign(p, 1);
    for (std::size_t i = 1; i < pop.size(); ++i) {
        pop[i].mask.resize(p);
        for (auto& bit : pop[i].mask) bit = coin(rng) ? 1 : 0;
        repair(pop[i].mask, rng);
    }
    for (auto& c : pop) evaluate(c);

    auto by_fitness = [](const Chromosome& a, const Chromosome& b) {
        return a.fitness < b.fitness;
    };

    GaResult result;
    result.best = *std::min_element(pop.begin(), pop.end(), by_fitness);

    auto record = [&](int gen) {
        GenerationStats stats;
        stats.generation = gen;
        const auto best_it = std::min_element(pop.begin(), pop.end(), by_fitness);
        stats.best_fitness = best_it->fitness;
        stats.best_mask = best_it->mask;
        double sum = 0.0;
        for (const auto& c : pop) sum += c.fitness;
        stats.mean_fitness = sum / static_cast<double>(pop.size());
        result.history.push_back(std::move(stats));
    };
    record(0);

    int stagnant = 0;
    for (int gen = 1; gen <= cfg.generations; ++gen) {
        std::vector<Chromosome> next;
        next.reserve(pop.size());

        // Elites carry over unchanged.
        std::vector<Chromosome> sorted = pop;
        std::stable_sort(sorted.begin(), sorted.end(), by_fitness);
        for (int e = 0; e < cfg.elitism_count; ++e) next.push_back(sorted[static_cast<std::size_t>(e)]);

        while (next.size() < pop.size()) {
            const Chromosome& p1 = pop[tournament_pick(pop, rng)];
            const Chromosome& p2 = pop[tournament_pick(pop, rng)];
            std::vector<std::uint8_t> c1 = p1.mask, c2 = p2.mask;
            if (cross(rng)) {
                for (std::size_t j = 0; j < p; ++j)
                    if (coin(rng)) std::swap(c1[j], c2[j]);
            }
            for (auto* child : {&c1, &c2}) {
                for (auto& bit : *child)
                    if (mutate(rng)) bit = bit ? 0 : 1;
                repair(*child, rng);
                if (next.size() < pop.size()) {
                    Chromosome c;
                    c.mask = *child;
                    evaluate(c);
                    next.push_back(std::move(c));
                }
            }
        }
        pop = std::move(next);

        const Chromosome& gen_best = *std::min_element(pop.begin(), pop.end(), by_fitness);
        if (gen_best.fitness < result.best.fitness) {
            result.best = gen_best;
            stagnant = 0;
        } else {
            ++stagnant;
        }
        record(gen);
        if (cfg.early_stop_stagnant > 0 && stagnant >= cfg.early_stop_stagnant) break;
    }

    const std::vector<std::size_t> keep = mask_to_indices(result.best.mask);
    RegressionDataset masked = select_attributes(train, keep);
    result.model = fit_fuzzy(kind, masked, hp);
    std::visit([&](auto& m) { m.feature_mask = keep; }, result.model);
    return result;
}

std::string mask_to_string(const std::vector<std::uint8_t>& mask) {
    std::string s;
    s.reserve(mask.size());
    for (std::uint8_t b : mask) s.push_back(b ? '1' : '0');
    return s;
}

void write_ga_history_csv(const std::string& path, const std::vector<GenerationStats>& history) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "generation,best_fitness,mean_fitness,best_mask\n";
    char buf[64];
    for (const auto& row : history) {
        out << row.generation << ',';
        std::snprintf(buf, sizeof buf, "%.10g", row.best_fitness);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.10g", row.mean_fitness);
        out << buf << ',' << mask_to_string(row.best_mask) << '\n';
    }
}

} // namespace nfis
