#include "detkit/differential_evolution.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "detkit/parallel.hpp"
#include "detkit/rng.hpp"

namespace detkit {

void DEParams::validate(std::size_t dimension) const {
    if (dimension == 0) throw std::invalid_argument("de_optimize: bounds are empty");
    if (population_size != 0 && population_size < 4) {
        throw std::invalid_argument("de_optimize: population_size must be >= 4 (rand/1 mutation)");
    }
    if (!(mutation_factor > 0.0) || mutation_factor > 2.0) {
        throw std::invalid_argument("de_optimize: mutation_factor must be in (0, 2]");
    }
    if (crossover_rate < 0.0 || crossover_rate > 1.0) {
        throw std::invalid_argument("de_optimize: crossover_rate must be in [0, 1]");
    }
    if (max_generations < 0) throw std::invalid_argument("de_optimize: max_generations < 0");
    if (tolerance < 0.0) throw std::invalid_argument("de_optimize: tolerance < 0");
    for (const auto& [lo, hi] : bounds) {
        if (!(lo < hi)) throw std::invalid_argument("de_optimize: each bound needs lo < hi");
    }
}

DEResult de_optimize(const Objective& objective, const DEParams& params) {
    const std::size_t dim = params.bounds.size();
    params.validate(dim);
    const std::size_t pop =
        params.population_size > 0
            ? static_cast<std::size_t>(params.population_size)
            : std::max<std::size_t>(4, 10 * dim);

    Rng rng(params.seed);
    auto clamp = [&](double v, std::size_t j) {
        return std::clamp(v, params.bounds[j].first, params.bounds[j].second);
    };

    std::vector<std::vector<double>> population(pop, std::vector<double>(dim));
    for (auto& member : population) {
        for (std::size_t j = 0; j < dim; ++j) {
            member[j] = rng.uniform(params.bounds[j].first, params.bounds[j].second);
        }
    }

    DEResult result;
    std::vector<double> fitness(pop);
    parallel_chunks(pop, params.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) fitness[i] = objective(population[i]);
    });
    result.evaluations = pop;

    std::size_t best_idx = 0;
    for (std::size_t i = 1; i < pop; ++i) {
        if (fitness[i] > fitness[best_idx]) best_idx = i;
    }
    result.history.push_back(fitness[best_idx]);

    int stagnant = 0;
    std::vector<std::vector<double>> trials(pop, std::vector<double>(dim));
    std::vector<double> trial_fitness(pop);

    for (int gen = 0; gen < params.max_generations; ++gen) {
        // All random draws happen here, in member order, before any
        // evaluation; the evaluation pass is embarrassingly parallel.
        for (std::size_t i = 0; i < pop; ++i) {
            std::size_t a, b, c;
            do a = rng.uniform_int(pop); while (a == i);
            do b = rng.uniform_int(pop); while (b == i || b == a);
            do c = rng.uniform_int(pop); while (c == i || c == a || c == b);

            const std::size_t forced = rng.uniform_int(dim);
            auto& trial = trials[i];
            for (std::size_t j = 0; j < dim; ++j) {
                const bool cross = rng.uniform() < params.crossover_rate || j == forced;
                if (cross) {
                    const double mutant = population[a][j] +
                        params.mutation_factor * (population[b][j] - population[c][j]);
                    trial[j] = clamp(mutant, j);
                } else {
                    trial[j] = population[i][j];
                }
            }
        }

        parallel_chunks(pop, params.threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) trial_fitness[i] = objective(trials[i]);
        });
        result.evaluations += pop;

        for (std::size_t i = 0; i < pop; ++i) {
            if (trial_fitness[i] > fitness[i]) {
                population[i] = trials[i];
                fitness[i] = trial_fitness[i];
                if (fitness[i] > fitness[best_idx]) best_idx = i;
            }
        }

        const double prev_best = result.history.back();
        result.history.push_back(fitness[best_idx]);
        result.generations = gen + 1;

        if (params.tolerance > 0.0) {
            const double improvement = fitness[best_idx] - prev_best;
            stagnant = improvement < params.tolerance ? stagnant + 1 : 0;
            if (stagnant >= kDEStagnationWindow) break;
        }
    }

    result.best_vector = population[best_idx];
    result.best_objective = fitness[best_idx];
    return result;
}

} // namespace detkit
