#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace detkit {

/// DE/rand/1/bin hyperparameters. Defaults are the canonical Storn-Price
/// settings; population_size 0 means 10x the problem dimension.
struct DEParams {
    int population_size = 0;
    double mutation_factor = 0.5; // F in (0, 2]
    double crossover_rate = 0.9;  // CR in [0, 1]
    int max_generations = 200;
    double tolerance = 1e-4;      // 0 disables early stopping
    std::uint64_t seed = 0;
    std::vector<std::pair<double, double>> bounds; // per-dimension (lo, hi)
    int threads = 1;              // trial evaluations per generation; 0 = auto

    void validate(std::size_t dimension) const;
};

/// Generations with best-objective improvement below tolerance before the
/// search stops.
inline constexpr int kDEStagnationWindow = 10;

struct DEResult {
    std::vector<double> best_vector;
    double best_objective = 0.0;
    std::vector<double> history; // best objective after init and each generation
    std::size_t evaluations = 0;
    int generations = 0;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Maximize the objective over the box given by params.bounds with
/// DE/rand/1/bin: mutant v = x_a + F*(x_b - x_c) for distinct a,b,c != i,
/// binomial crossover with one forced dimension, clamping to bounds, and
/// replacement only on strict improvement. The objective must be pure;
/// evaluations within a generation may run concurrently, but results are
/// bit-identical for any thread count because every random draw happens
/// on the single driver thread in a fixed order.
DEResult de_optimize(const Objective& objective, const DEParams& params);

} // namespace detkit
