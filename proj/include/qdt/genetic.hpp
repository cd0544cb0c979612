#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdt/environment.hpp"
#include "qdt/expr.hpp"
#include "qdt/rng.hpp"

namespace qdt {

enum class FitnessMode : std::uint8_t {
    Expected, // deterministic expectation over strategies and actions
    Sampled   // one sampled decision per measurement
};

struct GpConfig {
    std::uint64_t population_size = 200;
    std::uint64_t generations = 100;
    double crossover_probability = 0.9;
    double mutation_probability = 0.05;
    int min_depth = 2;
    int max_depth = 8;
    std::uint64_t elitism = 1;
    std::uint64_t strategy_cap = 64;
    FitnessMode fitness_mode = FitnessMode::Expected;
    bool use_omega = true; // scale each term by the empirical state frequency
    std::uint64_t seed = 0;
};

void validate(const GpConfig& cfg); // throws std::invalid_argument

struct Individual {
    ExprPtr expr;
    double fitness = 0.0;
    std::uint64_t id = 0;
};

using Population = std::vector<Individual>;

struct GenerationStats {
    std::uint64_t generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    std::string best_tree_text;
};

struct EvolveResult {
    Individual best;
    std::vector<GenerationStats> stats;
};

// Accumulated value of a tree over a history.
//
// Expected mode sums, over the strategy mixture and both actions, the
// per-measurement terms omega_j * p_i * r_ij with stake v_k; it is a pure
// function of (tree, history). Strategy mixtures wider than `cap` are
// approximated by 4*cap sampled strategies. Sampled mode draws one decision
// per measurement and accumulates omega_j * p_chosen * r, the literal
// per-measurement realization.
double fitness(const ExprPtr& e, const CatHistory& h, FitnessMode mode, std::size_t cap,
               Rng& rng, bool use_omega = true);

// Fitness-proportionate roulette over min-windowed weights
// w_i = f_i - min_j f_j + 1e-6, which keeps negative fitness legal.
const Individual& select_parent(const Population& pop, Rng& rng);

// Replace a uniform-random node of `a` with a uniform-random subtree of
// `b`; retries up to 10 times if the result exceeds max_depth, then falls
// back to a copy of `a`.
ExprPtr crossover(const ExprPtr& a, const ExprPtr& b, int max_depth, Rng& rng);

// Replace a uniform-random subtree with a fresh random tree sized to keep
// the whole result within max_depth.
ExprPtr mutate(const ExprPtr& e, int min_depth, int max_depth, Rng& rng);

// Generational loop: evaluate, record stats, carry the elite, refill by
// crossover (probability crossover_probability) or cloning of roulette
// parents, then per-offspring mutation. Stats hold one row per generation,
// row 0 being the initial random population. Deterministic given cfg.seed
// in Expected mode regardless of evaluation order.
EvolveResult evolve(const GpConfig& cfg, const CatHistory& h);

} // namespace qdt
