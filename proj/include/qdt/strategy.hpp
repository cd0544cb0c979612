#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qdt/eigen.hpp"
#include "qdt/expr.hpp"
#include "qdt/rng.hpp"

namespace qdt {

// One Or-free expansion of a tree. `weight` is the product of 1/2 per Or
// node resolved on the realized branches; `id` is the position in
// enumeration order (left branch before right at every Or).
struct Strategy {
    ExprPtr expr;
    double weight = 1.0;
    std::uint64_t id = 0;
};

enum class Action : std::uint8_t { A1_BelieveAlive, A2_BelieveDead };

// Outcome of one measurement performed on a tree: a strategy was sampled,
// its value operator computed, and one action drawn from (p1, p2).
struct Decision {
    Action action = Action::A1_BelieveAlive;
    double belief = 0.5; // probability the chosen action had
    std::uint64_t strategy_id = 0;
    ValueOperator value_operator;
};

// All Or-free expansions with their weights, or nullopt when the expansion
// count exceeds `cap` (callers then fall back to sampling). Weights of a
// full enumeration sum to 1.
std::optional<std::vector<Strategy>> enumerate_strategies(const ExprPtr& e, std::size_t cap);

// Bottom-up fold of an Or-free tree: Leaf -> gate_matrix, Add -> add,
// Mul -> mul. Throws std::logic_error if an Or node is encountered.
Mat2 evaluate_strategy(const Strategy& s);
Mat2 evaluate_or_free(const ExprPtr& e);

ValueOperator value_operator_of(const Strategy& s);

// Belief pair plus mixture weight; the mixture form of a tree.
struct WeightedBeliefs {
    double p1 = 0.5;
    double p2 = 0.5;
    double weight = 1.0;
};

// The tree's strategy mixture as (p1, p2, weight) rows without
// materializing expansion trees. Exact enumeration (same order and weights
// as enumerate_strategies) when the count fits under `cap`; otherwise a
// Monte Carlo mixture of `samples_on_overflow` sampled strategies.
std::vector<WeightedBeliefs> mixture_beliefs(const ExprPtr& e, std::size_t cap,
                                             std::size_t samples_on_overflow, Rng& rng);

// Resolves every Or on the realized path with a fair coin. The returned id
// agrees with enumerate_strategies order whenever the strategy count is
// not saturated.
Strategy sample_strategy(const ExprPtr& e, Rng& rng);

// Sample a strategy, compute its beliefs, then draw the action: A1 with
// probability p1, else A2. The belief reported is that of the chosen action.
Decision decide(const ExprPtr& e, Rng& rng);

} // namespace qdt
