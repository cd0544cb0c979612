#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdt/genetic.hpp"
#include "qdt/io.hpp"

namespace qdt {

struct RunReport {
    std::uint64_t n = 0;
    std::uint64_t successes = 0;
    double success_rate = 0.0;
    double total_value = 0.0;
};

struct DecisionSimulation {
    std::vector<DecisionRow> rows;
    RunReport report;
};

// Plays the tree against a recorded history: one sampled decision per
// measurement, scored with the matching/mismatching reward. A decision
// counts as a success when the chosen belief matches the recorded state.
DecisionSimulation simulate_decisions(const ExprPtr& e, const CatHistory& h, Rng& rng);

// Strategy table of a tree: one line per enumerated strategy as
// `id,strategy,weight,p1,p2` after a header, floats at %.12g.
std::string format_strategy_table(const std::vector<Strategy>& strategies);

} // namespace qdt
