#pragma once

#include <string>
#include <vector>

#include "qdt/environment.hpp"
#include "qdt/genetic.hpp"
#include "qdt/strategy.hpp"

namespace qdt {

// One row of the decisions CSV; `signed_belief` carries the belief with a
// sign encoding the action (+ alive, - dead).
struct DecisionRow {
    std::uint64_t k = 0;
    CatState state = CatState::Phi1_Alive;
    Action action = Action::A1_BelieveAlive;
    double belief = 0.5;
    std::uint64_t strategy_id = 0;
    double signed_belief = 0.5;
    double value = 0.0;
    double cumulative_value = 0.0;
};

// History CSV, header `k,decayed,x,v`, one row per measurement, LF endings.
void write_history_csv(const std::string& path, const CatHistory& h);

// Strict reader: enforces the header, sequential k, ±1 walk steps matching
// `decayed`, and v = |Δx|. Throws CsvParseError with the 1-based line
// number, or IoError if the file cannot be opened.
CatHistory read_history_csv(const std::string& path);

// Generations CSV, header `gen,best_fitness,mean_fitness,best_tree`.
void write_generations_csv(const std::string& path, const std::vector<GenerationStats>& stats);

// Decisions CSV, header
// `k,state,action,belief,strategy_id,signed_belief,value,cumulative_value`;
// states and actions spelled alive/dead, floats with 6 decimal places.
void write_decisions_csv(const std::string& path, const std::vector<DecisionRow>& rows);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

} // namespace qdt
