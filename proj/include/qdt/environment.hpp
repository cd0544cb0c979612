#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qdt/strategy.hpp"

namespace qdt {

enum class CatState : std::uint8_t { Phi1_Alive, Phi2_Dead };

// One step of the measurement record: the atom either decayed or not, the
// walk moved by ±1, and the step stake is v = |Δx|.
struct MeasurementRecord {
    std::uint64_t k = 0; // 1-based
    CatState state = CatState::Phi1_Alive;
    std::int64_t x = 0;  // walk position after step k
    double v = 1.0;
};

struct CatHistory {
    std::vector<MeasurementRecord> records;
    std::uint64_t n = 0;
    double omega1 = 0.0; // empirical frequency of Alive
    double omega2 = 0.0;
};

struct EnvConfig {
    std::uint64_t n = 10000;
    double decay_probability = 0.5;
    std::uint64_t seed = 0;
};

// x_0 = 0; each step decays with decay_probability, moving x down on decay
// and up otherwise. Deterministic given the seed (one mt19937_64 stream,
// one unit draw per step). Throws std::invalid_argument on a bad config.
CatHistory generate_history(const EnvConfig& cfg);

// Rebuilds a history from explicit decay flags; the deterministic core of
// generate_history and of the CSV reader.
CatHistory history_from_decays(const std::vector<bool>& decayed);

// v of one step. Total on purpose, even though module-generated walks only
// ever produce |Δx| = 1.
double step_value(std::int64_t x_prev, std::int64_t x_next);

// +v when the belief matches the state, -v when it does not.
double reward(Action action, CatState state, double v);

// (omega1, omega2) = state counts / n.
std::pair<double, double> empirical_frequencies(const CatHistory& h);

} // namespace qdt
