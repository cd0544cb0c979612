#include "qdt/environment.hpp"

#include <cmath>
#include <stdexcept>

#include "qdt/rng.hpp"

namespace qdt {

CatHistory history_from_decays(const std::vector<bool>& decayed) {
    CatHistory h;
    h.n = decayed.size();
    h.records.reserve(decayed.size());
    std::int64_t x = 0;
    std::uint64_t alive = 0;
    for (std::size_t i = 0; i < decayed.size(); ++i) {
        const std::int64_t x_prev = x;
        x += decayed[i] ? -1 : 1;
        MeasurementRecord rec;
        rec.k = i + 1;
        rec.state = decayed[i] ? CatState::Phi2_Dead : CatState::Phi1_Alive;
        rec.x = x;
        rec.v = step_value(x_prev, x);
        h.records.push_back(rec);
        if (!decayed[i]) ++alive;
    }
    if (h.n > 0) {
        h.omega1 = static_cast<double>(alive) / static_cast<double>(h.n);
        h.omega2 = static_cast<double>(h.n - alive) / static_cast<double>(h.n);
    }
    return h;
}

CatHistory generate_history(const EnvConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("generate_history: n must be >= 1");
    if (!(cfg.decay_probability >= 0.0 && cfg.decay_probability <= 1.0))
        throw std::invalid_argument("generate_history: decay_probability must be in [0,1]");
    Rng rng(cfg.seed);
    std::vector<bool> decayed(cfg.n);
    for (std::uint64_t k = 0; k < cfg.n; ++k) decayed[k] = next_bernoulli(rng, cfg.decay_probability);
    return history_from_decays(decayed);
}

double step_value(std::int64_t x_prev, std::int64_t x_next) {
    return std::abs(static_cast<double>(x_next - x_prev));
}

double reward(Action action, CatState state, double v) {
    const bool match = (action == Action::A1_BelieveAlive && state == CatState::Phi1_Alive) ||
                       (action == Action::A2_BelieveDead && state == CatState::Phi2_Dead);
    return match ? v : -v;
}

std::pair<double, double> empirical_frequencies(const CatHistory& h) {
    if (h.n < 1) throw std::invalid_argument("empirical_frequencies: empty history");
    std::uint64_t alive = 0;
    for (const auto& rec : h.records)
        if (rec.state == CatState::Phi1_Alive) ++alive;
    const double omega1 = static_cast<double>(alive) / static_cast<double>(h.n);
    const double omega2 = static_cast<double>(h.n - alive) / static_cast<double>(h.n);
    return {omega1, omega2};
}

} // namespace qdt
