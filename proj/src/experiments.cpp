#include "qdt/experiments.hpp"

#include <cstdio>
#include <unordered_map>

namespace qdt {

DecisionSimulation simulate_decisions(const ExprPtr& e, const CatHistory& h, Rng& rng) {
    DecisionSimulation sim;
    sim.rows.reserve(h.records.size());
    sim.report.n = h.n;

    const bool cacheable = !e->strategy_count_saturated();
    std::unordered_map<std::uint64_t, ValueOperator> cache;
    double cumulative = 0.0;
    for (const auto& rec : h.records) {
        // same draw sequence as decide(): path coins, then one action draw
        const Strategy s = sample_strategy(e, rng);
        ValueOperator vo;
        if (cacheable) {
            auto it = cache.find(s.id);
            if (it == cache.end()) it = cache.emplace(s.id, value_operator_of(s)).first;
            vo = it->second;
        } else {
            vo = value_operator_of(s);
        }
        const bool believe_alive = next_unit(rng) < vo.p1;

        DecisionRow row;
        row.k = rec.k;
        row.state = rec.state;
        row.action = believe_alive ? Action::A1_BelieveAlive : Action::A2_BelieveDead;
        row.belief = believe_alive ? vo.p1 : vo.p2;
        row.strategy_id = s.id;
        row.signed_belief = believe_alive ? row.belief : -row.belief;
        row.value = reward(row.action, rec.state, rec.v);
        cumulative += row.value;
        row.cumulative_value = cumulative;
        sim.rows.push_back(row);

        const bool success = believe_alive == (rec.state == CatState::Phi1_Alive);
        if (success) ++sim.report.successes;
    }
    sim.report.success_rate =
        static_cast<double>(sim.report.successes) / static_cast<double>(sim.report.n);
    sim.report.total_value = cumulative;
    return sim;
}

std::string format_strategy_table(const std::vector<Strategy>& strategies) {
    std::string out = "id,strategy,weight,p1,p2\n";
    char buf[96];
    for (const auto& s : strategies) {
        const ValueOperator vo = value_operator_of(s);
        std::snprintf(buf, sizeof buf, ",%.12g,%.12g,%.12g\n", s.weight, vo.p1, vo.p2);
        out += std::to_string(s.id);
        out += ',';
        out += to_text(s.expr);
        out += buf;
    }
    return out;
}

} // namespace qdt
