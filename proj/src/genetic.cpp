#include "qdt/genetic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace qdt {

namespace {

enum StreamTag : std::uint64_t { kStreamInit = 0x11, kStreamBreed = 0x22, kStreamFitness = 0x33 };

// A history enters expected fitness only through two numbers: the
// omega-scaled total stake of the alive records and of the dead records.
// Per record, believing alive earns omega_j*(p1 - p2)*v when alive and the
// negation when dead, so the sum collapses to (p1 - p2)*(alive - dead).
struct HistorySummary {
    double alive_stake = 0.0;
    double dead_stake = 0.0;
};

HistorySummary summarize(const CatHistory& h, bool use_omega) {
    double alive_v = 0.0, dead_v = 0.0;
    for (const auto& rec : h.records) {
        if (rec.state == CatState::Phi1_Alive)
            alive_v += rec.v;
        else
            dead_v += rec.v;
    }
    const double w1 = use_omega ? h.omega1 : 1.0;
    const double w2 = use_omega ? h.omega2 : 1.0;
    return {w1 * alive_v, w2 * dead_v};
}

double fitness_expected(const ExprPtr& e, const HistorySummary& hs, std::size_t cap, Rng& rng) {
    const auto mixture = mixture_beliefs(e, cap, 4 * cap, rng);
    double bias = 0.0; // mixture-averaged p1 - p2
    for (const auto& wb : mixture) bias += wb.weight * (wb.p1 - wb.p2);
    return bias * (hs.alive_stake - hs.dead_stake);
}

double fitness_sampled(const ExprPtr& e, const CatHistory& h, Rng& rng, bool use_omega) {
    // per-id cache is only sound while ids are unique
    const bool cacheable = !e->strategy_count_saturated();
    std::unordered_map<std::uint64_t, ValueOperator> cache;
    double total = 0.0;
    for (const auto& rec : h.records) {
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
        const Action action = believe_alive ? Action::A1_BelieveAlive : Action::A2_BelieveDead;
        const double belief = believe_alive ? vo.p1 : vo.p2;
        const double omega = !use_omega               ? 1.0
                             : rec.state == CatState::Phi1_Alive ? h.omega1
                                                                 : h.omega2;
        total += omega * belief * reward(action, rec.state, rec.v);
    }
    return total;
}

double fitness_impl(const ExprPtr& e, const CatHistory& h, const HistorySummary& hs,
                    FitnessMode mode, std::size_t cap, Rng& rng, bool use_omega) {
    if (mode == FitnessMode::Expected) return fitness_expected(e, hs, cap, rng);
    return fitness_sampled(e, h, rng, use_omega);
}

int depth_of_index(const ExprPtr& e, std::size_t index) {
    if (index == 0) return 1;
    const std::size_t left_size = e->left()->size();
    if (index <= left_size) return 1 + depth_of_index(e->left(), index - 1);
    return 1 + depth_of_index(e->right(), index - 1 - left_size);
}

std::vector<std::size_t> rank_by_fitness(const Population& pop) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&pop](std::size_t a, std::size_t b) {
        return pop[a].fitness > pop[b].fitness;
    });
    return order;
}

} // namespace

void validate(const GpConfig& cfg) {
    auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (cfg.population_size < 2)
        throw std::invalid_argument("GpConfig: population_size must be >= 2");
    if (cfg.elitism >= cfg.population_size)
        throw std::invalid_argument("GpConfig: elitism must be < population_size");
    if (!in01(cfg.crossover_probability) || !in01(cfg.mutation_probability))
        throw std::invalid_argument("GpConfig: probabilities must be in [0,1]");
    if (cfg.min_depth < 1 || cfg.min_depth > cfg.max_depth)
        throw std::invalid_argument("GpConfig: need 1 <= min_depth <= max_depth");
    if (cfg.strategy_cap < 1) throw std::invalid_argument("GpConfig: strategy_cap must be >= 1");
}

double fitness(const ExprPtr& e, const CatHistory& h, FitnessMode mode, std::size_t cap, Rng& rng,
               bool use_omega) {
    if (h.n < 1) throw std::invalid_argument("fitness: history is empty");
    if (cap < 1) throw std::invalid_argument("fitness: cap must be >= 1");
    return fitness_impl(e, h, summarize(h, use_omega), mode, cap, rng, use_omega);
}

const Individual& select_parent(const Population& pop, Rng& rng) {
    if (pop.empty()) throw std::invalid_argument("select_parent: empty population");
    constexpr double kEps = 1e-6;
    double min_fitness = pop.front().fitness;
    for (const auto& ind : pop) min_fitness = std::min(min_fitness, ind.fitness);
    double total = 0.0;
    for (const auto& ind : pop) total += ind.fitness - min_fitness + kEps;
    const double spin = next_unit(rng) * total;
    double cum = 0.0;
    for (const auto& ind : pop) {
        cum += ind.fitness - min_fitness + kEps;
        if (spin < cum) return ind;
    }
    return pop.back();
}

ExprPtr crossover(const ExprPtr& a, const ExprPtr& b, int max_depth, Rng& rng) {
    for (int attempt = 0; attempt < 10; ++attempt) {
        const std::size_t at = next_below(rng, a->size());
        const std::size_t from = next_below(rng, b->size());
        ExprPtr child = replace_at(a, at, subtree_at(b, from));
        if (child->depth() <= max_depth) return child;
    }
    return a;
}

ExprPtr mutate(const ExprPtr& e, int min_depth, int max_depth, Rng& rng) {
    const std::size_t at = next_below(rng, e->size());
    const int node_depth = depth_of_index(e, at);
    const int room = std::max(1, max_depth - node_depth + 1);
    ExprPtr fresh = random_tree(rng, std::min(min_depth, room), room);
    return replace_at(e, at, std::move(fresh));
}

EvolveResult evolve(const GpConfig& cfg, const CatHistory& h) {
    validate(cfg);
    if (h.n < 1) throw std::invalid_argument("evolve: history is empty");

    const HistorySummary hs = summarize(h, cfg.use_omega);
    const std::uint64_t pop_size = cfg.population_size;

    auto evaluate = [&](Population& pop, std::uint64_t generation) {
        // one derived stream per (generation, slot): evaluation order and
        // parallelism cannot change any individual's draw sequence
        for (std::uint64_t slot = 0; slot < pop.size(); ++slot) {
            Rng rng = make_stream(cfg.seed, kStreamFitness, generation * pop_size + slot);
            pop[slot].fitness = fitness_impl(pop[slot].expr, h, hs, cfg.fitness_mode,
                                             cfg.strategy_cap, rng, cfg.use_omega);
        }
    };

    // initial population, ramped target depths
    Rng init_rng = make_stream(cfg.seed, kStreamInit);
    const int ramp_lo = cfg.min_depth;
    const int ramp_hi = std::max(cfg.min_depth, cfg.max_depth - 2);
    Population pop;
    pop.reserve(pop_size);
    for (std::uint64_t i = 0; i < pop_size; ++i) {
        const int target =
            ramp_lo + static_cast<int>(next_below(init_rng, static_cast<std::uint64_t>(ramp_hi - ramp_lo + 1)));
        pop.push_back({random_tree(init_rng, cfg.min_depth, target), 0.0, i});
    }
    evaluate(pop, 0);

    Individual best_ever = pop[rank_by_fitness(pop).front()];

    EvolveResult result;
    result.stats.reserve(cfg.generations);
    for (std::uint64_t gen = 0; gen < cfg.generations; ++gen) {
        if (gen > 0) {
            // breed the next generation from the current one
            Rng breed_rng = make_stream(cfg.seed, kStreamBreed, gen);
            const auto order = rank_by_fitness(pop);
            Population next;
            next.reserve(pop_size);
            for (std::uint64_t e = 0; e < cfg.elitism; ++e) {
                Individual elite = pop[order[e]];
                elite.id = next.size();
                next.push_back(std::move(elite));
            }
            while (next.size() < pop_size) {
                ExprPtr child;
                if (next_unit(breed_rng) < cfg.crossover_probability) {
                    const Individual& pa = select_parent(pop, breed_rng);
                    const Individual& pb = select_parent(pop, breed_rng);
                    child = crossover(pa.expr, pb.expr, cfg.max_depth, breed_rng);
                } else {
                    child = select_parent(pop, breed_rng).expr;
                }
                if (next_unit(breed_rng) < cfg.mutation_probability)
                    child = mutate(child, cfg.min_depth, cfg.max_depth, breed_rng);
                next.push_back({std::move(child), 0.0, next.size()});
            }
            pop = std::move(next);
            evaluate(pop, gen);
            const Individual& gen_best = pop[rank_by_fitness(pop).front()];
            if (gen_best.fitness > best_ever.fitness) best_ever = gen_best;
        }

        const auto order = rank_by_fitness(pop);
        double mean = 0.0;
        for (const auto& ind : pop) mean += ind.fitness;
        mean /= static_cast<double>(pop.size());
        result.stats.push_back(
            {gen, pop[order.front()].fitness, mean, to_text(pop[order.front()].expr)});
    }

    result.best = std::move(best_ever);
    return result;
}

} // namespace qdt
