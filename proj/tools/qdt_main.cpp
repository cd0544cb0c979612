#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "qdt/environment.hpp"
#include "qdt/errors.hpp"
#include "qdt/experiments.hpp"
#include "qdt/genetic.hpp"
#include "qdt/io.hpp"

namespace {

// exit codes: 0 ok, 1 usage, 2 parse error, 3 enumeration overflow, 4 I/O
enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kOverflow = 3, kIo = 4 };

struct GenArgs {
    std::uint64_t seed = 0;
    std::uint64_t n = 10000;
    double decay_prob = 0.5;
    std::string out;
};

struct EvolveArgs {
    std::string history;
    qdt::GpConfig cfg;
    std::string fitness_mode = "expected";
    std::string out;
    std::string tree_out;
};

struct DecideArgs {
    std::string history;
    std::string tree_text;
    std::string tree_file;
    std::uint64_t seed = 0;
    std::string out;
};

struct EvalArgs {
    std::string tree_text;
    std::string tree_file;
    std::uint64_t cap = 64;
};

int run_gen(const GenArgs& a) {
    const qdt::CatHistory h = qdt::generate_history({a.n, a.decay_prob, a.seed});
    qdt::write_history_csv(a.out, h);
    std::printf("n=%llu omega1=%.6f omega2=%.6f\n", static_cast<unsigned long long>(h.n),
                h.omega1, h.omega2);
    return kOk;
}

int run_evolve(EvolveArgs a) {
    a.cfg.fitness_mode =
        a.fitness_mode == "sampled" ? qdt::FitnessMode::Sampled : qdt::FitnessMode::Expected;
    const qdt::CatHistory h = qdt::read_history_csv(a.history);
    const qdt::EvolveResult result = qdt::evolve(a.cfg, h);
    qdt::write_generations_csv(a.out, result.stats);
    const std::string tree_text = qdt::to_text(result.best.expr);
    qdt::write_text_file(a.tree_out.empty() ? a.out + ".tree.txt" : a.tree_out, tree_text + "\n");
    std::printf("best_fitness=%.6f\nbest_tree=%s\n", result.best.fitness, tree_text.c_str());
    return kOk;
}

qdt::ExprPtr load_tree(const std::string& text, const std::string& file) {
    return qdt::parse_expr(file.empty() ? text : qdt::read_text_file(file));
}

int run_decide(const DecideArgs& a) {
    const qdt::ExprPtr tree = load_tree(a.tree_text, a.tree_file);
    const qdt::CatHistory h = qdt::read_history_csv(a.history);
    qdt::Rng rng(a.seed);
    const qdt::DecisionSimulation sim = qdt::simulate_decisions(tree, h, rng);
    qdt::write_decisions_csv(a.out, sim.rows);
    std::printf("n=%llu successes=%llu success_rate=%.6f total_value=%.6f\n",
                static_cast<unsigned long long>(sim.report.n),
                static_cast<unsigned long long>(sim.report.successes), sim.report.success_rate,
                sim.report.total_value);
    return kOk;
}

int run_eval(const EvalArgs& a) {
    const qdt::ExprPtr tree = load_tree(a.tree_text, a.tree_file);
    const auto strategies = qdt::enumerate_strategies(tree, a.cap);
    if (!strategies) {
        std::fprintf(stderr, "error: tree has %llu strategies, more than the cap of %llu\n",
                     static_cast<unsigned long long>(tree->strategy_count()),
                     static_cast<unsigned long long>(a.cap));
        return kOverflow;
    }
    std::fputs(qdt::format_strategy_table(*strategies).c_str(), stdout);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolve and play quantum decision trees against a simulated "
                 "Schrödinger's-cat measurement record"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* cmd_gen = app.add_subcommand("gen", "Generate a measurement history CSV");
    cmd_gen->add_option("--seed", gen.seed, "RNG seed")->required();
    cmd_gen->add_option("--n", gen.n, "number of measurements")
        ->check(CLI::Range(std::uint64_t{1}, UINT64_MAX))
        ->capture_default_str();
    cmd_gen->add_option("--decay-prob", gen.decay_prob, "per-step decay probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd_gen->add_option("--out", gen.out, "history CSV path")->required();

    EvolveArgs ev;
    auto* cmd_evolve = app.add_subcommand("evolve", "Evolve a tree against a history");
    cmd_evolve->add_option("--history", ev.history, "history CSV path")->required();
    cmd_evolve->add_option("--seed", ev.cfg.seed, "RNG seed")->required();
    cmd_evolve->add_option("--pop", ev.cfg.population_size, "population size")
        ->check(CLI::Range(std::uint64_t{2}, UINT64_MAX))
        ->capture_default_str();
    cmd_evolve->add_option("--gens", ev.cfg.generations, "generations to run")
        ->capture_default_str();
    cmd_evolve->add_option("--p-cross", ev.cfg.crossover_probability, "crossover probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd_evolve->add_option("--p-mut", ev.cfg.mutation_probability, "mutation probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd_evolve->add_option("--min-depth", ev.cfg.min_depth, "minimum tree depth")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    cmd_evolve->add_option("--max-depth", ev.cfg.max_depth, "maximum tree depth")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    cmd_evolve->add_option("--elitism", ev.cfg.elitism, "elites kept per generation")
        ->capture_default_str();
    cmd_evolve->add_option("--cap", ev.cfg.strategy_cap, "strategy enumeration cap")
        ->check(CLI::Range(std::uint64_t{1}, UINT64_MAX))
        ->capture_default_str();
    cmd_evolve
        ->add_option("--fitness-mode", ev.fitness_mode, "fitness mode: expected or sampled")
        ->check(CLI::IsMember({"expected", "sampled"}))
        ->capture_default_str();
    cmd_evolve->add_flag("--omega,!--no-omega", ev.cfg.use_omega,
                         "scale fitness terms by empirical state frequencies");
    cmd_evolve->add_option("--out", ev.out, "generations CSV path")->required();
    cmd_evolve->add_option("--tree-out", ev.tree_out,
                           "best tree text path (default: <out>.tree.txt)");

    DecideArgs de;
    auto* cmd_decide = app.add_subcommand("decide", "Play a tree against a history");
    cmd_decide->add_option("--history", de.history, "history CSV path")->required();
    auto* de_tree = cmd_decide->add_option("--tree", de.tree_text, "tree text");
    auto* de_file = cmd_decide->add_option("--tree-file", de.tree_file, "file holding tree text");
    de_tree->excludes(de_file);
    cmd_decide->add_option("--seed", de.seed, "RNG seed")->required();
    cmd_decide->add_option("--out", de.out, "decisions CSV path")->required();

    EvalArgs evl;
    auto* cmd_eval = app.add_subcommand("eval", "Print a tree's strategy table");
    auto* evl_tree = cmd_eval->add_option("--tree", evl.tree_text, "tree text");
    auto* evl_file = cmd_eval->add_option("--tree-file", evl.tree_file, "file holding tree text");
    evl_tree->excludes(evl_file);
    cmd_eval->add_option("--cap", evl.cap, "strategy enumeration cap")
        ->check(CLI::Range(std::uint64_t{1}, UINT64_MAX))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (app.got_subcommand(cmd_gen)) return run_gen(gen);
        if (app.got_subcommand(cmd_evolve)) {
            if (ev.cfg.min_depth > ev.cfg.max_depth) {
                std::fprintf(stderr, "error: --min-depth must be <= --max-depth\n");
                return kUsage;
            }
            if (ev.cfg.elitism >= ev.cfg.population_size) {
                std::fprintf(stderr, "error: --elitism must be < --pop\n");
                return kUsage;
            }
            return run_evolve(ev);
        }
        if (app.got_subcommand(cmd_decide)) {
            if (de.tree_text.empty() && de.tree_file.empty()) {
                std::fprintf(stderr, "error: one of --tree or --tree-file is required\n");
                return kUsage;
            }
            return run_decide(de);
        }
        if (app.got_subcommand(cmd_eval)) {
            if (evl.tree_text.empty() && evl.tree_file.empty()) {
                std::fprintf(stderr, "error: one of --tree or --tree-file is required\n");
                return kUsage;
            }
            return run_eval(evl);
        }
    } catch (const qdt::TreeParseError& e) {
        std::fprintf(stderr, "error: tree %s\n", e.what());
        return kParse;
    } catch (const qdt::CsvParseError& e) {
        std::fprintf(stderr, "error: history %s\n", e.what());
        return kParse;
    } catch (const qdt::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIo;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kUsage;
}
