#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdt/environment.hpp"
#include "qdt/errors.hpp"
#include "qdt/experiments.hpp"
#include "qdt/genetic.hpp"
#include "qdt/io.hpp"

namespace py = pybind11;

namespace {

// Trees are shared_ptr<const Expr> on the C++ side; python sees a small
// handle class instead.
struct PyExpr {
    qdt::ExprPtr p;
};

PyExpr wrap(qdt::ExprPtr p) { return PyExpr{std::move(p)}; }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum decision trees: gate algebra, strategy mixtures, a simulated "
              "Schrödinger's-cat environment, and a genetic-programming optimizer.";
    m.attr("__version__") = "0.1.0";

    py::register_exception<qdt::TreeParseError>(m, "TreeParseError", PyExc_ValueError);
    py::register_exception<qdt::CsvParseError>(m, "CsvParseError", PyExc_ValueError);
    py::register_exception<qdt::IoError>(m, "IoError", PyExc_OSError);

    py::class_<qdt::Rng>(m, "Rng", "Deterministic 64-bit random stream")
        .def(py::init<std::uint64_t>(), py::arg("seed"));

    // gate algebra
    py::enum_<qdt::Gate>(m, "Gate")
        .value("H", qdt::Gate::H)
        .value("X", qdt::Gate::X)
        .value("Y", qdt::Gate::Y)
        .value("Z", qdt::Gate::Z)
        .value("S", qdt::Gate::S)
        .value("D", qdt::Gate::D)
        .value("T", qdt::Gate::T)
        .value("I", qdt::Gate::I);

    py::class_<qdt::Mat2>(m, "Mat2")
        .def(py::init<>())
        .def(py::init([](qdt::Complex a, qdt::Complex b, qdt::Complex c, qdt::Complex d) {
                 return qdt::Mat2{a, b, c, d};
             }),
             py::arg("m11"), py::arg("m12"), py::arg("m21"), py::arg("m22"))
        .def_readwrite("m11", &qdt::Mat2::m11)
        .def_readwrite("m12", &qdt::Mat2::m12)
        .def_readwrite("m21", &qdt::Mat2::m21)
        .def_readwrite("m22", &qdt::Mat2::m22)
        .def("rows",
             [](const qdt::Mat2& v) {
                 return py::make_tuple(py::make_tuple(v.m11, v.m12),
                                       py::make_tuple(v.m21, v.m22));
             })
        .def("__add__", &qdt::add)
        .def("__mul__", &qdt::mul)
        .def("__eq__", [](const qdt::Mat2& a, const qdt::Mat2& b) { return a == b; })
        .def("__repr__", [](const qdt::Mat2& v) { return qdt::to_string(v); });

    m.def("gate_matrix", &qdt::gate_matrix, py::arg("gate"));
    m.def("add", &qdt::add, py::arg("a"), py::arg("b"));
    m.def("mul", &qdt::mul, py::arg("a"), py::arg("b"));

    py::class_<qdt::EigenPair>(m, "EigenPair")
        .def_readonly("lambda1", &qdt::EigenPair::lambda1)
        .def_readonly("lambda2", &qdt::EigenPair::lambda2)
        .def_readonly("vec1", &qdt::EigenPair::vec1)
        .def_readonly("vec2", &qdt::EigenPair::vec2)
        .def_readonly("degenerate", &qdt::EigenPair::degenerate);

    py::class_<qdt::ValueOperator>(m, "ValueOperator")
        .def_readonly("p1", &qdt::ValueOperator::p1)
        .def_readonly("p2", &qdt::ValueOperator::p2)
        .def_readonly("source_eigen", &qdt::ValueOperator::source_eigen)
        .def("__repr__", [](const qdt::ValueOperator& vo) {
            return "ValueOperator(p1=" + std::to_string(vo.p1) +
                   ", p2=" + std::to_string(vo.p2) + ")";
        });

    m.def("eigen2", &qdt::eigen2, py::arg("m"));
    m.def("normalize_to_beliefs", &qdt::normalize_to_beliefs, py::arg("eigen"));

    // decision trees
    py::enum_<qdt::Op>(m, "Op")
        .value("Add", qdt::Op::Add)
        .value("Mul", qdt::Op::Mul)
        .value("Or", qdt::Op::Or);

    py::class_<PyExpr>(m, "Expr")
        .def_property_readonly("depth", [](const PyExpr& e) { return e.p->depth(); })
        .def_property_readonly("size", [](const PyExpr& e) { return e.p->size(); })
        .def_property_readonly("strategy_count",
                               [](const PyExpr& e) { return e.p->strategy_count(); })
        .def("__str__", [](const PyExpr& e) { return qdt::to_text(e.p); })
        .def("__repr__", [](const PyExpr& e) { return "Expr('" + qdt::to_text(e.p) + "')"; })
        .def("__eq__",
             [](const PyExpr& a, const PyExpr& b) { return qdt::structurally_equal(a.p, b.p); });

    m.def("parse", [](const std::string& text) { return wrap(qdt::parse_expr(text)); },
          py::arg("text"));
    m.def("to_text", [](const PyExpr& e) { return qdt::to_text(e.p); }, py::arg("expr"));
    m.def("leaf", [](qdt::Gate g) { return wrap(qdt::Expr::leaf(g)); }, py::arg("gate"));
    m.def("node",
          [](qdt::Op op, const PyExpr& l, const PyExpr& r) {
              return wrap(qdt::Expr::node(op, l.p, r.p));
          },
          py::arg("op"), py::arg("left"), py::arg("right"));
    m.def("random_tree",
          [](qdt::Rng& rng, int min_depth, int max_depth) {
              return wrap(qdt::random_tree(rng, min_depth, max_depth));
          },
          py::arg("rng"), py::arg("min_depth"), py::arg("max_depth"));

    py::class_<qdt::Strategy>(m, "Strategy")
        .def_property_readonly("expr", [](const qdt::Strategy& s) { return wrap(s.expr); })
        .def_readonly("weight", &qdt::Strategy::weight)
        .def_readonly("id", &qdt::Strategy::id)
        .def("__repr__", [](const qdt::Strategy& s) {
            return "Strategy(" + qdt::to_text(s.expr) + ", weight=" + std::to_string(s.weight) +
                   ")";
        });

    py::enum_<qdt::Action>(m, "Action")
        .value("A1_BelieveAlive", qdt::Action::A1_BelieveAlive)
        .value("A2_BelieveDead", qdt::Action::A2_BelieveDead);

    py::class_<qdt::Decision>(m, "Decision")
        .def_readonly("action", &qdt::Decision::action)
        .def_readonly("belief", &qdt::Decision::belief)
        .def_readonly("strategy_id", &qdt::Decision::strategy_id)
        .def_readonly("value_operator", &qdt::Decision::value_operator);

    m.def("enumerate_strategies",
          [](const PyExpr& e, std::size_t cap) {
              auto out = qdt::enumerate_strategies(e.p, cap);
              if (!out)
                  throw py::value_error("strategy enumeration exceeds cap of " +
                                        std::to_string(cap));
              return *out;
          },
          py::arg("expr"), py::arg("cap") = 64);
    m.def("evaluate_strategy", &qdt::evaluate_strategy, py::arg("strategy"));
    m.def("value_operator_of", &qdt::value_operator_of, py::arg("strategy"));
    m.def("sample_strategy",
          [](const PyExpr& e, qdt::Rng& rng) { return qdt::sample_strategy(e.p, rng); },
          py::arg("expr"), py::arg("rng"));
    m.def("decide", [](const PyExpr& e, qdt::Rng& rng) { return qdt::decide(e.p, rng); },
          py::arg("expr"), py::arg("rng"));

    // cat environment
    py::enum_<qdt::CatState>(m, "CatState")
        .value("Phi1_Alive", qdt::CatState::Phi1_Alive)
        .value("Phi2_Dead", qdt::CatState::Phi2_Dead);

    py::class_<qdt::MeasurementRecord>(m, "MeasurementRecord")
        .def_readonly("k", &qdt::MeasurementRecord::k)
        .def_readonly("state", &qdt::MeasurementRecord::state)
        .def_readonly("x", &qdt::MeasurementRecord::x)
        .def_readonly("v", &qdt::MeasurementRecord::v);

    py::class_<qdt::CatHistory>(m, "CatHistory")
        .def_readonly("records", &qdt::CatHistory::records)
        .def_readonly("n", &qdt::CatHistory::n)
        .def_readonly("omega1", &qdt::CatHistory::omega1)
        .def_readonly("omega2", &qdt::CatHistory::omega2);

    m.def("generate_history",
          [](std::uint64_t n, double decay_probability, std::uint64_t seed) {
              return qdt::generate_history({n, decay_probability, seed});
          },
          py::arg("n"), py::arg("decay_probability") = 0.5, py::arg("seed") = 0);
    m.def("history_from_decays", &qdt::history_from_decays, py::arg("decayed"));
    m.def("step_value", &qdt::step_value, py::arg("x_prev"), py::arg("x_next"));
    m.def("reward", &qdt::reward, py::arg("action"), py::arg("state"), py::arg("v"));
    m.def("empirical_frequencies", &qdt::empirical_frequencies, py::arg("history"));

    // genetic program
    py::enum_<qdt::FitnessMode>(m, "FitnessMode")
        .value("Expected", qdt::FitnessMode::Expected)
        .value("Sampled", qdt::FitnessMode::Sampled);

    py::class_<qdt::GpConfig>(m, "GpConfig")
        .def(py::init<>())
        .def_readwrite("population_size", &qdt::GpConfig::population_size)
        .def_readwrite("generations", &qdt::GpConfig::generations)
        .def_readwrite("crossover_probability", &qdt::GpConfig::crossover_probability)
        .def_readwrite("mutation_probability", &qdt::GpConfig::mutation_probability)
        .def_readwrite("min_depth", &qdt::GpConfig::min_depth)
        .def_readwrite("max_depth", &qdt::GpConfig::max_depth)
        .def_readwrite("elitism", &qdt::GpConfig::elitism)
        .def_readwrite("strategy_cap", &qdt::GpConfig::strategy_cap)
        .def_readwrite("fitness_mode", &qdt::GpConfig::fitness_mode)
        .def_readwrite("use_omega", &qdt::GpConfig::use_omega)
        .def_readwrite("seed", &qdt::GpConfig::seed);

    py::class_<qdt::Individual>(m, "Individual")
        .def_property_readonly("expr", [](const qdt::Individual& i) { return wrap(i.expr); })
        .def_readonly("fitness", &qdt::Individual::fitness)
        .def_readonly("id", &qdt::Individual::id);

    py::class_<qdt::GenerationStats>(m, "GenerationStats")
        .def_readonly("generation", &qdt::GenerationStats::generation)
        .def_readonly("best_fitness", &qdt::GenerationStats::best_fitness)
        .def_readonly("mean_fitness", &qdt::GenerationStats::mean_fitness)
        .def_readonly("best_tree_text", &qdt::GenerationStats::best_tree_text);

    py::class_<qdt::EvolveResult>(m, "EvolveResult")
        .def_readonly("best", &qdt::EvolveResult::best)
        .def_readonly("stats", &qdt::EvolveResult::stats);

    m.def("fitness",
          [](const PyExpr& e, const qdt::CatHistory& h, qdt::Rng& rng, qdt::FitnessMode mode,
             std::size_t cap, bool use_omega) {
              return qdt::fitness(e.p, h, mode, cap, rng, use_omega);
          },
          py::arg("expr"), py::arg("history"), py::arg("rng"),
          py::arg("mode") = qdt::FitnessMode::Expected, py::arg("cap") = 64,
          py::arg("use_omega") = true);
    m.def("crossover",
          [](const PyExpr& a, const PyExpr& b, int max_depth, qdt::Rng& rng) {
              return wrap(qdt::crossover(a.p, b.p, max_depth, rng));
          },
          py::arg("a"), py::arg("b"), py::arg("max_depth"), py::arg("rng"));
    m.def("mutate",
          [](const PyExpr& e, int min_depth, int max_depth, qdt::Rng& rng) {
              return wrap(qdt::mutate(e.p, min_depth, max_depth, rng));
          },
          py::arg("expr"), py::arg("min_depth"), py::arg("max_depth"), py::arg("rng"));
    m.def("evolve", &qdt::evolve, py::arg("config"), py::arg("history"));

    // experiment surface
    py::class_<qdt::RunReport>(m, "RunReport")
        .def_readonly("n", &qdt::RunReport::n)
        .def_readonly("successes", &qdt::RunReport::successes)
        .def_readonly("success_rate", &qdt::RunReport::success_rate)
        .def_readonly("total_value", &qdt::RunReport::total_value);

    py::class_<qdt::DecisionRow>(m, "DecisionRow")
        .def_readonly("k", &qdt::DecisionRow::k)
        .def_readonly("state", &qdt::DecisionRow::state)
        .def_readonly("action", &qdt::DecisionRow::action)
        .def_readonly("belief", &qdt::DecisionRow::belief)
        .def_readonly("strategy_id", &qdt::DecisionRow::strategy_id)
        .def_readonly("signed_belief", &qdt::DecisionRow::signed_belief)
        .def_readonly("value", &qdt::DecisionRow::value)
        .def_readonly("cumulative_value", &qdt::DecisionRow::cumulative_value);

    py::class_<qdt::DecisionSimulation>(m, "DecisionSimulation")
        .def_readonly("rows", &qdt::DecisionSimulation::rows)
        .def_readonly("report", &qdt::DecisionSimulation::report);

    m.def("simulate_decisions",
          [](const PyExpr& e, const qdt::CatHistory& h, qdt::Rng& rng) {
              return qdt::simulate_decisions(e.p, h, rng);
          },
          py::arg("expr"), py::arg("history"), py::arg("rng"));

    m.def("write_history_csv", &qdt::write_history_csv, py::arg("path"), py::arg("history"));
    m.def("read_history_csv", &qdt::read_history_csv, py::arg("path"));
}
