#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "qdt/errors.hpp"
#include "qdt/expr.hpp"
#include "qdt/strategy.hpp"
#include "test_util.hpp"

using namespace qdt;
using namespace qdt::test;

namespace {

// canonical form of the four-strategy reference tree used throughout
const char* kReferenceTree = "(((I//H)+I)//((Z+(D*(S//T)))*X))";

ExprPtr leaf(Gate g) { return Expr::leaf(g); }

} // namespace

TEST_CASE("parse: single gate") {
    const ExprPtr e = parse_expr("H");
    REQUIRE(e->is_leaf());
    CHECK(e->gate() == Gate::H);
    CHECK(e->depth() == 1);
    CHECK(e->size() == 1);
}

TEST_CASE("parse: reference tree") {
    const ExprPtr e = parse_expr(kReferenceTree);
    REQUIRE_FALSE(e->is_leaf());
    CHECK(e->op() == Op::Or);
    CHECK(e->strategy_count() == 4);
    CHECK(to_text(e) == kReferenceTree);
}

TEST_CASE("parse: flat rendering of the reference tree still has four strategies") {
    // without the inner parens, "//" binds loosest: I//(H+I)
    const ExprPtr e = parse_expr("((I//H+I)//((Z+(D*(S//T)))*X))");
    REQUIRE_FALSE(e->is_leaf());
    CHECK(e->op() == Op::Or);
    CHECK(e->strategy_count() == 4);
    CHECK(to_text(e) == "((I//(H+I))//((Z+(D*(S//T)))*X))");
}

TEST_CASE("parse: precedence and associativity") {
    CHECK(to_text(parse_expr("H+X*Z")) == "(H+(X*Z))");
    CHECK(to_text(parse_expr("H+X+Z")) == "((H+X)+Z)");
    CHECK(to_text(parse_expr("H//X+Z*I")) == "(H//(X+(Z*I)))");
    CHECK(to_text(parse_expr("H*X//Z")) == "((H*X)//Z)");
    CHECK(to_text(parse_expr(" ( H + I ) ")) == "(H+I)");
}

TEST_CASE("parse: malformed input reports a position") {
    CHECK_THROWS_WITH_AS(parse_expr("H+*X"), "parse error at position 3: unexpected '*'",
                         TreeParseError);
    CHECK_THROWS_AS(parse_expr(""), TreeParseError);
    CHECK_THROWS_AS(parse_expr("   "), TreeParseError);
    CHECK_THROWS_AS(parse_expr("(H+I"), TreeParseError);
    CHECK_THROWS_AS(parse_expr("H)"), TreeParseError);
    CHECK_THROWS_AS(parse_expr("H+Q"), TreeParseError);
    CHECK_THROWS_AS(parse_expr("I/H"), TreeParseError); // single slash is not an operator
    CHECK_THROWS_AS(parse_expr("h"), TreeParseError);   // gates are upper case

    try {
        parse_expr("(X+Y))");
    } catch (const TreeParseError& e) {
        CHECK(e.position() == 6);
    }
}

TEST_CASE("to_text: examples") {
    CHECK(to_text(leaf(Gate::H)) == "H");
    CHECK(to_text(Expr::node(Op::Add, leaf(Gate::H), leaf(Gate::I))) == "(H+I)");
    CHECK(to_text(Expr::node(Op::Or, leaf(Gate::I), leaf(Gate::H))) == "(I//H)");
}

TEST_CASE("round trip: parse(to_text(e)) is structurally identical") {
    Rng rng = make_stream(7, 1);
    for (int i = 0; i < 10000; ++i) {
        const ExprPtr e = random_tree(rng, 1, 8);
        const ExprPtr back = parse_expr(to_text(e));
        CHECK(structurally_equal(e, back));
    }
}

TEST_CASE("enumerate: leaf is a single full-weight strategy") {
    const auto out = enumerate_strategies(leaf(Gate::H), 4);
    REQUIRE(out);
    REQUIRE(out->size() == 1);
    CHECK((*out)[0].weight == 1.0);
    CHECK((*out)[0].id == 0);
    CHECK(to_text((*out)[0].expr) == "H");
}

TEST_CASE("enumerate: nested Or weights are per-branch coin products") {
    const ExprPtr e =
        Expr::node(Op::Or, leaf(Gate::H), Expr::node(Op::Or, leaf(Gate::X), leaf(Gate::Z)));
    const auto out = enumerate_strategies(e, 8);
    REQUIRE(out);
    REQUIRE(out->size() == 3);
    CHECK((*out)[0].weight == 0.5);
    CHECK(to_text((*out)[0].expr) == "H");
    CHECK((*out)[1].weight == 0.25);
    CHECK(to_text((*out)[1].expr) == "X");
    CHECK((*out)[2].weight == 0.25);
    CHECK(to_text((*out)[2].expr) == "Z");
}

TEST_CASE("enumerate: the reference tree gives the four known strategies") {
    const auto out = enumerate_strategies(parse_expr(kReferenceTree), 64);
    REQUIRE(out);
    REQUIRE(out->size() == 4);
    CHECK(to_text((*out)[0].expr) == "(I+I)");
    CHECK(to_text((*out)[1].expr) == "(H+I)");
    CHECK(to_text((*out)[2].expr) == "((Z+(D*S))*X)");
    CHECK(to_text((*out)[3].expr) == "((Z+(D*T))*X)");
    for (const auto& s : *out) CHECK(s.weight == 0.25);
}

TEST_CASE("enumerate: weights sum to 1 when enumeration fits") {
    Rng rng = make_stream(7, 2);
    int enumerated = 0;
    for (int i = 0; i < 3000; ++i) {
        const ExprPtr e = random_tree(rng, 1, 8);
        const auto out = enumerate_strategies(e, 64);
        if (!out) continue;
        ++enumerated;
        double total = 0.0;
        for (const auto& s : *out) total += s.weight;
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
    CHECK(enumerated > 2500);
}

TEST_CASE("enumerate: overflow is signaled, not truncated") {
    // seven Or nodes combined multiplicatively: 16 * 8 = 128 strategies
    const ExprPtr e = parse_expr(
        "((((H//X)+(Y//Z))*((S//D)+(T//I)))+(((H//X)+(Y//Z))+(S//D)))");
    CHECK(e->strategy_count() == 128);
    CHECK_FALSE(enumerate_strategies(e, 64));
    CHECK_FALSE(enumerate_strategies(e, 127));
    CHECK(enumerate_strategies(e, 128));
}

TEST_CASE("evaluate_strategy: folds") {
    const auto strategies = *enumerate_strategies(parse_expr(kReferenceTree), 64);
    // (I+I) -> 2I
    CHECK(evaluate_strategy(strategies[0]) == Mat2{{2, 0}, {0, 0}, {0, 0}, {2, 0}});
    // ((Z+(D*S))*X) by hand: Z + D·S = [[1,i],[-1,-1]], right-multiplied by X
    const Mat2 s3 = evaluate_strategy(strategies[2]);
    CHECK(mat_close(s3, {{0, 1}, {1, 0}, {-1, 0}, {-1, 0}}, 0.0));
    // (H+I)
    const double s = std::sqrt(0.5);
    CHECK(mat_close(evaluate_strategy(strategies[1]), {{1 + s, 0}, {s, 0}, {s, 0}, {1 - s, 0}},
                    1e-15));
}

TEST_CASE("strategy counts saturate instead of overflowing") {
    // Or under repeated products squares the count: 2, 4, 16, ..., 2^64
    ExprPtr t = Expr::node(Op::Or, leaf(Gate::H), leaf(Gate::X));
    for (int i = 0; i < 6; ++i) t = Expr::node(Op::Add, t, t);
    CHECK(t->strategy_count_saturated());
    CHECK_FALSE(enumerate_strategies(t, 1000000));
    // sampling and mixture evaluation still work
    Rng rng = make_stream(7, 20);
    const Strategy s = sample_strategy(t, rng);
    CHECK(s.weight > 0.0);
    const Mat2 m = evaluate_strategy(s);
    CHECK(std::isfinite(m.m11.real()));
    const auto mixture = mixture_beliefs(t, 64, 32, rng);
    CHECK(mixture.size() == 32);
}

TEST_CASE("evaluate_or_free rejects Or nodes") {
    CHECK_THROWS_AS(evaluate_or_free(Expr::node(Op::Or, leaf(Gate::H), leaf(Gate::X))),
                    std::logic_error);
}

TEST_CASE("value operators of the reference strategies") {
    const auto strategies = *enumerate_strategies(parse_expr(kReferenceTree), 64);
    const ValueOperator s1 = value_operator_of(strategies[0]);
    CHECK(s1.p1 == 0.5);
    CHECK(s1.p2 == 0.5);
    const ValueOperator s2 = value_operator_of(strategies[1]);
    CHECK(s2.p1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s2.p2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    // the complex-spectrum strategies only promise a valid, reproducible pair
    for (int idx : {2, 3}) {
        const ValueOperator vo = value_operator_of(strategies[idx]);
        CHECK(vo.p1 >= 0.0);
        CHECK(vo.p1 <= 1.0);
        CHECK(std::abs(vo.p1 + vo.p2 - 1.0) <= 1e-12);
        const ValueOperator again = value_operator_of(strategies[idx]);
        CHECK(vo.p1 == again.p1);
        CHECK(vo.p2 == again.p2);
    }
}

TEST_CASE("mixture_beliefs agrees with the enumerate-and-evaluate route") {
    Rng rng = make_stream(7, 3);
    for (int i = 0; i < 300; ++i) {
        const ExprPtr e = random_tree(rng, 1, 7);
        const auto strategies = enumerate_strategies(e, 64);
        if (!strategies) continue;
        Rng unused = make_stream(0);
        const auto mixture = mixture_beliefs(e, 64, 256, unused);
        REQUIRE(mixture.size() == strategies->size());
        for (std::size_t k = 0; k < mixture.size(); ++k) {
            const ValueOperator vo = value_operator_of((*strategies)[k]);
            CHECK(mixture[k].p1 == vo.p1);
            CHECK(mixture[k].p2 == vo.p2);
            CHECK(mixture[k].weight == (*strategies)[k].weight);
        }
    }
}

TEST_CASE("evaluate distributes over a top-level Or") {
    Rng rng = make_stream(7, 4);
    for (int i = 0; i < 100; ++i) {
        const ExprPtr a = random_tree(rng, 1, 5);
        const ExprPtr b = random_tree(rng, 1, 5);
        const ExprPtr e = Expr::node(Op::Or, a, b);
        const auto whole = enumerate_strategies(e, 4096);
        const auto left = enumerate_strategies(a, 4096);
        const auto right = enumerate_strategies(b, 4096);
        if (!whole || !left || !right) continue;
        REQUIRE(whole->size() == left->size() + right->size());
        for (std::size_t k = 0; k < left->size(); ++k) {
            CHECK(evaluate_strategy((*whole)[k]) == evaluate_strategy((*left)[k]));
            CHECK((*whole)[k].weight == (*left)[k].weight * 0.5);
        }
        for (std::size_t k = 0; k < right->size(); ++k) {
            CHECK(evaluate_strategy((*whole)[left->size() + k]) ==
                  evaluate_strategy((*right)[k]));
        }
    }
}

TEST_CASE("sample_strategy: leaf always returns itself") {
    Rng rng = make_stream(7, 5);
    for (int i = 0; i < 50; ++i) {
        const Strategy s = sample_strategy(leaf(Gate::H), rng);
        CHECK(to_text(s.expr) == "H");
        CHECK(s.weight == 1.0);
        CHECK(s.id == 0);
    }
}

TEST_CASE("sample_strategy: ids and trees match enumeration order") {
    Rng rng = make_stream(7, 6);
    const ExprPtr e = parse_expr(kReferenceTree);
    const auto strategies = *enumerate_strategies(e, 64);
    for (int i = 0; i < 2000; ++i) {
        const Strategy s = sample_strategy(e, rng);
        REQUIRE(s.id < strategies.size());
        CHECK(structurally_equal(s.expr, strategies[s.id].expr));
        CHECK(s.weight == 0.25);
    }
}

TEST_CASE("sample_strategy: reference tree frequencies are 1/4 each") {
    Rng rng = make_stream(7, 7);
    const ExprPtr e = parse_expr(kReferenceTree);
    std::vector<std::uint64_t> counts(4, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[sample_strategy(e, rng).id];
    for (const auto c : counts)
        CHECK(std::abs(static_cast<double>(c) / n - 0.25) <= 0.01);
    CHECK(chi_square(counts, {0.25, 0.25, 0.25, 0.25}) <= chi_square_crit_99(3));
}

TEST_CASE("sampled frequencies match enumeration weights on random trees") {
    Rng tree_rng = make_stream(7, 8);
    int tested = 0;
    while (tested < 5) {
        const ExprPtr e = random_tree(tree_rng, 2, 6);
        const auto strategies = enumerate_strategies(e, 16);
        if (!strategies || strategies->size() < 2) continue;
        ++tested;
        std::vector<std::uint64_t> counts(strategies->size(), 0);
        std::vector<double> probs;
        for (const auto& s : *strategies) probs.push_back(s.weight);
        Rng rng = make_stream(7, 80 + tested);
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            const Strategy s = sample_strategy(e, rng);
            REQUIRE(s.id < counts.size());
            ++counts[s.id];
        }
        CHECK(chi_square(counts, probs) <=
              chi_square_crit_99(static_cast<int>(strategies->size()) - 1));
    }
}

TEST_CASE("decide: deterministic-belief tree always believes alive") {
    Rng rng = make_stream(7, 9);
    const ExprPtr e = parse_expr("(H+I)");
    for (int i = 0; i < 10000; ++i) {
        const Decision d = decide(e, rng);
        CHECK(d.action == Action::A1_BelieveAlive);
        CHECK(d.belief == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("decide: (I+I) splits evenly with belief one half") {
    Rng rng = make_stream(7, 10);
    const ExprPtr e = parse_expr("(I+I)");
    const int n = 100000;
    int alive = 0;
    for (int i = 0; i < n; ++i) {
        const Decision d = decide(e, rng);
        CHECK(d.belief == 0.5);
        if (d.action == Action::A1_BelieveAlive) ++alive;
    }
    CHECK(std::abs(static_cast<double>(alive) / n - 0.5) <= 0.01);
}

TEST_CASE("decide: lone identity leaf falls back to even beliefs") {
    Rng rng = make_stream(7, 11);
    const Decision d = decide(leaf(Gate::I), rng);
    CHECK(d.belief == 0.5);
    CHECK(d.value_operator.p1 == 0.5);
    CHECK(d.value_operator.source_eigen.degenerate);
}

TEST_CASE("decide: action frequencies conditioned on the strategy match its beliefs") {
    Rng rng = make_stream(7, 12);
    const ExprPtr e = parse_expr(kReferenceTree);
    const auto strategies = *enumerate_strategies(e, 64);
    std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> by_strategy;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const Decision d = decide(e, rng);
        auto& [total, alive] = by_strategy[d.strategy_id];
        ++total;
        if (d.action == Action::A1_BelieveAlive) ++alive;
    }
    REQUIRE(by_strategy.size() == 4);
    for (const auto& [id, counts] : by_strategy) {
        const double p1 = value_operator_of(strategies[id]).p1;
        const double freq = static_cast<double>(counts.second) / counts.first;
        CHECK(std::abs(freq - p1) <= 0.01);
    }
}

TEST_CASE("random_tree: depth bounds are hard") {
    Rng rng = make_stream(7, 13);
    for (int i = 0; i < 200; ++i) {
        CHECK(random_tree(rng, 1, 1)->is_leaf());
        CHECK_FALSE(random_tree(rng, 2, 5)->is_leaf());
    }
    for (int i = 0; i < 10000; ++i) {
        const ExprPtr e = random_tree(rng, 2, 6);
        CHECK(e->depth() >= 2);
        CHECK(e->depth() <= 6);
    }
    CHECK_THROWS_AS(random_tree(rng, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(random_tree(rng, 0, 2), std::invalid_argument);
}

TEST_CASE("random_tree: leaf gates are uniform within 3 sigma") {
    Rng rng = make_stream(7, 14);
    std::vector<std::uint64_t> counts(kGateCount, 0);
    std::uint64_t leaves = 0;
    for (int i = 0; i < 10000; ++i) {
        ExprPtr e = random_tree(rng, 1, 6);
        for (std::size_t idx = 0; idx < e->size(); ++idx) {
            const ExprPtr node = subtree_at(e, idx);
            if (node->is_leaf()) {
                ++counts[static_cast<std::size_t>(node->gate())];
                ++leaves;
            }
        }
    }
    const double p = 1.0 / kGateCount;
    const double sigma = std::sqrt(static_cast<double>(leaves) * p * (1 - p));
    for (const auto c : counts)
        CHECK(std::abs(static_cast<double>(c) - static_cast<double>(leaves) * p) <= 3.0 * sigma);
}

TEST_CASE("subtree access uses preorder indices") {
    const ExprPtr e = parse_expr("((H+X)*(Z//I))");
    REQUIRE(e->size() == 7);
    CHECK(subtree_at(e, 0).get() == e.get());
    CHECK(to_text(subtree_at(e, 1)) == "(H+X)");
    CHECK(subtree_at(e, 2)->gate() == Gate::H);
    CHECK(subtree_at(e, 3)->gate() == Gate::X);
    CHECK(to_text(subtree_at(e, 4)) == "(Z//I)");
    CHECK(subtree_at(e, 5)->gate() == Gate::Z);
    CHECK(subtree_at(e, 6)->gate() == Gate::I);
    CHECK_THROWS_AS(subtree_at(e, 7), std::out_of_range);

    const ExprPtr swapped = replace_at(e, 4, leaf(Gate::Y));
    CHECK(to_text(swapped) == "((H+X)*Y)");
    CHECK(to_text(e) == "((H+X)*(Z//I))"); // original untouched
    CHECK(to_text(replace_at(e, 0, leaf(Gate::T))) == "T");
}
