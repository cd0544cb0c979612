#include "qdt/strategy.hpp"

#include <stdexcept>

namespace qdt {

namespace {

// Or-free expansions with relative weights, enumeration order: at an Or the
// whole left block precedes the right block; at Add/Mul the left expansion
// is the outer loop. Or nodes on discarded branches contribute no factor.
void expand(const ExprPtr& e, std::vector<std::pair<ExprPtr, double>>& out) {
    if (e->is_leaf()) {
        out.push_back({e, 1.0});
        return;
    }
    std::vector<std::pair<ExprPtr, double>> left, right;
    expand(e->left(), left);
    if (e->op() == Op::Or) {
        expand(e->right(), right);
        out.reserve(left.size() + right.size());
        for (auto& [expr, w] : left) out.push_back({std::move(expr), w * 0.5});
        for (auto& [expr, w] : right) out.push_back({std::move(expr), w * 0.5});
        return;
    }
    expand(e->right(), right);
    out.reserve(left.size() * right.size());
    for (const auto& [le, lw] : left)
        for (const auto& [re, rw] : right) out.push_back({Expr::node(e->op(), le, re), lw * rw});
}

// Same recursion as expand() but folding matrices instead of building trees.
void expand_matrices(const ExprPtr& e, std::vector<std::pair<Mat2, double>>& out) {
    if (e->is_leaf()) {
        out.push_back({gate_matrix(e->gate()), 1.0});
        return;
    }
    std::vector<std::pair<Mat2, double>> left, right;
    expand_matrices(e->left(), left);
    expand_matrices(e->right(), right);
    if (e->op() == Op::Or) {
        out.reserve(left.size() + right.size());
        for (const auto& [m, w] : left) out.push_back({m, w * 0.5});
        for (const auto& [m, w] : right) out.push_back({m, w * 0.5});
        return;
    }
    out.reserve(left.size() * right.size());
    for (const auto& [lm, lw] : left)
        for (const auto& [rm, rw] : right)
            out.push_back({e->op() == Op::Add ? add(lm, rm) : mul(lm, rm), lw * rw});
}

struct SampledNode {
    ExprPtr expr;
    double weight;
    std::uint64_t id;
};

// One coin per Or on the realized path; id composes so that it matches the
// enumeration index (exact while subtree counts are unsaturated).
SampledNode sample_node(const ExprPtr& e, Rng& rng) {
    if (e->is_leaf()) return {e, 1.0, 0};
    if (e->op() == Op::Or) {
        const bool take_right = next_coin(rng);
        SampledNode inner = sample_node(take_right ? e->right() : e->left(), rng);
        inner.weight *= 0.5;
        if (take_right) inner.id += e->left()->strategy_count();
        return inner;
    }
    SampledNode left = sample_node(e->left(), rng);
    SampledNode right = sample_node(e->right(), rng);
    return {Expr::node(e->op(), std::move(left.expr), std::move(right.expr)),
            left.weight * right.weight,
            left.id * e->right()->strategy_count() + right.id};
}

Mat2 fold(const ExprPtr& e) {
    if (e->is_leaf()) return gate_matrix(e->gate());
    switch (e->op()) {
    case Op::Add: return add(fold(e->left()), fold(e->right()));
    case Op::Mul: return mul(fold(e->left()), fold(e->right()));
    case Op::Or: break;
    }
    throw std::logic_error("evaluate_or_free: tree contains an Or node");
}

} // namespace

std::optional<std::vector<Strategy>> enumerate_strategies(const ExprPtr& e, std::size_t cap) {
    if (cap < 1) throw std::invalid_argument("enumerate_strategies: cap must be >= 1");
    if (e->strategy_count_saturated() || e->strategy_count() > cap) return std::nullopt;
    std::vector<std::pair<ExprPtr, double>> flat;
    expand(e, flat);
    std::vector<Strategy> out;
    out.reserve(flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i)
        out.push_back({std::move(flat[i].first), flat[i].second, i});
    return out;
}

Mat2 evaluate_or_free(const ExprPtr& e) { return fold(e); }

Mat2 evaluate_strategy(const Strategy& s) { return fold(s.expr); }

ValueOperator value_operator_of(const Strategy& s) {
    return normalize_to_beliefs(eigen2(evaluate_strategy(s)));
}

std::vector<WeightedBeliefs> mixture_beliefs(const ExprPtr& e, std::size_t cap,
                                             std::size_t samples_on_overflow, Rng& rng) {
    std::vector<WeightedBeliefs> out;
    if (!e->strategy_count_saturated() && e->strategy_count() <= cap) {
        std::vector<std::pair<Mat2, double>> flat;
        expand_matrices(e, flat);
        out.reserve(flat.size());
        for (const auto& [m, w] : flat) {
            const ValueOperator vo = normalize_to_beliefs(eigen2(m));
            out.push_back({vo.p1, vo.p2, w});
        }
        return out;
    }
    const double w = 1.0 / static_cast<double>(samples_on_overflow);
    out.reserve(samples_on_overflow);
    for (std::size_t i = 0; i < samples_on_overflow; ++i) {
        const Strategy s = sample_strategy(e, rng);
        const ValueOperator vo = value_operator_of(s);
        out.push_back({vo.p1, vo.p2, w});
    }
    return out;
}

Strategy sample_strategy(const ExprPtr& e, Rng& rng) {
    SampledNode n = sample_node(e, rng);
    return {std::move(n.expr), n.weight, n.id};
}

Decision decide(const ExprPtr& e, Rng& rng) {
    const Strategy s = sample_strategy(e, rng);
    const ValueOperator vo = value_operator_of(s);
    Decision d;
    d.strategy_id = s.id;
    d.value_operator = vo;
    if (next_unit(rng) < vo.p1) {
        d.action = Action::A1_BelieveAlive;
        d.belief = vo.p1;
    } else {
        d.action = Action::A2_BelieveDead;
        d.belief = vo.p2;
    }
    return d;
}

} // namespace qdt
