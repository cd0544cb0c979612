#include "qdt/expr.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

constexpr std::uint64_t kCountSaturation = 1ULL << 63;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    if (a >= kCountSaturation || b >= kCountSaturation || a + b >= kCountSaturation)
        return kCountSaturation;
    return a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a >= kCountSaturation || b >= kCountSaturation || a > kCountSaturation / b)
        return kCountSaturation;
    return a * b;
}

struct ExprAccess : Expr {
    // Expr's constructor is private; this gives the factories a way in.
};

} // namespace

ExprPtr Expr::leaf(Gate g) {
    auto e = std::make_shared<ExprAccess>();
    e->gate_ = g;
    return e;
}

ExprPtr Expr::node(Op op, ExprPtr left, ExprPtr right) {
    assert(left && right);
    auto e = std::make_shared<ExprAccess>();
    e->op_ = op;
    e->depth_ = 1 + std::max(left->depth_, right->depth_);
    e->size_ = 1 + left->size_ + right->size_;
    e->strategy_count_ = op == Op::Or
                             ? sat_add(left->strategy_count_, right->strategy_count_)
                             : sat_mul(left->strategy_count_, right->strategy_count_);
    e->left_ = std::move(left);
    e->right_ = std::move(right);
    return e;
}

bool Expr::strategy_count_saturated() const { return strategy_count_ >= kCountSaturation; }

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->is_leaf() != b->is_leaf()) return false;
    if (a->is_leaf()) return a->gate() == b->gate();
    return a->op() == b->op() && structurally_equal(a->left(), b->left()) &&
           structurally_equal(a->right(), b->right());
}

ExprPtr subtree_at(const ExprPtr& e, std::size_t index) {
    if (index >= e->size()) throw std::out_of_range("subtree index out of range");
    if (index == 0) return e;
    const std::size_t left_size = e->left()->size();
    if (index <= left_size) return subtree_at(e->left(), index - 1);
    return subtree_at(e->right(), index - 1 - left_size);
}

ExprPtr replace_at(const ExprPtr& e, std::size_t index, ExprPtr replacement) {
    if (index >= e->size()) throw std::out_of_range("subtree index out of range");
    if (index == 0) return replacement;
    const std::size_t left_size = e->left()->size();
    if (index <= left_size)
        return Expr::node(e->op(), replace_at(e->left(), index - 1, std::move(replacement)),
                          e->right());
    return Expr::node(e->op(), e->left(),
                      replace_at(e->right(), index - 1 - left_size, std::move(replacement)));
}

namespace {

void print(const ExprPtr& e, std::string& out) {
    if (e->is_leaf()) {
        out.push_back(gate_char(e->gate()));
        return;
    }
    out.push_back('(');
    print(e->left(), out);
    switch (e->op()) {
    case Op::Add: out.push_back('+'); break;
    case Op::Mul: out.push_back('*'); break;
    case Op::Or: out += "//"; break;
    }
    print(e->right(), out);
    out.push_back(')');
}

// Single-token lookahead scanner over the raw text; positions are 1-based.
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr run() {
        skip_space();
        if (pos_ >= text_.size()) throw TreeParseError(pos_ + 1, "empty input");
        ExprPtr e = parse_or();
        skip_space();
        if (pos_ < text_.size())
            throw TreeParseError(pos_ + 1, std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    ExprPtr parse_or() {
        ExprPtr e = parse_add();
        while (peek_token("//")) {
            consume(2);
            e = Expr::node(Op::Or, e, parse_add());
        }
        return e;
    }

    ExprPtr parse_add() {
        ExprPtr e = parse_mul();
        while (peek_token("+")) {
            consume(1);
            e = Expr::node(Op::Add, e, parse_mul());
        }
        return e;
    }

    ExprPtr parse_mul() {
        ExprPtr e = parse_atom();
        while (peek_token("*")) {
            consume(1);
            e = Expr::node(Op::Mul, e, parse_atom());
        }
        return e;
    }

    ExprPtr parse_atom() {
        skip_space();
        if (pos_ >= text_.size())
            throw TreeParseError(pos_ + 1, "unexpected end of input, expected a gate or '('");
        const char c = text_[pos_];
        Gate g;
        if (gate_from_char(c, g)) {
            ++pos_;
            return Expr::leaf(g);
        }
        if (c == '(') {
            const std::size_t open = pos_ + 1;
            ++pos_;
            ExprPtr e = parse_or();
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                throw TreeParseError(pos_ + 1,
                                     "expected ')' for '(' at position " + std::to_string(open));
            ++pos_;
            return e;
        }
        throw TreeParseError(pos_ + 1, std::string("unexpected '") + c + "'");
    }

    bool peek_token(std::string_view tok) {
        skip_space();
        return text_.substr(pos_, tok.size()) == tok;
    }

    void consume(std::size_t len) { pos_ += len; }

    void skip_space() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                text_[pos_] == '\r')) {
            ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

std::string to_text(const ExprPtr& e) {
    std::string out;
    out.reserve(e->size() * 4);
    print(e, out);
    return out;
}

ExprPtr parse_expr(std::string_view text) { return Parser(text).run(); }

ExprPtr random_tree(Rng& rng, int min_depth, int max_depth) {
    if (min_depth < 1 || min_depth > max_depth)
        throw std::invalid_argument("random_tree: need 1 <= min_depth <= max_depth");

    // depth is 1-based: a node grown at depth == max_depth must be a leaf.
    struct Grower {
        Rng& rng;
        int min_depth;
        int max_depth;

        ExprPtr grow(int depth) {
            bool make_leaf;
            if (depth >= max_depth) {
                make_leaf = true;
            } else if (depth < min_depth) {
                make_leaf = false;
            } else {
                // uniform over the 11 primitives: 8 gates, 3 operators
                make_leaf = next_below(rng, 11) < 8;
            }
            if (make_leaf)
                return Expr::leaf(kAllGates[static_cast<std::size_t>(next_below(rng, kGateCount))]);
            static constexpr Op kOps[3] = {Op::Add, Op::Mul, Op::Or};
            const Op op = kOps[next_below(rng, 3)];
            ExprPtr left = grow(depth + 1);
            ExprPtr right = grow(depth + 1);
            return Expr::node(op, std::move(left), std::move(right));
        }
    };
    return Grower{rng, min_depth, max_depth}.grow(1);
}

} // namespace qdt
