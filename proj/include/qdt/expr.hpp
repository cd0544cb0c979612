#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "qdt/gates.hpp"
#include "qdt/rng.hpp"

namespace qdt {

enum class Op : std::uint8_t { Add, Mul, Or };

class Expr;
// Trees are immutable and shared; rebuilding a path to the root is how all
// "edits" (crossover, mutation) work.
using ExprPtr = std::shared_ptr<const Expr>;

// Expression tree over the eight gates: leaves are gates, interior nodes
// are Add (matrix sum), Mul (matrix product) or Or (probabilistic branch).
class Expr {
public:
    static ExprPtr leaf(Gate g);
    static ExprPtr node(Op op, ExprPtr left, ExprPtr right);

    bool is_leaf() const { return !left_; }
    Gate gate() const { return gate_; }         // leaves only
    Op op() const { return op_; }               // interior only
    const ExprPtr& left() const { return left_; }
    const ExprPtr& right() const { return right_; }

    int depth() const { return depth_; }              // lone leaf has depth 1
    std::size_t size() const { return size_; }        // node count
    // Number of Or-free expansions, saturated at 2^63 to survive towers of
    // Or-under-product trees.
    std::uint64_t strategy_count() const { return strategy_count_; }
    bool strategy_count_saturated() const;

protected:
    Expr() = default;

private:
    Gate gate_ = Gate::I;
    Op op_ = Op::Add;
    ExprPtr left_;
    ExprPtr right_;
    int depth_ = 1;
    std::size_t size_ = 1;
    std::uint64_t strategy_count_ = 1;
};

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// Preorder node access (root is index 0). Both are O(depth) thanks to the
// cached subtree sizes.
ExprPtr subtree_at(const ExprPtr& e, std::size_t index);
ExprPtr replace_at(const ExprPtr& e, std::size_t index, ExprPtr replacement);

// Canonical text: fully parenthesized binary form, e.g. "((I//H)+I)".
// parse_expr(to_text(e)) is structurally identical to e.
std::string to_text(const ExprPtr& e);

// Grammar (ascending precedence, all left-associative):
//   or  := add ("//" add)*
//   add := mul ("+" mul)*
//   mul := atom ("*" atom)*
//   atom := GATE | "(" or ")"
// GATE is one of H X Y Z S D T I; whitespace is ignored.
// Throws TreeParseError with a 1-based position on malformed input.
ExprPtr parse_expr(std::string_view text);

// Random tree by ramped growth: forced interior above min_depth, forced
// leaf at max_depth, in between one uniform draw over the 11 primitives
// (3 operators + 8 gates). Interior ops and leaf gates are each uniform.
ExprPtr random_tree(Rng& rng, int min_depth, int max_depth);

} // namespace qdt
