#pragma once

#include <array>

#include "qdt/gates.hpp"

namespace qdt {

using Vec2 = std::array<Complex, 2>;

// Closed-form eigendecomposition result. When `degenerate` is false, each
// (lambda, vec) pair satisfies ||M v - lambda v|| <= 1e-9 * max(1, ||M||)
// in the max-entry norm; eigenvectors are unit length with their dominant
// component made real nonnegative so results are reproducible.
struct EigenPair {
    Complex lambda1{0.0, 0.0};
    Complex lambda2{0.0, 0.0};
    Vec2 vec1{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    Vec2 vec2{Complex{0.0, 0.0}, Complex{1.0, 0.0}};
    bool degenerate = false;
};

// Belief pair extracted from a value-operator matrix: p1 is the probability
// of believing the cat alive, p2 of believing it dead. p1 + p2 == 1.
struct ValueOperator {
    double p1 = 0.5;
    double p2 = 0.5;
    EigenPair source_eigen; // diagnostic
};

// Roots of lambda^2 - tr(m)·lambda + det(m) = 0 via the complex quadratic
// formula, eigenvectors from the null space of (m - lambda I). Degeneracy
// (repeated/defective spectrum, or no stable eigenvector basis) is a flag,
// never an error.
EigenPair eigen2(const Mat2& m);

// Turns an eigendecomposition into beliefs. Weights are the eigenvalue
// magnitudes |lambda_i|; p1 takes the weight of the eigenvalue whose
// eigenvector overlaps |a1> = (1,0) more (larger |v[0]|^2), ties going to
// the larger-magnitude eigenvalue. Degenerate or zero-weight inputs fall
// back to the maximum-entropy pair (0.5, 0.5).
ValueOperator normalize_to_beliefs(const EigenPair& e);

} // namespace qdt
