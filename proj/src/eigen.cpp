#include "qdt/eigen.hpp"

#include <algorithm>
#include <cmath>

namespace qdt {

namespace {

constexpr double kDegenerateTol = 1e-12;
constexpr double kResidualTol = 1e-9;
constexpr double kTieTol = 1e-9;

double norm2(const Vec2& v) { return std::norm(v[0]) + std::norm(v[1]); }

// Unit length, dominant component real nonnegative. Pinning the phase makes
// eigenvectors reproducible and lets diagonal matrices recover the basis
// vectors exactly.
Vec2 canonicalize(Vec2 v) {
    const double len = std::sqrt(norm2(v));
    v[0] /= len;
    v[1] /= len;
    const int dom = std::abs(v[0]) >= std::abs(v[1]) ? 0 : 1;
    const double mag = std::abs(v[dom]);
    if (mag > 0.0) {
        const Complex phase = std::conj(v[dom]) / mag;
        v[0] *= phase;
        v[1] *= phase;
        v[dom] = Complex{std::abs(v[dom]), 0.0}; // kill rounding residue
    }
    return v;
}

// Null vector of (m - lambda I): both rows give a candidate; take the one
// with the larger norm. Returns false when both vanish at the matrix scale.
bool null_vector(const Mat2& m, const Complex& lambda, double scale, Vec2& out) {
    const Vec2 from_row1{m.m12, lambda - m.m11};
    const Vec2 from_row2{lambda - m.m22, m.m21};
    const double n1 = norm2(from_row1);
    const double n2 = norm2(from_row2);
    const Vec2& best = n1 >= n2 ? from_row1 : from_row2;
    const double floor = kDegenerateTol * std::max(1.0, scale);
    if (std::sqrt(std::max(n1, n2)) <= floor) return false;
    out = canonicalize(best);
    return true;
}

double residual(const Mat2& m, const Complex& lambda, const Vec2& v) {
    const Complex r1 = m.m11 * v[0] + m.m12 * v[1] - lambda * v[0];
    const Complex r2 = m.m21 * v[0] + m.m22 * v[1] - lambda * v[1];
    return std::max(std::abs(r1), std::abs(r2));
}

} // namespace

EigenPair eigen2(const Mat2& m) {
    EigenPair out;
    const Complex tr = trace(m);
    const Complex det = determinant(m);
    const Complex disc = tr * tr - 4.0 * det;
    const Complex root = std::sqrt(disc);
    out.lambda1 = (tr + root) / 2.0;
    out.lambda2 = (tr - root) / 2.0;

    const double scale = max_entry_norm(m);
    if (std::abs(disc) < kDegenerateTol * std::max(1.0, scale * scale)) {
        out.degenerate = true;
        return out;
    }

    Vec2 v1, v2;
    if (!null_vector(m, out.lambda1, scale, v1) || !null_vector(m, out.lambda2, scale, v2)) {
        out.degenerate = true;
        return out;
    }
    const double allowed = kResidualTol * std::max(1.0, scale);
    if (residual(m, out.lambda1, v1) > allowed || residual(m, out.lambda2, v2) > allowed) {
        out.degenerate = true; // no stable eigenvector basis
        return out;
    }
    out.vec1 = v1;
    out.vec2 = v2;
    return out;
}

ValueOperator normalize_to_beliefs(const EigenPair& e) {
    ValueOperator vo;
    vo.source_eigen = e;

    const double w1 = std::abs(e.lambda1);
    const double w2 = std::abs(e.lambda2);
    const double total = w1 + w2;
    if (e.degenerate || total < kDegenerateTol) {
        vo.p1 = 0.5;
        vo.p2 = 0.5;
        return vo;
    }

    const double overlap1 = std::norm(e.vec1[0]);
    const double overlap2 = std::norm(e.vec2[0]);
    bool first_to_p1;
    if (std::abs(overlap1 - overlap2) < kTieTol) {
        first_to_p1 = w1 >= w2; // tie: larger magnitude to p1
    } else {
        first_to_p1 = overlap1 > overlap2;
    }
    const double wp1 = first_to_p1 ? w1 : w2;
    const double wp2 = first_to_p1 ? w2 : w1;
    vo.p1 = wp1 / total;
    vo.p2 = wp2 / total;
    return vo;
}

} // namespace qdt
