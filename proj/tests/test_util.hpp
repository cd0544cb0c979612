#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qdt/eigen.hpp"
#include "qdt/gates.hpp"
#include "qdt/rng.hpp"

namespace qdt::test {

inline bool complex_close(const Complex& a, const Complex& b, double tol) {
    return std::abs(a - b) <= tol;
}

inline bool mat_close(const Mat2& a, const Mat2& b, double tol) {
    return complex_close(a.m11, b.m11, tol) && complex_close(a.m12, b.m12, tol) &&
           complex_close(a.m21, b.m21, tol) && complex_close(a.m22, b.m22, tol);
}

inline Mat2 random_mat(Rng& rng, double half_width = 2.0) {
    auto u = [&] { return (next_unit(rng) * 2.0 - 1.0) * half_width; };
    auto c = [&] { return Complex{u(), u()}; };
    return {c(), c(), c(), c()};
}

inline double eigen_residual(const Mat2& m, const Complex& lambda, const Vec2& v) {
    const Complex r1 = m.m11 * v[0] + m.m12 * v[1] - lambda * v[0];
    const Complex r2 = m.m21 * v[0] + m.m22 * v[1] - lambda * v[1];
    return std::max(std::abs(r1), std::abs(r2));
}

// Pearson chi-square statistic for observed counts against probabilities.
inline double chi_square(const std::vector<std::uint64_t>& counts,
                         const std::vector<double>& probs) {
    double n = 0.0;
    for (const auto c : counts) n += static_cast<double>(c);
    double stat = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = n * probs[i];
        const double diff = static_cast<double>(counts[i]) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

// Critical values of the chi-square distribution at the 99% level
// (alpha = 0.01) for 1..15 degrees of freedom.
inline double chi_square_crit_99(int df) {
    static const double table[] = {6.635,  9.210,  11.345, 13.277, 15.086,
                                   16.812, 18.475, 20.090, 21.666, 23.209,
                                   24.725, 26.217, 27.688, 29.141, 30.578};
    return table[df - 1];
}

} // namespace qdt::test
