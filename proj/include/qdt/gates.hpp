#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

namespace qdt {

using Complex = std::complex<double>;

// The eight single-qubit gate constants usable as tree leaves.
enum class Gate : std::uint8_t { H, X, Y, Z, S, D, T, I };

inline constexpr int kGateCount = 8;
inline constexpr std::array<Gate, kGateCount> kAllGates = {
    Gate::H, Gate::X, Gate::Y, Gate::Z, Gate::S, Gate::D, Gate::T, Gate::I};

char gate_char(Gate g);

// Maps 'H'..'I' back to a gate; returns false for any other character.
bool gate_from_char(char c, Gate& out);

// 2x2 complex matrix. Carrier for gates, tree evaluations and value
// operators before normalization. Plain value type, no hidden state.
struct Mat2 {
    Complex m11{0.0, 0.0};
    Complex m12{0.0, 0.0};
    Complex m21{0.0, 0.0};
    Complex m22{0.0, 0.0};
};

Mat2 add(const Mat2& a, const Mat2& b);

// Standard matrix product a·b (left operand applied to the left).
Mat2 mul(const Mat2& a, const Mat2& b);

inline Mat2 operator+(const Mat2& a, const Mat2& b) { return add(a, b); }
inline Mat2 operator*(const Mat2& a, const Mat2& b) { return mul(a, b); }

bool operator==(const Mat2& a, const Mat2& b);

// Max-entry norm, the scale reference for all tolerances in this module.
double max_entry_norm(const Mat2& m);

Complex trace(const Mat2& m);
Complex determinant(const Mat2& m);

// The defining matrix of each gate. H uses 1/sqrt(2) at full double
// precision; T's corner entry is exp(i*pi/4) = (sqrt(2)/2)(1 + i).
Mat2 gate_matrix(Gate g);

std::string to_string(const Mat2& m);

} // namespace qdt
