#include "qdt/gates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdt {

char gate_char(Gate g) {
    switch (g) {
    case Gate::H: return 'H';
    case Gate::X: return 'X';
    case Gate::Y: return 'Y';
    case Gate::Z: return 'Z';
    case Gate::S: return 'S';
    case Gate::D: return 'D';
    case Gate::T: return 'T';
    case Gate::I: return 'I';
    }
    return '?';
}

bool gate_from_char(char c, Gate& out) {
    switch (c) {
    case 'H': out = Gate::H; return true;
    case 'X': out = Gate::X; return true;
    case 'Y': out = Gate::Y; return true;
    case 'Z': out = Gate::Z; return true;
    case 'S': out = Gate::S; return true;
    case 'D': out = Gate::D; return true;
    case 'T': out = Gate::T; return true;
    case 'I': out = Gate::I; return true;
    default: return false;
    }
}

Mat2 add(const Mat2& a, const Mat2& b) {
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

bool operator==(const Mat2& a, const Mat2& b) {
    return a.m11 == b.m11 && a.m12 == b.m12 && a.m21 == b.m21 && a.m22 == b.m22;
}

double max_entry_norm(const Mat2& m) {
    return std::max(std::max(std::abs(m.m11), std::abs(m.m12)),
                    std::max(std::abs(m.m21), std::abs(m.m22)));
}

Complex trace(const Mat2& m) { return m.m11 + m.m22; }

Complex determinant(const Mat2& m) { return m.m11 * m.m22 - m.m12 * m.m21; }

Mat2 gate_matrix(Gate g) {
    static const double s = std::sqrt(0.5);
    switch (g) {
    case Gate::H: return {{s, 0}, {s, 0}, {s, 0}, {-s, 0}};
    case Gate::X: return {{0, 0}, {1, 0}, {1, 0}, {0, 0}};
    case Gate::Y: return {{0, 0}, {0, -1}, {0, 1}, {0, 0}};
    case Gate::Z: return {{1, 0}, {0, 0}, {0, 0}, {-1, 0}};
    case Gate::S: return {{1, 0}, {0, 0}, {0, 0}, {0, 1}};
    case Gate::D: return {{0, 0}, {1, 0}, {-1, 0}, {0, 0}};
    case Gate::T: return {{1, 0}, {0, 0}, {0, 0}, {s, s}};
    case Gate::I: return {{1, 0}, {0, 0}, {0, 0}, {1, 0}};
    }
    return {};
}

std::string to_string(const Mat2& m) {
    std::ostringstream os;
    os << "[[" << m.m11 << ", " << m.m12 << "], [" << m.m21 << ", " << m.m22 << "]]";
    return os.str();
}

} // namespace qdt
