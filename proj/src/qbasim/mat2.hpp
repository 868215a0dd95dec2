#pragma once

#include <cmath>
#include <complex>

namespace qbasim {

using cplx = std::complex<double>;

struct Vec2c {
    cplx x{0.0};
    cplx p{0.0};
};

// 2x2 complex quadrature transfer matrix, row-major entries.
struct Mat2c {
    cplx a11{0.0}, a12{0.0};
    cplx a21{0.0}, a22{0.0};

    static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2c zero() { return {}; }

    cplx det() const { return a11 * a22 - a12 * a21; }
};

inline Mat2c operator+(const Mat2c& a, const Mat2c& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

inline Mat2c operator-(const Mat2c& a, const Mat2c& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

inline Mat2c operator*(const cplx& s, const Mat2c& m) {
    return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
}

inline Mat2c operator*(double s, const Mat2c& m) { return cplx(s) * m; }

inline Mat2c operator*(const Mat2c& a, const Mat2c& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

inline Vec2c operator*(const Mat2c& m, const Vec2c& v) {
    return {m.a11 * v.x + m.a12 * v.p, m.a21 * v.x + m.a22 * v.p};
}

inline Vec2c operator*(const cplx& s, const Vec2c& v) { return {s * v.x, s * v.p}; }
inline Vec2c operator*(double s, const Vec2c& v) { return cplx(s) * v; }

inline Mat2c transpose(const Mat2c& m) { return {m.a11, m.a21, m.a12, m.a22}; }

// Real rotation by `angle`: [[cos,-sin],[sin,cos]].
inline Mat2c rotation(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c, -s, s, c};
}

inline double max_abs(const Mat2c& m) {
    return std::max(std::max(std::abs(m.a11), std::abs(m.a12)),
                    std::max(std::abs(m.a21), std::abs(m.a22)));
}

}  // namespace qbasim
