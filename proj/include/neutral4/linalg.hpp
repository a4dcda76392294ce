#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "neutral4/jets.hpp"

namespace neutral4 {

// Small fixed-size linear algebra, templated so that the same code paths run
// over double, Jet1 and Jet2 scalars. Pivoting decisions use jet_value().

template <typename T>
using Vec4 = std::array<T, 4>;

template <typename T>
using Mat4 = std::array<std::array<T, 4>, 4>;

using Vec4d = Vec4<double>;
using Mat4d = Mat4<double>;

template <typename T>
Mat4<T> mat4_zero() {
    Mat4<T> m;
    for (auto& row : m)
        for (auto& x : row) x = T(0.0);
    return m;
}

template <typename T>
Mat4<T> mat4_identity() {
    Mat4<T> m = mat4_zero<T>();
    for (int i = 0; i < 4; ++i) m[i][i] = T(1.0);
    return m;
}

template <typename T>
Vec4<T> vec4_zero() {
    return Vec4<T>{T(0.0), T(0.0), T(0.0), T(0.0)};
}

template <typename T>
Mat4<T> operator*(const Mat4<T>& a, const Mat4<T>& b) {
    Mat4<T> r = mat4_zero<T>();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

template <typename T>
Vec4<T> operator*(const Mat4<T>& a, const Vec4<T>& x) {
    Vec4<T> r = vec4_zero<T>();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += a[i][j] * x[j];
    return r;
}

template <typename T>
Mat4<T> operator+(const Mat4<T>& a, const Mat4<T>& b) {
    Mat4<T> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

template <typename T>
Mat4<T> operator-(const Mat4<T>& a, const Mat4<T>& b) {
    Mat4<T> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

template <typename T>
Mat4<T> operator*(double s, const Mat4<T>& a) {
    Mat4<T> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = T(s) * a[i][j];
    return r;
}

template <typename T>
Vec4<T> operator+(const Vec4<T>& a, const Vec4<T>& b) {
    Vec4<T> r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
    return r;
}

template <typename T>
Vec4<T> operator-(const Vec4<T>& a, const Vec4<T>& b) {
    Vec4<T> r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] - b[i];
    return r;
}

template <typename T>
Vec4<T> operator*(const T& s, const Vec4<T>& a) {
    Vec4<T> r;
    for (int i = 0; i < 4; ++i) r[i] = s * a[i];
    return r;
}

inline Vec4d operator*(double s, const Vec4d& a) {
    Vec4d r;
    for (int i = 0; i < 4; ++i) r[i] = s * a[i];
    return r;
}

template <typename T>
Mat4<T> transpose(const Mat4<T>& a) {
    Mat4<T> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[j][i];
    return r;
}

inline double max_abs(const Mat4d& a) {
    double m = 0.0;
    for (const auto& row : a)
        for (double x : row) m = std::max(m, std::fabs(x));
    return m;
}

inline double max_abs(const Vec4d& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::fabs(x));
    return m;
}

template <typename T>
Mat4d value_of(const Mat4<T>& a) {
    Mat4d r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = jet_value(a[i][j]);
    return r;
}

template <typename T>
Vec4d value_of(const Vec4<T>& a) {
    Vec4d r;
    for (int i = 0; i < 4; ++i) r[i] = jet_value(a[i]);
    return r;
}

struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(double pivot)
        : std::runtime_error("singular 4x4 matrix (|pivot| = " + std::to_string(pivot) + ")"),
          pivot_magnitude(pivot) {}
    double pivot_magnitude;
};

// Gauss-Jordan inverse with partial pivoting on |value|.
template <typename T>
Mat4<T> invert(const Mat4<T>& m) {
    Mat4<T> a = m;
    Mat4<T> inv = mat4_identity<T>();
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        double best = std::fabs(jet_value(a[col][col]));
        for (int r = col + 1; r < 4; ++r) {
            const double cand = std::fabs(jet_value(a[r][col]));
            if (cand > best) { best = cand; piv = r; }
        }
        if (best < 1e-300) throw SingularMatrixError(best);
        if (piv != col) { std::swap(a[piv], a[col]); std::swap(inv[piv], inv[col]); }
        const T d = a[col][col];
        for (int j = 0; j < 4; ++j) { a[col][j] = a[col][j] / d; inv[col][j] = inv[col][j] / d; }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const T f = a[r][col];
            for (int j = 0; j < 4; ++j) {
                a[r][j] = a[r][j] - f * a[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

template <typename T>
T det4(const Mat4<T>& m) {
    // cofactor expansion via 2x2 minors (Laplace on the first two rows)
    auto m2 = [&](int r0, int r1, int c0, int c1) {
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    return m2(0, 1, 0, 1) * m2(2, 3, 2, 3) - m2(0, 1, 0, 2) * m2(2, 3, 1, 3) +
           m2(0, 1, 0, 3) * m2(2, 3, 1, 2) + m2(0, 1, 1, 2) * m2(2, 3, 0, 3) -
           m2(0, 1, 1, 3) * m2(2, 3, 0, 2) + m2(0, 1, 2, 3) * m2(2, 3, 0, 1);
}

// Eigenvalues of a symmetric 4x4 (double only) and SVD-based rank live in
// linalg.cpp behind Eigen.
std::array<double, 4> symmetric_eigenvalues(const Mat4d& m);

// Rank of an n x 16 constraint matrix with singular values below `tol`
// treated as zero; returns {rank, smallest_sv, least_squares_solution}.
struct RankResult {
    int rank = 0;
    double smallest_sv = 0.0;
    std::vector<double> least_squares;  // 16 entries when rhs supplied
};
RankResult constraint_rank(const std::vector<std::array<double, 16>>& rows,
                           const std::vector<double>& rhs, double tol);

// Eigenvalues of a general 6x6 matrix, real parts sorted ascending (for the
// Hodge-star multiplicity check).
std::array<double, 6> eigenvalues6(const std::array<std::array<double, 6>, 6>& m);

} // namespace neutral4
