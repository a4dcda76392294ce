#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace neutral4 {

// Forward-mode jets over the four chart coordinates. Jet1 carries value and
// gradient, Jet2 additionally the symmetric Hessian (10 entries). These are
// the only scalar types the tensor calculus is instantiated with besides
// plain double; derivatives are exact to machine rounding, never finite
// differences.

inline constexpr int sym_index(int i, int j) {
    // index into the packed upper triangle of a symmetric 4x4
    if (i > j) { int t = i; i = j; j = t; }
    return i * 4 - i * (i - 1) / 2 + (j - i);
}

struct Jet1 {
    double v = 0.0;
    std::array<double, 4> g{0.0, 0.0, 0.0, 0.0};

    Jet1() = default;
    Jet1(double value) : v(value) {}
    static Jet1 coordinate(double value, int axis) {
        Jet1 j(value);
        j.g[static_cast<size_t>(axis)] = 1.0;
        return j;
    }
};

struct Jet2 {
    double v = 0.0;
    std::array<double, 4> g{0.0, 0.0, 0.0, 0.0};
    std::array<double, 10> h{};  // packed symmetric, sym_index(i,j)

    Jet2() = default;
    Jet2(double value) : v(value) {}
    static Jet2 coordinate(double value, int axis) {
        Jet2 j(value);
        j.g[static_cast<size_t>(axis)] = 1.0;
        return j;
    }
    double hess(int i, int j) const { return h[static_cast<size_t>(sym_index(i, j))]; }
};

// ---- Jet1 arithmetic ----

inline Jet1 operator-(const Jet1& a) {
    Jet1 r(-a.v);
    for (int i = 0; i < 4; ++i) r.g[i] = -a.g[i];
    return r;
}
inline Jet1 operator+(const Jet1& a, const Jet1& b) {
    Jet1 r(a.v + b.v);
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] + b.g[i];
    return r;
}
inline Jet1 operator-(const Jet1& a, const Jet1& b) {
    Jet1 r(a.v - b.v);
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] - b.g[i];
    return r;
}
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
    Jet1 r(a.v * b.v);
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    return r;
}
inline Jet1 operator/(const Jet1& a, const Jet1& b) {
    const double inv = 1.0 / b.v;
    Jet1 r(a.v * inv);
    for (int i = 0; i < 4; ++i) r.g[i] = (a.g[i] - r.v * b.g[i]) * inv;
    return r;
}
inline Jet1& operator+=(Jet1& a, const Jet1& b) { a = a + b; return a; }
inline Jet1& operator-=(Jet1& a, const Jet1& b) { a = a - b; return a; }
inline Jet1& operator*=(Jet1& a, const Jet1& b) { a = a * b; return a; }

// chain rule with f(u), f'(u)
inline Jet1 jet_apply(const Jet1& u, double f, double fp) {
    Jet1 r(f);
    for (int i = 0; i < 4; ++i) r.g[i] = fp * u.g[i];
    return r;
}

// ---- Jet2 arithmetic ----

inline Jet2 operator-(const Jet2& a) {
    Jet2 r(-a.v);
    for (int i = 0; i < 4; ++i) r.g[i] = -a.g[i];
    for (int k = 0; k < 10; ++k) r.h[k] = -a.h[k];
    return r;
}
inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r(a.v + b.v);
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] + b.g[i];
    for (int k = 0; k < 10; ++k) r.h[k] = a.h[k] + b.h[k];
    return r;
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r(a.v - b.v);
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] - b.g[i];
    for (int k = 0; k < 10; ++k) r.h[k] = a.h[k] - b.h[k];
    return r;
}
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(a.v * b.v);
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const int k = sym_index(i, j);
            r.h[k] = a.h[k] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[k];
        }
    return r;
}
// chain rule with f(u), f'(u), f''(u)
inline Jet2 jet_apply(const Jet2& u, double f, double fp, double fpp) {
    Jet2 r(f);
    for (int i = 0; i < 4; ++i) r.g[i] = fp * u.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const int k = sym_index(i, j);
            r.h[k] = fp * u.h[k] + fpp * u.g[i] * u.g[j];
        }
    return r;
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    const double u = b.v;
    return a * jet_apply(b, 1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u));
}
inline Jet2& operator+=(Jet2& a, const Jet2& b) { a = a + b; return a; }
inline Jet2& operator-=(Jet2& a, const Jet2& b) { a = a - b; return a; }
inline Jet2& operator*=(Jet2& a, const Jet2& b) { a = a * b; return a; }

// value extraction shared by double / Jet1 / Jet2
inline double jet_value(double x) { return x; }
inline double jet_value(const Jet1& x) { return x.v; }
inline double jet_value(const Jet2& x) { return x.v; }

} // namespace neutral4
