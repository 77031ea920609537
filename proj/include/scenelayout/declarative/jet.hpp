#pragma once

// Forward-mode dual number with a dense gradient. Used to differentiate the
// relation penalties with respect to object positions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace scenelayout::decl {

struct Jet {
    double v = 0.0;
    std::vector<double> g;

    Jet() = default;
    Jet(double value) : v(value) {}  // NOLINT: implicit constants are convenient in templated code
    Jet(double value, std::size_t dim, std::size_t seed) : v(value), g(dim, 0.0) { g[seed] = 1.0; }

    static Jet combine(double value, const Jet& a, double da) {
        Jet r(value);
        r.g = a.g;
        for (double& x : r.g) x *= da;
        return r;
    }

    static Jet combine(double value, const Jet& a, double da, const Jet& b, double db) {
        Jet r(value);
        const std::size_t n = std::max(a.g.size(), b.g.size());
        r.g.assign(n, 0.0);
        for (std::size_t i = 0; i < a.g.size(); ++i) r.g[i] += da * a.g[i];
        for (std::size_t i = 0; i < b.g.size(); ++i) r.g[i] += db * b.g[i];
        return r;
    }
};

inline Jet operator+(const Jet& a, const Jet& b) { return Jet::combine(a.v + b.v, a, 1.0, b, 1.0); }
inline Jet operator-(const Jet& a, const Jet& b) { return Jet::combine(a.v - b.v, a, 1.0, b, -1.0); }
inline Jet operator*(const Jet& a, const Jet& b) { return Jet::combine(a.v * b.v, a, b.v, b, a.v); }
inline Jet operator/(const Jet& a, const Jet& b) {
    return Jet::combine(a.v / b.v, a, 1.0 / b.v, b, -a.v / (b.v * b.v));
}
inline Jet operator-(const Jet& a) { return Jet::combine(-a.v, a, -1.0); }
inline Jet& operator+=(Jet& a, const Jet& b) { return a = a + b; }

inline double value(double x) { return x; }
inline double value(const Jet& x) { return x.v; }

inline Jet abs(const Jet& a) { return Jet::combine(std::abs(a.v), a, a.v < 0.0 ? -1.0 : 1.0); }
inline Jet sqrt(const Jet& a) {
    const double s = std::sqrt(a.v);
    return Jet::combine(s, a, s > 0.0 ? 0.5 / s : 0.0);
}
inline Jet atan2(const Jet& y, const Jet& x) {
    const double r2 = x.v * x.v + y.v * y.v;
    if (r2 == 0.0) return Jet(0.0);
    return Jet::combine(std::atan2(y.v, x.v), y, x.v / r2, x, -y.v / r2);
}

// max(a, 0)
inline double relu(double a) { return a > 0.0 ? a : 0.0; }
inline Jet relu(const Jet& a) { return a.v > 0.0 ? a : Jet(0.0); }

template <class T>
T max_of(const T& a, const T& b) {
    return value(a) >= value(b) ? a : b;
}
template <class T>
T min_of(const T& a, const T& b) {
    return value(a) <= value(b) ? a : b;
}

}  // namespace scenelayout::decl
