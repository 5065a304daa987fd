#pragma once

#include <cmath>

namespace soapfilm {

// Forward-mode dual number. Used to assemble exact Newton linearizations of
// the graph-area coefficients without hand-expanding second derivatives.
struct Dual {
    double v = 0.0;  // value
    double d = 0.0;  // derivative w.r.t. the seeded unknown

    Dual() = default;
    Dual(double value) : v(value) {}
    Dual(double value, double deriv) : v(value), d(deriv) {}

    Dual operator-() const { return {-v, -d}; }
    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
};

inline Dual operator+(Dual a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(const Dual& a, const Dual& b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
inline Dual sqrt(const Dual& a) {
    const double s = std::sqrt(a.v);
    return {s, a.d / (2.0 * s)};
}

inline double value(double x) { return x; }
inline double value(const Dual& x) { return x.v; }

}  // namespace soapfilm
