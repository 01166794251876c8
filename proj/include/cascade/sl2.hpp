#ifndef CASCADE_SL2_HPP
#define CASCADE_SL2_HPP

#include <cmath>
#include <stdexcept>

namespace cascade {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// 2x2 real matrix with unit determinant, row-major (a b; c d).
struct Sl2Matrix {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Sl2Matrix identity() { return {}; }

    double det() const { return a * d - b * c; }
    double frobenius() const { return std::sqrt(a * a + b * b + c * c + d * d); }

    bool finite() const {
        return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d);
    }
};

inline Vec2 transform(const Sl2Matrix& m, Vec2 v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

inline Sl2Matrix sl2_compose(const Sl2Matrix& lhs, const Sl2Matrix& rhs) {
    return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
            lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

inline Sl2Matrix inverse(const Sl2Matrix& m) {
    // Unit determinant: adjugate is the inverse.
    return {m.d, -m.b, -m.c, m.a};
}

/// Symmetric trace-free strain generator, realized as [[-g2, g1], [g1, g2]].
/// Closed under addition, so per-scale prefix sums reuse the same type.
struct TraceFreeMatrix {
    double g1 = 0.0;
    double g2 = 0.0;

    double frobenius() const { return std::sqrt(2.0 * (g1 * g1 + g2 * g2)); }
    bool finite() const { return std::isfinite(g1) && std::isfinite(g2); }
};

inline TraceFreeMatrix operator+(TraceFreeMatrix p, TraceFreeMatrix q) {
    return {p.g1 + q.g1, p.g2 + q.g2};
}

inline TraceFreeMatrix operator*(double s, TraceFreeMatrix p) { return {s * p.g1, s * p.g2}; }

/// General element of the sl(2) Lie algebra, [[p, q], [r, -p]].
/// Commutators of strain generators pick up a rotation part, so the
/// integrator stages need all three degrees of freedom.
struct Sl2Generator {
    double p = 0.0, q = 0.0, r = 0.0;

    static Sl2Generator from_strain(TraceFreeMatrix s) { return {-s.g2, s.g1, s.g1}; }

    double det() const { return -p * p - q * r; }
    bool finite() const { return std::isfinite(p) && std::isfinite(q) && std::isfinite(r); }
};

inline Sl2Generator operator+(Sl2Generator a, Sl2Generator b) {
    return {a.p + b.p, a.q + b.q, a.r + b.r};
}

inline Sl2Generator operator-(Sl2Generator a, Sl2Generator b) {
    return {a.p - b.p, a.q - b.q, a.r - b.r};
}

inline Sl2Generator operator*(double s, Sl2Generator a) { return {s * a.p, s * a.q, s * a.r}; }

inline Sl2Generator commutator(Sl2Generator a, Sl2Generator b) {
    return {a.q * b.r - a.r * b.q, 2.0 * (a.p * b.q - a.q * b.p), 2.0 * (a.r * b.p - a.p * b.r)};
}

/// exp(tA) for trace-free A via the closed form A^2 = -det(A) I.
///
/// With mu^2 = -det(A) the result is c0 I + c1 A where (c0, c1) are
/// (cosh, sinh/mu) for mu^2 > 0 and (cos, sin/nu) for mu^2 < 0; near the
/// nilpotent case |mu^2| < 1e-14 a short even series avoids the 0/0.
Sl2Matrix sl2_exp(Sl2Generator gen, double t);

inline Sl2Matrix sl2_exp(TraceFreeMatrix strain, double t) {
    return sl2_exp(Sl2Generator::from_strain(strain), t);
}

} // namespace cascade

#endif
