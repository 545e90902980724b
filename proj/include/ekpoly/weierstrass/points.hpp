#pragma once

#include <ekpoly/weierstrass/roots.hpp>
#include <ekpoly/weierstrass/curve.hpp>

namespace ekpoly {

struct Point {
    ExactScalar x, y;
    bool inf = true;

    Point() = default;
    Point(ExactScalar a, ExactScalar b) : x(std::move(a)), y(std::move(b)), inf(false) {}
    static Point origin() { return Point(); }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

    std::string to_string() const { return inf ? "O" : "(" + x.to_string() + ", " + y.to_string() + ")"; }
};

inline Point curve_neg(const Point& P) { return P.inf ? P : Point(P.x, -P.y); }

inline Point curve_add(const CurveData& c, const Point& P, const Point& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    ExactScalar lam;
    if (P.x == Q.x) {
        if ((P.y + Q.y).is_zero()) return Point::origin();
        lam = (ExactScalar(6) * P.x * P.x - c.g2 / ExactScalar(2)) / P.y;
    } else {
        lam = (Q.y - P.y) / (Q.x - P.x);
    }
    ExactScalar x3 = lam * lam / ExactScalar(4) - P.x - Q.x;
    ExactScalar y3 = -(P.y + lam * (x3 - P.x));
    return Point(x3, y3);
}

inline Point curve_mul(const CurveData& c, long n, Point P) {
    if (n < 0) return curve_mul(c, -n, curve_neg(P));
    Point r;
    while (n) {
        if (n & 1) r = curve_add(c, r, P);
        n >>= 1;
        if (n) P = curve_add(c, P, P);
    }
    return r;
}

// [sqrt(-1)](x, y) = (-x, i y) on a curve with g3 = 0.
inline Point cm_i(const CurveData& c, const Point& P) {
    if (c.d != 1 || !c.g3.is_zero()) throw ValidationError("[i] needs d = 1 and g3 = 0");
    if (P.inf) return P;
    return Point(-P.x, ExactScalar::sqrt_minus(1) * P.y);
}

// [alpha]P for alpha in Z or (d = 1) in Z[i].
inline Point cm_mul(const CurveData& c, const ExactScalar& alpha, const Point& P) {
    Quad q = alpha.base_value();
    if (q.re.get_den() != 1 || q.im.get_den() != 1) throw ValidationError("endomorphism must be integral");
    long a = q.re.get_num().get_si(), b = q.im.get_num().get_si();
    if (b == 0) return curve_mul(c, a, P);
    return curve_add(c, curve_mul(c, a, P), curve_mul(c, b, cm_i(c, P)));
}

struct TorsionPoint {
    Point P;
    ExactScalar annihilator;  // generator of the annihilator ideal in O_K
    long order = 1;           // order over Z
};

namespace detail {

// Unit multiple of a Gaussian integer: the one = 1 mod 2(1+i) when it exists,
// otherwise the one with re > 0, im >= 0.
inline ExactScalar canonical_gaussian(long a, long b) {
    std::vector<std::pair<long, long>> us{{a, b}, {-b, a}, {-a, -b}, {b, -a}};
    for (auto [x, y] : us) {
        // (u + vi)/(2 + 2i) = ((u + v) + (v - u)i)/4
        long u = x - 1, v = y;
        if ((u + v) % 4 == 0 && (v - u) % 4 == 0) return ExactScalar::quad(1, x, y);
    }
    for (auto [x, y] : us)
        if (x > 0 && y >= 0) return ExactScalar::quad(1, x, y);
    return ExactScalar::quad(1, a, b);
}

}  // namespace detail

inline long point_order(const CurveData& c, const Point& P, long bound = 1000) {
    Point Q = P;
    for (long k = 1; k <= bound; ++k) {
        if (Q.inf) return k;
        Q = curve_add(c, Q, P);
    }
    throw OrbitError("point order exceeds bound");
}

inline TorsionPoint make_torsion_point(const CurveData& c, const Point& P) {
    if (!P.inf && !c.on_curve(P.x, P.y)) throw ValidationError("point is not on the curve");
    TorsionPoint t;
    t.P = P;
    t.order = point_order(c, P);
    t.annihilator = ExactScalar(t.order);
    if (c.d == 1 && c.g3.is_zero() && t.order > 1) {
        long n = t.order, best = n * n;
        for (long a = -n; a <= n; ++a)
            for (long b = -n; b <= n; ++b) {
                long nm = a * a + b * b;
                if (nm == 0 || nm >= best || (n * n) % nm != 0) continue;
                if (cm_mul(c, ExactScalar::quad(1, a, b), P).inf) {
                    best = nm;
                    t.annihilator = detail::canonical_gaussian(a, b);
                }
            }
        if (best == n * n) t.annihilator = ExactScalar(n);
    }
    if (!cm_mul(c, t.annihilator, P).inf) throw ValidationError("annihilator check failed");
    return t;
}

}  // namespace ekpoly
