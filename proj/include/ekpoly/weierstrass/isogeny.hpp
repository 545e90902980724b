#pragma once

#include <ekpoly/weierstrass/divpoly.hpp>
#include <ekpoly/weierstrass/expansions.hpp>
#include <ekpoly/exactnum/embedding.hpp>

namespace ekpoly {

// u(x) + y v(x), an element of K(x)[y]/(y^2 - 4x^3 + g2 x + g3).
struct RationalMap {
    RatFun u, v;

    ExactScalar eval(const Point& P) const {
        if (P.inf) throw PoleError("rational map evaluated at the origin");
        ExactScalar r = u.is_zero() ? ExactScalar(0) : u.eval(P.x);
        if (!v.is_zero()) r = r + P.y * v.eval(P.x);
        return r;
    }

    // Laurent expansion at z = 0 through order M (x = wp, y = wp').
    XSeries expand(const WpFamily& w, int M) const { return expand(w.wp, w.dwp, M); }
    // Same with any (wp, wp') pair, e.g. expansions at a translate.
    XSeries expand(const XSeries& wp, const XSeries& dwp, int M) const {
        auto rat = [&](const RatFun& f) {
            XSeries n = f.num.eval_series(wp), d = f.den.eval_series(wp);
            return n * d.inverse(M + 2 * f.den.degree() + 2 * std::max(f.num.degree(), 0) + 4);
        };
        XSeries r(ExactScalar(0), kExactOrder);
        if (!u.is_zero()) r = r + rat(u);
        if (!v.is_zero()) r = r + dwp * rat(v);
        return r.truncated(M);
    }
    XSeries expand(const CurveData& c, int M) const {
        int deg = std::max({u.num.degree(), u.den.degree(), v.num.degree(), v.den.degree(), 0});
        return expand(wp_family(c, M + 2 * deg + 6), M);
    }

    std::string to_string() const {
        std::string s;
        if (!u.is_zero()) s = u.to_string();
        if (!v.is_zero()) s += (s.empty() ? "" : " + ") + std::string("y*") + v.to_string();
        return s.empty() ? "0" : s;
    }
};

// A map of curves fixing O and commuting with negation:
// (x, y) -> (X(x), y Y(x)).
struct OddMap {
    RatFun X, Y;

    static OddMap identity() { return {RatFun(Poly::x()), RatFun(Poly(ExactScalar(1)))}; }

    Point apply(const Point& P) const {
        if (P.inf) return P;
        if (X.den.eval(P.x).is_zero()) return Point::origin();
        return Point(X.eval(P.x), P.y * Y.eval(P.x));
    }
};

namespace detail {

inline RatFun ratfun_compose(const RatFun& f, const RatFun& g) {
    // f(g) with g = a/b: sum f_i a^i b^(n-i) / (sum h_j a^j b^(m-j)) * b^(m-n)
    int n = std::max(f.num.degree(), 0), m = std::max(f.den.degree(), 0);
    auto hom = [&](const Poly& p, int deg) {
        Poly r;
        for (int i = 0; i <= p.degree(); ++i) r = r + p[i] * g.num.pow(i) * g.den.pow(deg - i);
        return r;
    };
    Poly N = hom(f.num, n), D = hom(f.den, m);
    if (m > n) N = N * g.den.pow(m - n);
    else if (n > m) D = D * g.den.pow(n - m);
    return RatFun(N, D);
}

}  // namespace detail

inline OddMap odd_compose(const OddMap& A, const OddMap& B) {
    return {detail::ratfun_compose(A.X, B.X), B.Y * detail::ratfun_compose(A.Y, B.X)};
}

inline OddMap odd_neg(const OddMap& A) { return {A.X, -A.Y}; }

// Pointwise sum of two maps whose x-parts differ.
inline OddMap odd_add(const CurveData& c, const OddMap& A, const OddMap& B) {
    RatFun dx = A.X - B.X;
    if (dx.is_zero()) throw DomainError("odd_add needs distinct x-maps");
    RatFun m = (A.Y - B.Y) / dx;  // slope / y
    RatFun f(c.cubic());
    RatFun X3 = f * m * m * RatFun(Poly(ExactScalar::rational(1, 4))) - A.X - B.X;
    RatFun Y3 = m * (A.X - X3) - A.Y;
    return {X3, Y3};
}

inline OddMap mul_map(const CurveData& c, long n) {
    DivisionPolys dp(c);
    return {dp.mul_x(int(n)), dp.mul_y_over_y(int(n))};
}

struct PiIsogeny {
    OddMap map;
    Poly kernel;  // monic, roots = x-coordinates of the nonzero points of E[pi]
};

// [pi] as a rational map and its kernel polynomial.
inline PiIsogeny pi_isogeny(const CurveData& c, const ExactScalar& pi) {
    Quad q = pi.base_value();
    if (q.re.get_den() != 1 || q.im.get_den() != 1) throw ValidationError("pi must be integral");
    long a = q.re.get_num().get_si(), b = q.im.get_num().get_si();
    OddMap M;
    if (b == 0) {
        if (a == 0) throw ValidationError("pi = 0");
        M = mul_map(c, a);
    } else {
        if (c.d != 1 || !c.g3.is_zero()) throw ValidationError("[a+bi] needs d = 1 and g3 = 0");
        OddMap I{RatFun(-Poly::x()), RatFun(Poly(ExactScalar::sqrt_minus(1)))};
        OddMap Bi = odd_compose(mul_map(c, b), I);
        M = a == 0 ? Bi : odd_add(c, mul_map(c, a), Bi);
    }
    Poly den = M.X.den;
    Poly ker = (den / Poly::gcd(den, den.derivative())).monic();
    return {M, ker};
}

inline PiIsogeny pi_isogeny(const CurveData& c, const SplitPrimeData& sp) { return pi_isogeny(c, sp.pi()); }

// F1(z) - F1(pi z)/conj(pi) = -wp' P'(wp) / (N P(wp)) with P the kernel polynomial.
inline RationalMap f1p_rational(const PiIsogeny& iso, long norm) {
    RationalMap r;
    r.v = RatFun(iso.kernel.derivative() * ExactScalar::rational(-1, norm), iso.kernel);
    return r;
}

// Complex conjugate of pi; rational pi (inert case) is its own conjugate.
inline ExactScalar pi_conj(const ExactScalar& pi) { return pi.is_rational() ? pi : pi.conj(); }

// Laurent series of F1(z) - F1(pi z)/conj(pi) from the wp family.
inline XSeries f1p_series(const WpFamily& w, const ExactScalar& pi, const ExactScalar& pibar) {
    return w.F1 - w.F1.scale(pi) * pibar.inverse();
}

// Throws CrossCheckError unless the rational form and the series form agree below order M.
inline RationalMap f1p_rational_checked(const CurveData& c, const ExactScalar& pi, int M = 20) {
    PiIsogeny iso = pi_isogeny(c, pi);
    ExactScalar pibar = pi_conj(pi);
    ExactScalar N = pi * pibar;
    long norm = N.rational_value().get_num().get_si();
    RationalMap r = f1p_rational(iso, norm);
    WpFamily w = wp_family(c, M + 6);
    XSeries a = r.expand(c, M), b = f1p_series(w, pi, pibar).truncated(M);
    if (a.order() < M || b.order() < M) throw CrossCheckError("cross-check lost truncation order");
    if (!a.agrees_with(b)) throw CrossCheckError("F1^(p) rational form disagrees with its Laurent series");
    return r;
}

inline RationalMap f1p_rational(const CurveData& c, const SplitPrimeData& sp) { return f1p_rational_checked(c, sp.pi()); }

}  // namespace ekpoly
