#pragma once

#include <ekpoly/weierstrass/isogeny.hpp>

namespace ekpoly {

// a(wp) + wp' b(wp)
struct EllipticPoly {
    Poly a, b;

    XSeries expand(const XSeries& wp, const XSeries& dwp) const {
        XSeries r = a.eval_series(wp);
        if (!b.is_zero()) r = r + dwp * b.eval_series(wp);
        return r;
    }
    XSeries expand(const WpFamily& w) const { return expand(w.wp, w.dwp); }

    ExactScalar eval(const Point& P) const {
        if (P.inf) throw PoleError("elliptic polynomial evaluated at the origin");
        return a.eval(P.x) + P.y * b.eval(P.x);
    }

    RationalMap as_rational_map() const { return {RatFun(a), RatFun(b)}; }

    friend bool operator==(const EllipticPoly& x, const EllipticPoly& y) { return x.a == y.a && x.b == y.b; }

    std::string to_string() const {
        std::string s = a.is_zero() ? "" : a.to_string("wp");
        if (!b.is_zero()) {
            std::string t = b.degree() == 0 ? b[0].to_string() : "(" + b.to_string("wp") + ")";
            std::string term;
            if (t == "1") term = "dwp";
            else if (t == "-1") term = "-dwp";
            else term = t + "*dwp";
            if (s.empty()) s = term;
            else s += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
        }
        return s.empty() ? "0" : s;
    }
};

// Pole-order descent: subtract c*wp^k (even pole order 2k) or c*wp' wp^k
// (odd pole order 2k+3) until no principal part is left; the remaining
// constant must account for the whole series below order M.
inline EllipticPoly algebraize(const XSeries& f, const CurveData& c) {
    int M = f.order();
    if (M >= kExactOrder) throw DomainError("algebraize needs a truncated series");
    WpFamily w = wp_family(c, M - 2 * std::min(f.floor(), 0) + 4);
    std::vector<ExactScalar> A, B;
    auto bump = [](std::vector<ExactScalar>& v, int k, const ExactScalar& x) {
        if (int(v.size()) <= k) v.resize(k + 1, ExactScalar(0));
        v[k] = v[k] + x;
    };
    XSeries r = f;
    int pole = -r.floor();
    if (r.floor() < 0 && pole + 2 > M) throw NotElliptic("truncation order too small for the pole order");
    std::vector<XSeries> wpow{XSeries::constant(ExactScalar(1), kExactOrder)};
    auto wp_pow = [&](int k) -> const XSeries& {
        while (int(wpow.size()) <= k) wpow.push_back(wpow.back() * w.wp);
        return wpow[k];
    };
    while (!r.terms().empty() && r.floor() < 0) {
        int k = -r.floor();
        ExactScalar lc = r.terms().begin()->second;
        if (k == 1) throw NotElliptic("nonzero residue at z = 0");
        if (k % 2 == 0) {
            int j = k / 2;
            bump(A, j, lc);
            r = r - wp_pow(j) * lc;
        } else {
            int j = (k - 3) / 2;
            ExactScalar cb = lc / ExactScalar(-2);
            bump(B, j, cb);
            r = r - w.dwp * wp_pow(j) * cb;
        }
    }
    ExactScalar c0 = r.terms().count(0) ? r.at(0) : ExactScalar(0);
    bump(A, 0, c0);
    r = r - XSeries::constant(c0);
    if (r.order() < M) throw NotElliptic("descent lost truncation order");
    for (const auto& [e, v] : r.terms())
        if (e < M && !v.is_zero()) throw NotElliptic("series is not a polynomial in wp, wp' below its order");
    return {Poly(A), Poly(B)};
}

}  // namespace ekpoly
