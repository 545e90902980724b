#pragma once

#include <ekpoly/kronecker/xi.hpp>

namespace ekpoly {

// F_{z0,1}(0) from the orbit z0, pi z0, pi^2 z0, ...:
//   (1 - pibar^-n)^-1 sum_{k<n} pibar^-k F1^(p)(pi^k z0),  pi^n z0 = z0.
inline ExactScalar coleman_seed(const CurveData& c, const Point& z0, const ExactScalar& pi, const RationalMap& f1p) {
    if (z0.inf) throw DomainError("the seed is defined for z0 outside the lattice");
    ExactScalar pibar = pi_conj(pi), ib = pibar.inverse();
    ExactScalar s(0), w(1);
    Point Q = z0;
    for (int k = 1; k <= 64; ++k) {
        s = s + w * f1p.eval(Q);
        w = w * ib;
        Q = cm_mul(c, pi, Q);
        if (Q.inf) throw OrbitError("z0 is killed by pi");
        if (Q == z0) return s / (ExactScalar(1) - w);
    }
    throw OrbitError("pi-orbit of z0 does not close within 64 steps");
}

inline ExactScalar coleman_seed(const CurveData& c, const Point& z0, const ExactScalar& pi) {
    return coleman_seed(c, z0, pi, f1p_rational_checked(c, pi));
}

// Expansions at a translate: wp(z + z0), wp'(z + z0) and F_{z0,1}(z).
struct TranslatedBasis {
    XSeries wp, dwp, F1;
};

inline TranslatedBasis translated_basis(const CurveData& c, const Point& z0, const ExactScalar& seed, int M) {
    auto [wp, dwp] = translate_wp(c, z0.x, z0.y, M);
    XSeries integrand = -wp - XSeries::constant(c.e2star);
    XSeries F1 = integrand.antiderivative() + XSeries::constant(seed);
    return {wp, dwp, F1.truncated(M)};
}

struct TranslatedF {
    TorsionPoint z0;
    int b = 0;
    XSeries series;
    ExactScalar seed;
};

// F_{z0,b}(z) = sum_{n <= b} F_{z0,1}(z)^(b-n)/(b-n)! L_n(z + z0).
inline TranslatedF f_translated(const CurveData& c, const ConnectionTable& table, const TorsionPoint& z0, int b,
                                const ExactScalar& seed, int M) {
    if (b < 0) throw DomainError("b must be >= 0");
    if (z0.P.inf) throw DomainError("f_translated needs z0 outside the lattice");
    if (b > table.nmax()) throw DomainError("connection table too short for b");
    TranslatedBasis tb = translated_basis(c, z0.P, seed, M);
    std::vector<XSeries> Ls;
    for (int n = 0; n <= b; ++n) Ls.push_back(table.L(n).expand(tb.wp, tb.dwp));
    XSeries f = detail::exp_combination(tb.F1, Ls, b).truncated(M);
    if (f.order() < M) throw PrecisionError("f_translated lost truncation order");
    return {z0, b, f, seed};
}

inline TranslatedF f_translated(const CurveData& c, const TorsionPoint& z0, int b, const ExactScalar& pi, int M) {
    ConnectionTable table(c, std::max(b, 1));
    return f_translated(c, table, z0, b, coleman_seed(c, z0.P, pi), M);
}

inline TranslatedF f_translated(const CurveData& c, const TorsionPoint& z0, int b, const SplitPrimeData& sp, int M) {
    return f_translated(c, z0, b, sp.pi(), M);
}

}  // namespace ekpoly
