#pragma once

#include <ekpoly/kronecker/translated.hpp>

namespace ekpoly {

// Xi^(p)_{z0}(z, w) = sum_n L^(p)_n(z + z0) w^(n-1), from
//   L^(p)_n(u) = L_n(u) - sum_{k <= n} pibar^-k (-G(u))^(n-k)/(n-k)! L_k(pi u),
// with G = F1^(p) = F1(u) - F1(pi u)/pibar.
struct ThetaPExpansion {
    std::vector<XSeries> Lp;
    XSeries2 xi;
    int mz = 0, mw = 0;
};

inline ThetaPExpansion theta_p_series(const CurveData& c, const Point& z0, const ExactScalar& pi, int mz, int mw) {
    if (mz < 1 || mw < 1) throw DomainError("theta_p_series needs positive orders");
    ExactScalar pibar = pi_conj(pi), ib = pibar.inverse();
    int W = mz + mw + 2;
    std::vector<XSeries> L, Lpi;
    XSeries G;
    if (z0.inf) {
        XiExpansion x = xi_expand(c, W, std::max(4, mw));
        for (int k = 0; k < mw; ++k) {
            L.push_back(x.L[k]);
            Lpi.push_back(x.L[k].scale(pi));
        }
        G = f1p_series(wp_family(c, W + 4), pi, pibar);
    } else {
        ConnectionTable table(c, std::max(mw - 1, 1));
        auto [wp, dwp] = translate_wp(c, z0.x, z0.y, W);
        Point Q = cm_mul(c, pi, z0);
        if (Q.inf) throw DomainError("z0 is killed by pi");
        auto [wq, dwq] = translate_wp(c, Q.x, Q.y, W);
        for (int k = 0; k < mw; ++k) {
            L.push_back(table.L(k).expand(wp, dwp));
            Lpi.push_back(table.L(k).expand(wq, dwq).scale(pi));
        }
        G = f1p_rational_checked(c, pi).expand(wp, dwp, W);
    }
    std::vector<XSeries> rows;
    ExactScalar w(1);
    for (int k = 0; k < mw; ++k) {
        rows.push_back(Lpi[k] * w);
        w = w * ib;
    }
    ThetaPExpansion r;
    r.mz = mz;
    r.mw = mw;
    for (int n = 0; n < mw; ++n) {
        XSeries s = L[n] - detail::exp_combination(-G, rows, n);
        if (s.order() < mz) throw PrecisionError("theta_p_series lost truncation order");
        r.Lp.push_back(s.truncated(mz));
    }
    r.xi = XSeries2::from_rows(ExactScalar(0), r.Lp, -1, mw - 1);
    return r;
}

inline ThetaPExpansion theta_p_series(const CurveData& c, const Point& z0, const SplitPrimeData& sp, int mz, int mw) {
    return theta_p_series(c, z0, sp.pi(), mz, mw);
}

}  // namespace ekpoly
