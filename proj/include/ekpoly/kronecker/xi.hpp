#pragma once

#include <ekpoly/series/series2.hpp>
#include <ekpoly/weierstrass.hpp>

namespace ekpoly {

// Xi(z, w) = exp(-zeta(z) w) sigma(z + w) / (sigma(z) sigma(w)) = sum L_n(z) w^(n-1)
// and Theta(z, w) = exp(F1(z) w) Xi(z, w) = sum F_b(z) w^(b-1).
struct XiExpansion {
    XSeries2 xi;
    std::vector<XSeries> L;  // L_n for n < mw, known below order mz
    std::vector<XSeries> F;  // F_b for b < mw
    XSeries F1;
    int mz = 0, mw = 0;

    XSeries2 theta() const { return XSeries2::from_rows(ExactScalar(0), F, -1, mw - 1); }
};

namespace detail {

inline ExactScalar inv_factorial(int n) {
    mpz_class f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return ExactScalar(mpq_class(1, f));
}

// sum_{k <= b} f^(b-k)/(b-k)! rows[k]
inline XSeries exp_combination(const XSeries& f, const std::vector<XSeries>& rows, int b) {
    XSeries r(ExactScalar(0), kExactOrder);
    XSeries pw = XSeries::constant(ExactScalar(1), kExactOrder);
    for (int j = 0; j <= b; ++j) {
        r = r + pw * rows[b - j] * inv_factorial(j);
        if (j < b) pw = pw * f;
    }
    return r;
}

}  // namespace detail

inline XiExpansion xi_expand(const CurveData& c, int mz, int mw) {
    if (mz < 4 || mw < 4) throw DomainError("xi_expand needs orders >= 4");
    int W = mz + mw + 2;
    int Z = W + 2 * mw + 8;
    XSeries sg = sigma_series(c, Z);
    WpFamily fam = wp_family(c, Z - 4);
    XSeries isg = sg.inverse(mw + 1);  // 1/sigma(w): w^-1 (s_0 + s_1 w + ...)

    // sigma(z + w)/sigma(z) = sum_k R_k(z) w^k with R_k = sigma^(k)/(k! sigma)
    std::vector<XSeries> R, E;
    XSeries d = sg;
    XSeries negz = -fam.zeta;
    XSeries pw = XSeries::constant(ExactScalar(1), kExactOrder);
    for (int k = 0; k < mw; ++k) {
        R.push_back(d / sg * detail::inv_factorial(k));
        d = d.derivative();
        E.push_back(pw * detail::inv_factorial(k));
        pw = pw * negz;
    }
    std::vector<XSeries> P;
    for (int t = 0; t < mw; ++t) {
        XSeries s(ExactScalar(0), kExactOrder);
        for (int m = 0; m <= t; ++m) s = s + E[m] * R[t - m];
        P.push_back(s);
    }
    XiExpansion x;
    x.mz = mz;
    x.mw = mw;
    std::vector<XSeries> wide;
    for (int n = 0; n < mw; ++n) {
        XSeries s(ExactScalar(0), kExactOrder);
        for (int j = 0; j <= n; ++j) {
            ExactScalar sj = isg.at(j - 1);
            if (!sj.is_zero()) s = s + P[n - j] * sj;
        }
        if (s.order() < mz) throw PrecisionError("xi_expand lost truncation order");
        wide.push_back(s);
        x.L.push_back(s.truncated(mz));
    }
    for (int b = 0; b < mw; ++b) {
        XSeries f = detail::exp_combination(fam.F1, wide, b);
        if (f.order() < mz) throw PrecisionError("xi_expand lost truncation order");
        x.F.push_back(f.truncated(mz));
    }
    x.F1 = fam.F1.truncated(mz);
    x.xi = XSeries2::from_rows(ExactScalar(0), x.L, -1, mw - 1);
    return x;
}

// Algebraized connection functions L_0 .. L_nmax of one curve.
class ConnectionTable {
public:
    ConnectionTable(const CurveData& c, int nmax) : c_(c) {
        XiExpansion x = xi_expand(c, std::max(24, 2 * nmax + 8), std::max(4, nmax + 1));
        for (int n = 0; n <= nmax; ++n) L_.push_back(algebraize(x.L[n], c));
    }
    const EllipticPoly& L(int n) const {
        if (n < 0 || n >= int(L_.size())) throw DomainError("connection function index out of range");
        return L_[n];
    }
    int nmax() const { return int(L_.size()) - 1; }
    const CurveData& curve() const { return c_; }

private:
    CurveData c_;
    std::vector<EllipticPoly> L_;
};

}  // namespace ekpoly
