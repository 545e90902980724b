#pragma once

#include <ekpoly/series/series2.hpp>
#include <ekpoly/weierstrass/curve.hpp>

namespace ekpoly {

using XSeries = TruncSeries<ExactScalar>;
using XSeries2 = TruncSeries2<ExactScalar>;

// sigma(z) = sum a_{m,n} (g2/2)^m (2 g3)^n z^(4m+6n+1)/(4m+6n+1)!, with
// a_{0,0} = 1 and
//   a_{m,n} = 3(m+1) a_{m+1,n-1} + (16/3)(n+1) a_{m-2,n+1}
//             - (1/3)(2m+3n-1)(4m+6n-1) a_{m-1,n}.
inline XSeries sigma_series(const CurveData& c, int M) {
    if (M < 2) throw DomainError("sigma_series needs order >= 2");
    int wmax = M - 2;  // largest weight 4m+6n with exponent w+1 < M
    std::map<std::pair<int, int>, mpq_class> a;
    auto get = [&](int m, int n) -> mpq_class {
        if (m < 0 || n < 0) return 0;
        auto it = a.find({m, n});
        return it == a.end() ? mpq_class(0) : it->second;
    };
    a[{0, 0}] = 1;
    for (int w = 2; w <= wmax; w += 2) {
        for (int n = 0; 6 * n <= w; ++n) {
            int r = w - 6 * n;
            if (r % 4) continue;
            int m = r / 4;
            mpq_class v = 3 * (m + 1) * get(m + 1, n - 1) + mpq_class(16, 3) * (n + 1) * get(m - 2, n + 1) -
                          mpq_class((2 * m + 3 * n - 1) * (4 * m + 6 * n - 1), 3) * get(m - 1, n);
            a[{m, n}] = v;
        }
    }
    XSeries s(ExactScalar(0), M);
    std::vector<mpz_class> facts(M + 1, mpz_class(1));
    for (int k = 1; k <= M; ++k) facts[k] = facts[k - 1] * k;
    ExactScalar h2 = c.g2 / ExactScalar(2), t3 = c.g3 * ExactScalar(2);
    for (const auto& [mn, v] : a) {
        auto [m, n] = mn;
        int e = 4 * m + 6 * n + 1;
        if (e >= M || v == 0) continue;
        ExactScalar coef = ExactScalar(mpq_class(v / facts[e])) * h2.pow(m) * t3.pow(n);
        s.add_to(e, coef);
    }
    return s;
}

struct WpFamily {
    XSeries wp, dwp, zeta, F1;
};

// wp, wp', zeta and F1 = zeta - e2* z, each known below order M.
inline WpFamily wp_family(const CurveData& c, int M) {
    if (M < 2) throw DomainError("wp_family needs order >= 2");
    XSeries sg = sigma_series(c, M + 4);
    XSeries zeta = sg.derivative() / sg;
    XSeries wp = -zeta.derivative();
    XSeries dwp = wp.derivative();
    XSeries F1 = zeta - XSeries::monomial(c.e2star, 1);
    return {wp.truncated(M), dwp.truncated(M), zeta.truncated(M), F1.truncated(M)};
}

// wp(z + z0), wp'(z + z0) from u'' = 6u^2 - g2/2, u(0) = x0, u'(0) = y0.
inline std::pair<XSeries, XSeries> translate_wp(const CurveData& c, const ExactScalar& x0, const ExactScalar& y0,
                                                int M) {
    if (M < 1) throw DomainError("translate_wp needs order >= 1");
    std::vector<ExactScalar> u(M + 1, ExactScalar(0));
    u[0] = x0;
    u[1] = y0;
    ExactScalar half_g2 = c.g2 / ExactScalar(2);
    for (int k = 0; k + 2 <= M; ++k) {
        ExactScalar s(0);
        for (int i = 0; i <= k; ++i) s = s + u[i] * u[k - i];
        s = ExactScalar(6) * s;
        if (k == 0) s = s - half_g2;
        u[k + 2] = s / ExactScalar(long(k + 2) * long(k + 1));
    }
    XSeries wp(ExactScalar(0), M + 1);
    for (int k = 0; k <= M; ++k) wp.set(k, u[k]);
    XSeries dwp = wp.derivative();
    return {wp.truncated(M), dwp.truncated(M)};
}

}  // namespace ekpoly
