#pragma once

#include <ekpoly/series/series2.hpp>
#include <ekpoly/weierstrass.hpp>

namespace ekpoly {

using PSeries = TruncSeries<PadicScalar>;

inline PSeries embed_series(const XSeries& f, const SplitPrimeData& sp, std::string var = "s") {
    PSeries r(PadicScalar::exact_zero(sp.field()), f.order(), std::move(var));
    for (const auto& [e, v] : f.terms()) r.set(e, sp.embed(v));
    return r;
}

// The formal group at s = -2x/y.  x, y are Laurent series in s; lambda is the
// logarithm normalized by lambda'(0) = 1 and exp_law its inverse.
struct FormalGroupData {
    CurveData curve;
    int order = 0;
    XSeries x, y;
    XSeries lambda, dlambda, exp_law;
    XSeries2 law;
};

// 1/x = s^2 (1 - (g2/4) u^2 - (g3/4) u^3) at u = 1/x.
inline XSeries inverse_x_in_s(const CurveData& c, int M) {
    XSeries s2 = XSeries::monomial(ExactScalar(1), 2, kExactOrder, "s");
    ExactScalar a = c.g2 / ExactScalar(4), b = c.g3 / ExactScalar(4);
    XSeries u = XSeries::monomial(ExactScalar(1), 2, M, "s");
    for (int known = 2; known < M; known += 4) {
        XSeries u2 = XSeries::mul(u, u, M);
        XSeries t = XSeries::constant(ExactScalar(1), kExactOrder, "s") - u2 * a - XSeries::mul(u2, u, M) * b;
        u = XSeries::mul(s2, t, M);
    }
    return u;
}

// Group law F(s, t) = exp_law(lambda(s) + lambda(t)) on the bi-order (L, L).
inline XSeries2 formal_group_law(const FormalGroupData& fg, int L) {
    if (2 * L > fg.order) throw PrecisionError("group law needs the formal group to twice its order");
    XSeries lam = fg.lambda.truncated(2 * L);
    XSeries2 G = XSeries2::in_x(lam, 2 * L, "s", "t") + XSeries2::in_x(lam, 2 * L, "t", "s").transpose();
    return XSeries2::compose(fg.exp_law.truncated(2 * L), G.truncated(L, L)).truncated(L, L);
}

inline FormalGroupData build_formal_group(const CurveData& c, int M, int law_order = 12) {
    if (M < 5) throw DomainError("build_formal_group needs order >= 5");
    FormalGroupData fg;
    fg.curve = c;
    fg.order = M;
    XSeries u = inverse_x_in_s(c, M + 8);
    XSeries x = u.inverse(M + 4);
    XSeries y = x.shift(-1) * ExactScalar(-2);
    XSeries dl = x.derivative() * y.inverse(M + 4);
    fg.x = x.truncated(M);
    fg.y = y.truncated(M);
    fg.dlambda = dl.truncated(M);
    fg.lambda = dl.antiderivative().truncated(M);
    // exp_law(z) = -2 wp(z)/wp'(z)
    WpFamily w = wp_family(c, M + 6);
    fg.exp_law = (w.wp * w.dwp.inverse(M + 6) * ExactScalar(-2)).truncated(M).with_var("z");
    fg.law = formal_group_law(fg, std::min(M / 2, law_order));
    return fg;
}

// [alpha](s) = exp_law(alpha lambda(s)) over K.
inline XSeries formal_mul_exact(const FormalGroupData& fg, const ExactScalar& alpha, int M = -1) {
    if (M < 0) M = fg.order;
    if (M > fg.order) throw PrecisionError("formal group built below the requested order");
    XSeries inner = fg.lambda.truncated(M) * alpha;
    return fg.exp_law.truncated(M).compose(inner, M).with_var("s");
}

// [pi](s) in the p-adic field with absolute precision N.  Integrality and the
// congruence [pi](s) = s^N(p) mod p are checked coefficient by coefficient.
inline PSeries formal_pi(const FormalGroupData& fg, const SplitPrimeData& sp, int N, int M = -1) {
    if (M < 0) M = fg.order;
    XSeries ex = formal_mul_exact(fg, sp.pi(), M);
    PSeries r(PadicScalar::exact_zero(sp.field()), M, "s");
    long q = sp.norm();
    for (const auto& [e, v] : ex.terms()) {
        PadicScalar pv = sp.embed(v).truncate_abs(N);
        if (pv.valuation() < 0)
            throw NotIntegral("[pi](s) has a non-integral coefficient at s^" + std::to_string(e) +
                              "; try a unit multiple of pi");
        r.set(e, pv);
    }
    for (int e = 0; e < M; ++e) {
        PadicScalar d = r.at(e);
        if (e == q) d = d - PadicScalar::from_int(sp.field(), 1);
        if (!d.is_exact_zero() && d.valuation() < 1 && N >= 1)
            throw CongruenceError("[pi](s) is not s^" + std::to_string(q) + " mod p at s^" + std::to_string(e) +
                                  "; try a unit multiple of pi");
    }
    return r;
}

// [pi](s) = U(s) P(s), P monic of degree N(p) and P = s^N(p) mod p, with the
// power sums of the roots of P.
struct DistinguishedPoly {
    long degree = 0;
    long p = 0;
    std::vector<PadicScalar> coeffs;  // P = s^degree + sum_{j < degree} coeffs[j] s^j
    PSeries unit;
    std::vector<PadicScalar> power_sums;  // p_k for k < cutoff
    int certified = 0;                    // absolute precision of the coefficients of P

    int cutoff() const { return int(power_sums.size()); }
};

namespace detail {

inline PSeries padic_poly(const PadicFieldPtr& F, const std::vector<PadicScalar>& c, std::string var = "s") {
    PSeries r(PadicScalar::exact_zero(F), kExactOrder, std::move(var));
    for (size_t j = 0; j < c.size(); ++j) r.set(int(j), c[j]);
    return r;
}

inline int ceil_div(long a, long b) { return int(a >= 0 ? (a + b - 1) / b : -((-a) / b)); }

}  // namespace detail

// Newton's identities p_k = -sum_i c_i p_(k-i) - k c_k for the monic P.
inline std::vector<PadicScalar> newton_power_sums(const std::vector<PadicScalar>& coeffs, long N, int cutoff) {
    const PadicFieldPtr& F = coeffs.empty() ? nullptr : coeffs[0].field();
    auto c = [&](long i) { return coeffs[N - i]; };
    std::vector<PadicScalar> ps;
    for (int k = 0; k < cutoff; ++k) {
        if (k == 0) {
            ps.push_back(PadicScalar::from_int(F, N));
            continue;
        }
        PadicScalar s = PadicScalar::exact_zero(F);
        for (long i = 1; i <= std::min<long>(k - 1, N); ++i) s = s + c(i) * ps[k - i];
        if (k <= N) s = s + c(k) * PadicScalar::from_int(F, k);
        ps.push_back(-s);
    }
    return ps;
}

inline DistinguishedPoly prepare_and_power_sums(const PSeries& piS, long N, int cutoff, int target = 0) {
    int M = piS.order();
    if (M < 2 * N) throw PrecisionExhausted("[pi](s) must be known below s^(2N) for the preparation");
    const PadicScalar& z = piS.context();
    const PadicFieldPtr& F = z.field();
    std::vector<PadicScalar> lo;
    for (long j = 0; j < N; ++j) lo.push_back(piS.at(int(j)));
    PSeries flo = detail::padic_poly(F, lo);
    PSeries fhi(z, M - int(N), "s");
    for (const auto& [e, v] : piS.terms())
        if (e >= N) fhi.set(e - int(N), v);
    if (fhi.at(0).valuation() != 0) throw CongruenceError("[pi](s) has Weierstrass degree different from N(p)");
    PSeries ihi = fhi.inverse(M - int(N));
    int Mq = M - int(N);
    PSeries one = PSeries::constant(PadicScalar::from_int(F, 1), kExactOrder, "s");
    PSeries q = ihi;
    std::string prev;
    for (int it = 0; it < F->cap() + 8; ++it) {
        PSeries qf = PSeries::mul(q, flo, M);
        PSeries hi(z, Mq, "s");
        for (const auto& [e, v] : qf.terms())
            if (e >= N) hi.set(e - int(N), v);
        q = PSeries::mul(ihi, one - hi, Mq);
        std::string cur = q.serialize();
        if (cur == prev) break;
        prev = cur;
    }
    PSeries qf = PSeries::mul(q, flo, int(N));
    // errors in q_j decay by one valuation per N-1 indices below the truncation
    int certified = 1 + detail::ceil_div(M - 2 * N + 1, N - 1);
    DistinguishedPoly dp;
    dp.degree = N;
    dp.p = F->p();
    dp.certified = certified;
    for (long j = 0; j < N; ++j) {
        PadicScalar a = qf.at(int(j));
        dp.coeffs.push_back(j == 0 ? PadicScalar::exact_zero(F) : a.truncate_abs(certified));
    }
    dp.coeffs.push_back(PadicScalar::from_int(F, 1));
    dp.unit = q.inverse(Mq);
    if (target > 0 && certified < target)
        throw PrecisionExhausted("distinguished polynomial certified to p^" + std::to_string(certified) +
                                 ", below the target p^" + std::to_string(target));
    dp.power_sums = newton_power_sums(dp.coeffs, N, cutoff);
    return dp;
}

// Power sums from the logarithmic derivative of the reversed polynomial:
// sum_k p_k t^k = N - t R'(t)/R(t),  R(t) = t^N P(1/t).
inline std::vector<PadicScalar> power_sums_by_logderivative(const DistinguishedPoly& dp, int cutoff) {
    const PadicFieldPtr& F = dp.coeffs[0].field();
    std::vector<PadicScalar> rc(dp.coeffs.rbegin(), dp.coeffs.rend());
    PSeries R = detail::padic_poly(F, rc, "t").truncated(cutoff);
    PSeries L = (R.derivative().shift(1) * R.inverse(cutoff)).truncated(cutoff);
    std::vector<PadicScalar> out;
    for (int k = 0; k < cutoff; ++k) {
        PadicScalar v = -L.at(k);
        if (k == 0) v = v + PadicScalar::from_int(F, dp.degree);
        out.push_back(v);
    }
    return out;
}

// Sum of H over the roots of P (with multiplicity), certified against the
// unknown tail of H and the power sums above the cutoff.  Coefficients of H
// beyond its order are assumed to satisfy v(h_k) >= v0 - slope*floor(log_p k),
// with v0 read from the computed coefficients (never above 0).
struct TorsionSum {
    PadicScalar value;
    int certified = 0;
};

inline int floor_log(long k, long p) {
    int r = 0;
    while (k >= p) {
        k /= p;
        ++r;
    }
    return r;
}

inline TorsionSum torsion_sum(const PSeries& H, const DistinguishedPoly& dp, int slope, bool reversed = false) {
    if (H.floor() < 0) throw DomainError("torsion sums need a series without principal part");
    int K = std::min(H.order(), dp.cutoff());
    const PadicFieldPtr& F = dp.coeffs[0].field();
    int v0 = 0;
    for (const auto& [k, v] : H.terms())
        if (k >= 1 && k < K && !v.is_zero()) v0 = std::min(v0, v.valuation() + slope * floor_log(k, dp.p));
    int tail = INT_MAX;
    for (long k = K; k < long(K) + 64L * (dp.degree - 1) * (slope + 1) + 64; ++k)
        tail = std::min(tail, v0 + detail::ceil_div(k, dp.degree - 1) - slope * floor_log(k, dp.p));
    PadicScalar s = PadicScalar::exact_zero(F);
    auto term = [&](int k) {
        auto it = H.terms().find(k);
        if (it != H.terms().end()) s = s + it->second * dp.power_sums[k];
    };
    if (reversed)
        for (int k = K - 1; k >= 0; --k) term(k);
    else
        for (int k = 0; k < K; ++k) term(k);
    int cert = std::min(tail, s.absprec());
    return {s.truncate_abs(cert), cert};
}

}  // namespace ekpoly
