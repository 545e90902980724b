#include <ekpoly/formalgroup.hpp>

#include <gtest/gtest.h>

using namespace ekpoly;

namespace {

ExactScalar q(long a, long b = 1) { return ExactScalar::rational(a, b); }
ExactScalar gi(long a, long b) { return ExactScalar::quad(1, a, b); }

std::vector<CurveData> matrix() {
    return {CurveData::gauss(), CurveData("g3only", q(0), q(4), 3), CurveData("mixed", q(1), q(1), 0)};
}

// a^-1 mod m by the extended Euclidean algorithm.
Poly inverse_mod(const Poly& a, const Poly& m) {
    Poly r0 = m, r1 = Poly::divmod(a, m).second, t0, t1(ExactScalar(1));
    while (!r1.is_zero()) {
        auto [qq, rr] = Poly::divmod(r0, r1);
        Poly t2 = t0 - qq * t1;
        r0 = r1;
        r1 = rr;
        t0 = t1;
        t1 = t2;
    }
    if (r0.degree() != 0) throw DomainError("not invertible");
    return t0 * r0.lead().inverse();
}

// sum of g(x) over the roots of the monic m, from Newton power sums of m.
ExactScalar root_trace(const Poly& g, const Poly& m) {
    int n = m.degree();
    std::vector<ExactScalar> t{ExactScalar(n)};
    for (int k = 1; k <= g.degree(); ++k) {
        ExactScalar s(0);
        for (int i = 1; i <= std::min(k - 1, n); ++i) s = s + m[n - i] * t[k - i];
        if (k <= n) s = s + m[n - k] * ExactScalar(k);
        t.push_back(-s);
    }
    ExactScalar r(0);
    for (int k = 0; k <= g.degree(); ++k) r = r + g[k] * t[k];
    return r;
}

// sum over the nonzero points Q of E[pi] of s(Q)^k, s = -2x/y, from the kernel polynomial.
ExactScalar kernel_power_trace(const CurveData& c, const ExactScalar& pi, int k) {
    if (k % 2) return ExactScalar(0);
    Poly ker = pi_isogeny(c, pi).kernel;
    Poly h = Poly::monomial(ExactScalar(4), 2) * inverse_mod(c.cubic(), ker);
    Poly hk(ExactScalar(1));
    for (int j = 0; j < k / 2; ++j) hk = Poly::divmod(hk * h, ker).second;
    return ExactScalar(2) * root_trace(hk, ker);
}

// F(G(s, t), t) for a law F and an inner G.
XSeries2 substitute_first(const XSeries2& F, const XSeries2& G, int L) {
    XSeries2 r(ExactScalar(0), L, L, "s", "t");
    XSeries2 pw(ExactScalar(0), L, L, "s", "t");
    pw.set(0, 0, ExactScalar(1));
    for (int i = 0; i < L; ++i) {
        for (const auto& [k, v] : F.terms())
            if (k.first == i) {
                XSeries2 tj(ExactScalar(0), L, L, "s", "t");
                tj.set(0, k.second, v);
                r = r + XSeries2::mul(pw, tj, L, L);
            }
        pw = XSeries2::mul(pw, G, L, L);
    }
    return r;
}

}  // namespace

TEST(FormalGroup, ParameterNormalizationAndCurveEquation) {
    for (const auto& c : matrix()) {
        FormalGroupData fg = build_formal_group(c, 24);
        EXPECT_EQ(fg.x.floor(), -2);
        EXPECT_EQ(fg.x.at(-2), q(1));
        EXPECT_EQ(fg.y.at(-3), q(-2));
        XSeries lhs = fg.y * fg.y;
        XSeries rhs = fg.x * fg.x * fg.x * q(4) - fg.x * c.g2 - XSeries::constant(c.g3, kExactOrder, "s");
        EXPECT_TRUE(lhs.agrees_with(rhs)) << c.name;
        EXPECT_GE(std::min(lhs.order(), rhs.order()), 14) << c.name;
        EXPECT_EQ(fg.lambda.at(1), q(1));
    }
}

TEST(FormalGroup, LogarithmAgainstReversedParameter) {
    FormalGroupData fg = build_formal_group(CurveData::gauss(), 30);
    EXPECT_EQ(fg.lambda.at(5), q(-2, 5));
    for (int e = 2; e < 5; ++e) EXPECT_TRUE(fg.lambda.at(e).is_zero());
    for (const auto& c : matrix()) {
        FormalGroupData f = build_formal_group(c, 26);
        // exp_law comes from -2 wp/wp', lambda from the invariant differential
        XSeries r = f.exp_law.revert().with_var("s");
        EXPECT_TRUE(r.agrees_with(f.lambda)) << c.name;
        XSeries id = f.lambda.compose(f.exp_law.with_var("s"), 26);
        EXPECT_TRUE(id.agrees_with(XSeries::monomial(q(1), 1, kExactOrder, "s"))) << c.name;
        EXPECT_GE(id.order(), 26);
    }
}

TEST(FormalGroup, GroupLawIdentities) {
    for (const auto& c : matrix()) {
        int L = 10;
        FormalGroupData fg = build_formal_group(c, 2 * L, L);
        const XSeries2& F = fg.law;
        EXPECT_TRUE(F.agrees_with(F.transpose())) << c.name;
        EXPECT_TRUE(F.row(0).agrees_with(XSeries::monomial(q(1), 1, kExactOrder, "s"))) << c.name;
        XSeries2 lhs = XSeries2::compose(fg.lambda.truncated(L), F);
        XSeries2 rhs = XSeries2::in_x(fg.lambda.truncated(L), L, "s", "t") +
                       XSeries2::in_x(fg.lambda.truncated(L), L, "t", "s").transpose();
        EXPECT_TRUE(lhs.agrees_with(rhs)) << c.name;
        // F(F(s, t), t) = F(s, F(t, t))
        XSeries2 a = substitute_first(F, F, L);
        XSeries tt(ExactScalar(0), L, "t");
        for (const auto& [k, v] : F.terms())
            if (k.first + k.second < L) tt.add_to(k.first + k.second, v);
        XSeries2 ft = XSeries2::in_x(tt, L, "t", "s").transpose();
        XSeries2 b(ExactScalar(0), L, L, "s", "t");
        XSeries2 pw(ExactScalar(0), L, L, "s", "t");
        pw.set(0, 0, q(1));
        for (int j = 0; j < L; ++j) {
            for (const auto& [k, v] : F.terms())
                if (k.second == j) {
                    XSeries2 si(ExactScalar(0), L, L, "s", "t");
                    si.set(k.first, 0, v);
                    b = b + XSeries2::mul(si, pw, L, L);
                }
            pw = XSeries2::mul(pw, ft, L, L);
        }
        // both sides are complete in total degree < L
        for (const auto& [k, v] : (a - b).terms())
            if (k.first + k.second < L) EXPECT_TRUE(v.is_zero()) << c.name << " " << k.first << "," << k.second;
        int nonlinear = 0;
        for (const auto& [k, v] : a.terms()) nonlinear += k.first + k.second > 1 && k.first + k.second < L;
        EXPECT_GT(nonlinear, 2) << c.name;
    }
}

TEST(FormalPi, SplitCongruenceAndLinearTerm) {
    CurveData c = CurveData::gauss();
    SplitPrimeData sp(1, 13, gi(3, 2));
    FormalGroupData fg = build_formal_group(c, 40);
    PSeries f = formal_pi(fg, sp, 20, 40);
    EXPECT_TRUE(f.at(1).equals_at_precision(sp.pi_image()));
    for (int e = 0; e < 40; ++e) {
        PadicScalar d = f.at(e) - (e == 13 ? PadicScalar::from_int(sp.field(), 1) : PadicScalar::exact_zero(sp.field()));
        EXPECT_GE(d.valuation(), 1) << e;
    }
    // height one: the reduction starts at s^13 with a unit
    EXPECT_EQ(f.at(13).valuation(), 0);
    for (int e = 0; e < 13; ++e) EXPECT_GE(f.at(e).valuation(), 1);
    // identity and the wrong unit multiple
    XSeries one = formal_mul_exact(fg, q(1), 40);
    EXPECT_TRUE(one.agrees_with(XSeries::monomial(q(1), 1, kExactOrder, "s")));
    SplitPrimeData bad(1, 13, gi(2, -3));
    EXPECT_THROW(formal_pi(fg, bad, 10, 20), CongruenceError);
}

TEST(FormalPi, InertCongruenceThroughOrder60) {
    CurveData c = CurveData::gauss();
    SplitPrimeData sp(1, 7, q(-7));
    FormalGroupData fg = build_formal_group(c, 60);
    PSeries f = formal_pi(fg, sp, 8, 60);
    EXPECT_EQ(f.at(49).valuation(), 0);
    for (int e = 0; e < 49; ++e) EXPECT_GE(f.at(e).valuation(), 1) << e;
}

TEST(FormalPi, LogarithmConjugationAndNormComposite) {
    CurveData c = CurveData::gauss();
    int M = 30;
    FormalGroupData fg = build_formal_group(c, M);
    XSeries fp = formal_mul_exact(fg, gi(3, 2), M);
    XSeries fpb = formal_mul_exact(fg, gi(3, -2), M);
    XSeries f13 = formal_mul_exact(fg, q(13), M);
    EXPECT_TRUE(fg.lambda.compose(fp, M).agrees_with(fg.lambda * gi(3, 2)));
    EXPECT_TRUE(fp.compose(fpb, M).agrees_with(f13));
    // p-adically at precision
    SplitPrimeData sp(1, 13, gi(3, 2));
    PSeries pf = formal_pi(fg, sp, 30, M);
    PSeries lam = embed_series(fg.lambda, sp);
    PSeries lhs = lam.compose(pf, M);
    PSeries rhs = lam * sp.pi_image();
    EXPECT_TRUE(lhs.agrees_with(rhs));
    EXPECT_GE(lhs.min_absprec(), 20);
}

TEST(Preparation, PowerSumsSplit) {
    CurveData c = CurveData::gauss();
    SplitPrimeData sp(1, 13, gi(3, 2));
    int M = 100;
    FormalGroupData fg = build_formal_group(c, M);
    PSeries f = formal_pi(fg, sp, 40, M);
    DistinguishedPoly dp = prepare_and_power_sums(f, 13, 60);
    EXPECT_GE(dp.certified, 6);
    EXPECT_TRUE(dp.power_sums[0].equals_at_precision(PadicScalar::from_int(sp.field(), 13)));
    EXPECT_TRUE(dp.power_sums[1].equals_at_precision(-dp.coeffs[12]));
    for (int k = 1; k <= 36; ++k) EXPECT_GE(dp.power_sums[k].valuation(), (k + 11) / 12) << k;
    for (int j = 0; j < 13; ++j) EXPECT_GE(dp.coeffs[j].valuation(), 1);
    // U P = [pi]
    PSeries P = detail::padic_poly(sp.field(), dp.coeffs);
    EXPECT_TRUE(PSeries::mul(dp.unit, P, M - 13).agrees_with(f));
    // second evaluation order
    auto alt = power_sums_by_logderivative(dp, 60);
    for (int k = 0; k < 60; ++k) EXPECT_TRUE(alt[k].equals_at_precision(dp.power_sums[k])) << k;
    // exact traces over the kernel polynomial
    for (int k = 1; k <= 24; ++k) {
        PadicScalar ex = sp.embed(kernel_power_trace(c, gi(3, 2), k));
        EXPECT_TRUE(ex.equals_at_precision(dp.power_sums[k])) << k;
        EXPECT_GE(dp.power_sums[k].absprec(), dp.certified);
    }
    EXPECT_THROW(prepare_and_power_sums(f, 13, 60, 40), PrecisionExhausted);
}

TEST(Preparation, TorsionSumsAgreeForBothOrders) {
    CurveData c = CurveData::gauss();
    SplitPrimeData sp(1, 13, gi(3, 2));
    int M = 80;
    FormalGroupData fg = build_formal_group(c, M);
    DistinguishedPoly dp = prepare_and_power_sums(formal_pi(fg, sp, 40, M), 13, M);
    PSeries x2 = embed_series(fg.x.shift(2), sp) - PSeries::constant(PadicScalar::from_int(sp.field(), 1), kExactOrder, "s");
    PSeries dl = embed_series(fg.dlambda, sp);
    for (const PSeries& H : {x2, dl}) {
        TorsionSum a = torsion_sum(H, dp, 0), b = torsion_sum(H, dp, 0, true);
        EXPECT_TRUE(a.value.equals_at_precision(b.value));
        EXPECT_GE(a.certified, 4);
    }
}
