#include <ekpoly/padicpolylog.hpp>

#include <gtest/gtest.h>

using namespace ekpoly;

namespace {

ExactScalar q(long a, long b = 1) { return ExactScalar::rational(a, b); }
ExactScalar gi(long a, long b) { return ExactScalar::quad(1, a, b); }

const Point kZ0(q(1), q(0));

PadicPolylog& split_pipeline() {
    static SplitPrimeData sp(1, 13, gi(3, 2));
    static PadicPolylog pl(CurveData::gauss(), sp, 6);
    return pl;
}

bool vanishes_below(const PSeries& f, int order) {
    for (const auto& [e, v] : f.terms())
        if (e < order && !v.is_zero()) return false;
    return true;
}

bool agree_below(const PSeries& a, const PSeries& b, int order) { return vanishes_below(a - b, order); }

PSeries dlog(PadicPolylog& pl, const PSeries& f) {
    return PSeries::mul(f.derivative(), pl.inv_dlambda(), f.order() - 1);
}

}  // namespace

TEST(Fhat, LowTermsAndLambdaComposition) {
    PadicPolylog& pl = split_pipeline();
    const SplitPrimeData& sp = pl.prime();
    PadicGenSeries f0 = pl.fhat(kZ0, 0);
    EXPECT_TRUE(f0.series.at(0).equals_at_precision(PadicScalar::from_int(sp.field(), 1)));
    EXPECT_TRUE(vanishes_below(f0.series - PSeries::constant(f0.series.at(0), kExactOrder, "s"), pl.order()));
    PadicGenSeries f1 = pl.fhat(kZ0, 1);
    EXPECT_TRUE(f1.series.at(0).is_zero());
    EXPECT_TRUE(f1.series.at(1).equals_at_precision(PadicScalar::from_int(sp.field(), -1)));
    // F_{z0,b}(lambda(s)) straight from the Laurent expansion of F_{z0,b}
    EKEngine e(CurveData::gauss(), gi(3, 2), 3);
    TorsionPoint t = make_torsion_point(CurveData::gauss(), kZ0);
    const int K = 30;
    XSeries lam = pl.formal_group().lambda.truncated(K);
    for (int b = 1; b <= 3; ++b) {
        XSeries want = e.generating(t, b, K).compose(lam.with_var("z"), K);
        EXPECT_TRUE(agree_below(pl.fhat(kZ0, b).series, embed_series(want, sp), K)) << b;
    }
}

TEST(Fhat, RestrictedTrivialCases) {
    PadicPolylog& pl = split_pipeline();
    EXPECT_TRUE(vanishes_below(pl.fhat_restricted(kZ0, 0).series, pl.order()));
    PadicGenSeries r1 = pl.fhat_restricted(kZ0, 1);
    EXPECT_TRUE(r1.series.at(0).is_zero());
    EXPECT_EQ(pl.moment(kZ0, 0, 1).is_zero(), true);
}

TEST(Moments, InterpolationSplit) {
    PadicPolylog& pl = split_pipeline();
    const SplitPrimeData& sp = pl.prime();
    auto c = CurveData::gauss();
    ExactScalar pi = gi(3, 2), pibar = gi(3, -2);
    EKEngine e(c, pi, 3);
    TorsionPoint t = make_torsion_point(c, kZ0);
    TorsionPoint pt = make_torsion_point(c, cm_mul(c, pi, kZ0));
    for (int b = 1; b <= 3; ++b)
        for (int a = 0; a <= 3; ++a) {
            ExactScalar rhs = e.value(t, a, b) - pi.pow(a) * e.value(pt, a, b) / pibar.pow(b);
            if ((a + b - 1) % 2) rhs = -rhs;
            PadicScalar got = pl.moment(kZ0, a, b);
            EXPECT_GE(got.absprec(), 6) << a << "," << b;
            EXPECT_TRUE(got.equals_at_precision(sp.embed(rhs))) << a << "," << b << ": " << got;
        }
}

TEST(Ehat, RecursionAndTorsionAudit) {
    PadicPolylog& pl = split_pipeline();
    int M = pl.order();
    for (int b = 0; b <= 4; ++b)
        for (int m = 0; m <= 4; ++m) {
            const EhatSeries& e = pl.ehat(kZ0, m, b);
            ASSERT_EQ(e.audit.size(), 4u);
            for (const auto& a : e.audit) EXPECT_GE(a.certified, 4) << m << "," << b;
            if (m == 0) {
                EXPECT_TRUE(agree_below(e.series, pl.fhat_restricted(kZ0, b).series, M));
                continue;
            }
            const EhatSeries& prev = pl.ehat(kZ0, m - 1, b);
            EXPECT_TRUE(vanishes_below(dlog(pl, e.series) + prev.series, M - 2)) << m << "," << b;
        }
}

TEST(Dhat, ZeroRowMatchesThetaOracle) {
    PadicPolylog& pl = split_pipeline();
    auto D = pl.dhat_invert(kZ0, 0, 4);
    const int K = 30;
    auto L = pl.lhat_p_oracle(kZ0, 4, K);
    for (int n = 0; n <= 4; ++n) EXPECT_TRUE(agree_below(D[n], L[n], K)) << n;
}

TEST(Dhat, DifferentialEquation) {
    PadicPolylog& pl = split_pipeline();
    const SplitPrimeData& sp = pl.prime();
    int M = pl.order();
    const DiscBasis& d = pl.basis(kZ0);
    PSeries omega_star = embed_series(-d.wp - XSeries::constant(CurveData::gauss().e2star, kExactOrder, "s"), sp);
    std::vector<std::vector<PSeries>> D;
    for (int m = 0; m <= 5; ++m) D.push_back(pl.dhat_invert(kZ0, m, 5 - m));
    for (int m = 1; m <= 5; ++m) EXPECT_TRUE(vanishes_below(D[m][0], M)) << m;
    auto d11 = pl.ehat(kZ0, 1, 1).series;
    EXPECT_TRUE(agree_below(D[1][1], d11, M));
    // the equation constrains m, n >= 1; the m = 0 row is L^(p)_n itself
    for (int m = 1; m <= 5; ++m)
        for (int n = 1; m + n <= 5; ++n) {
            PSeries r = dlog(pl, D[m][n]) + D[m - 1][n];
            r = r + PSeries::mul(D[m][n - 1], omega_star, M);
            EXPECT_TRUE(vanishes_below(r, M - 2)) << m << "," << n;
        }
}

TEST(Star, ConstantCancelsInTranslationSum) {
    PadicPolylog& pl = split_pipeline();
    const FormalGroupData& fg = pl.formal_group();
    EXPECT_TRUE(star_constant(fg, 0).is_zero());
    EXPECT_TRUE(star_constant(fg, 1).is_zero());
    EXPECT_TRUE(star_constant(fg, 2).is_zero());
    EXPECT_EQ(star_constant(fg, 3), q(2, 5));
    const int K = 12;
    for (int b = 0; b <= 3; ++b) {
        PSeries plain = pl.restricted_by_translation(pl.fhat(kZ0, b + 1).series.truncated(pl.order()), K);
        PSeries star = pl.restricted_by_translation(pl.fhat_star(kZ0, b + 1), K);
        EXPECT_TRUE(agree_below(star, plain, K)) << b;
        EXPECT_TRUE(agree_below(star, pl.fhat_restricted(kZ0, b + 1).series, K)) << b;
    }
}

TEST(Specialization, DegreeTwoLayout) {
    PadicPolylog& pl = split_pipeline();
    SpecializationTable t = specialization_table(pl, kZ0, 2);
    ASSERT_EQ(t.entries.size(), 6u);
    const SpecEntry* e = t.find(1, 0, "omega");
    ASSERT_NE(e, nullptr);
    EXPECT_TRUE(e->value.equals_at_precision(pl.ehat(kZ0, 1, 1).value));
    EXPECT_GE(t.min_precision(), 4);
    for (const auto& [m, n] : t.suppressed) EXPECT_EQ(m, 0);
    EXPECT_EQ(t.suppressed.size(), 3u);
    EXPECT_EQ(t.serialize(), specialization_table(pl, kZ0, 2).serialize());
}

TEST(Inert, SmokePipelineWithSlackRetries) {
    SplitPrimeData sp(1, 7, q(-7));
    int slack = with_slack_retries(CurveData::gauss(), sp, 1, [](PadicPolylog& pl) {
        int M = pl.order();
        EXPECT_GE(pl.distinguished().certified, 1);
        for (int b = 1; b <= 2; ++b)
            for (int m = 0; m <= 2; ++m) {
                const EhatSeries& e = pl.ehat(kZ0, m, b);
                EXPECT_FALSE(e.audit.empty()) << m << "," << b;
                if (m > 0)
                    EXPECT_TRUE(vanishes_below(dlog(pl, e.series) + pl.ehat(kZ0, m - 1, b).series, M - 2))
                        << m << "," << b;
            }
        return pl.slack();
    });
    EXPECT_GT(slack, 16);
}
