#include <ekpoly/kronecker.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace ekpoly;

namespace {

ExactScalar q(long a, long b = 1) { return ExactScalar::rational(a, b); }
ExactScalar gi(long a, long b) { return ExactScalar::quad(1, a, b); }

std::vector<CurveData> matrix() {
    return {CurveData::gauss(), CurveData("g3only", q(0), q(4), 3), CurveData("mixed", q(1), q(1), 0)};
}

ExactScalar binom(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return ExactScalar(mpq_class(r));
}

ExactScalar inv_fact(int n) {
    mpz_class f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return ExactScalar(mpq_class(1, f));
}

// Theta(z, w) = exp(-e2* z w) sigma(z + w) / (sigma(z) sigma(w)), with sigma(z + w)
// expanded binomially; coefficients z^i w^j for i < oz, j < ow.
XSeries2 theta_oracle(const CurveData& c, int oz, int ow) {
    int X = oz + 2, Y = ow + 2;
    XSeries sg = sigma_series(c, X + Y + 2);
    XSeries2 S(ExactScalar(0), X, Y);
    for (const auto& [e, v] : sg.terms())
        for (int i = 0; i <= e; ++i)
            if (i < X && e - i < Y) S.add_to(i, e - i, v * binom(e, i));
    XSeries inv = sg.inverse(X + Y);
    XSeries2 iz = XSeries2::in_x(inv, kExactOrder);
    XSeries2 iw = XSeries2::in_x(inv, kExactOrder).transpose();
    XSeries2 r = S * iz * iw;
    if (!c.e2star.is_zero()) {
        XSeries2 ex(ExactScalar(0), kExactOrder, kExactOrder);
        for (int k = 0; k <= X + Y; ++k) ex.set(k, k, (-c.e2star).pow(k) * inv_fact(k));
        r = XSeries2::mul(r, ex, r.order_x(), r.order_y());
    }
    return r.truncated(oz, ow);
}

// Rows w^(b-1) of a two-variable series.
std::vector<XSeries> rows_of(const XSeries2& s, int count) {
    std::vector<XSeries> r;
    for (int b = 0; b < count; ++b) r.push_back(s.row(b - 1));
    return r;
}

// sum_k f^(n-k)/(n-k)! rows[k]
XSeries combine(const XSeries& f, const std::vector<XSeries>& rows, int n) {
    XSeries s(ExactScalar(0), kExactOrder);
    for (int k = 0; k <= n; ++k) s = s + f.pow(n - k) * rows[k] * inv_fact(n - k);
    return s;
}

FieldPtr sqrt2_over_gauss() { return NumberField::extension(1, {Quad(-2), Quad(0), Quad(1)}, "r2", {1.414, 0}); }

TorsionPoint two_torsion_gauss() { return make_torsion_point(CurveData::gauss(), Point(q(1), q(0))); }

// A point of exact order 4 on the gauss curve whose x-coordinate is irrational.
TorsionPoint four_torsion_gauss() {
    auto c = CurveData::gauss();
    for (const auto& t : torsion_points(c, 4, sqrt2_over_gauss()))
        if (t.order == 4 && !t.P.x.in_base()) return t;
    throw std::runtime_error("no 4-torsion point found");
}

}  // namespace

TEST(Xi, LowRows) {
    for (const auto& c : matrix()) {
        XiExpansion x = xi_expand(c, 16, 6);
        EXPECT_TRUE(x.L[0].agrees_with(XSeries::constant(q(1), 16)));
        EXPECT_EQ(x.L[0].order(), 16);
        EXPECT_TRUE(x.L[1].terms().empty());
        EXPECT_EQ(x.L[1].order(), 16);
        EXPECT_EQ(x.xi.at(0, -1), q(1));
        for (int i = -6; i < 16; ++i) EXPECT_TRUE(x.xi.at(i, 0).is_zero());
        WpFamily w = wp_family(c, 20);
        EXPECT_TRUE(x.L[2].agrees_with(w.wp * q(-1, 2)));
        EXPECT_TRUE(x.L[3].agrees_with(w.dwp * q(-1, 6)));
    }
}

TEST(Xi, FiniteFormulaOracle) {
    for (const auto& c : matrix()) {
        XiExpansion x = xi_expand(c, 10, 7);
        XSeries2 th = theta_oracle(c, 20, 7);
        auto F = rows_of(th, 7);
        WpFamily w = wp_family(c, 30);
        for (int n = 0; n < 7; ++n) {
            XSeries Ln = combine(-w.F1, F, n);
            ASSERT_GE(Ln.order(), 10) << n;
            EXPECT_TRUE(x.L[n].agrees_with(Ln)) << c.name << " n=" << n;
            EXPECT_TRUE(x.F[n].agrees_with(F[n])) << c.name << " b=" << n;
        }
    }
}

TEST(Xi, L4ClosedForm) {
    for (const auto& c : matrix()) {
        XiExpansion x = xi_expand(c, 10, 6);
        EllipticPoly h = algebraize(x.L[4], c);
        EllipticPoly want{Poly({c.g2 / q(40), q(0), q(-1, 8)}), Poly()};
        EXPECT_EQ(h, want) << c.name << ": " << h.to_string();
    }
}

TEST(Xi, AlgebraizeRoundTripThroughOrder24) {
    for (const auto& c : matrix()) {
        XiExpansion x = xi_expand(c, 24, 9);
        WpFamily w = wp_family(c, 60);
        for (int n = 0; n <= 8; ++n) {
            EllipticPoly h = algebraize(x.L[n], c);
            XSeries back = h.expand(w);
            ASSERT_GE(back.order(), 24);
            EXPECT_TRUE(back.truncated(24).agrees_with(x.L[n])) << c.name << " n=" << n;
        }
        EXPECT_EQ(algebraize(x.L[0], c).to_string(), "1");
        EXPECT_EQ(algebraize(x.L[1], c).to_string(), "0");
        EXPECT_EQ(algebraize(x.L[2], c).to_string(), "-1/2*wp");
        EXPECT_EQ(algebraize(x.L[3], c).to_string(), "-1/6*dwp");
    }
}

TEST(Theta, SymmetricThroughBiorder12) {
    for (const auto& c : matrix()) {
        XiExpansion x = xi_expand(c, 12, 13);
        XSeries2 th = x.theta();
        ASSERT_EQ(th.order_x(), 12);
        ASSERT_EQ(th.order_y(), 12);
        for (int i = -1; i < 12; ++i)
            for (int j = -1; j < 12; ++j) EXPECT_EQ(th.at(i, j), th.at(j, i)) << c.name << " " << i << "," << j;
        EXPECT_EQ(th.at(-1, 0), q(1));
        EXPECT_EQ(th.at(0, -1), q(1));
    }
}

TEST(Theta, E2StarEntersConstant) {
    CurveData c("e2", q(1), q(1), 0, q(3, 7));
    TorsionPoint O = make_torsion_point(c, Point::origin());
    EKEngine e(c, q(1), 2);
    EXPECT_EQ(e.value(O, 0, 2), q(3, 7));
    XSeries2 th = theta_oracle(c, 6, 6);
    XiExpansion x = xi_expand(c, 6, 6);
    EXPECT_TRUE(x.theta().agrees_with(th));
}

TEST(Translated, TwoTorsionData) {
    auto c = CurveData::gauss();
    TorsionPoint z0 = two_torsion_gauss();
    ExactScalar pi = gi(3, 2);
    EXPECT_TRUE(coleman_seed(c, z0.P, pi).is_zero());
    ConnectionTable table(c, 4);
    TranslatedF f0 = f_translated(c, table, z0, 0, q(0), 12);
    EXPECT_TRUE(f0.series.agrees_with(XSeries::constant(q(1), 12)));
    TranslatedF f1 = f_translated(c, table, z0, 1, q(0), 12);
    auto [wp, dwp] = translate_wp(c, z0.P.x, z0.P.y, 12);
    EXPECT_TRUE(f1.series.derivative().agrees_with(-wp - XSeries::constant(c.e2star)));
    EXPECT_EQ(f1.series.at(1), q(-1));
    // constant term of F_{z0,2}: sum_n seed^(2-n)/(2-n)! L_n(z0)
    TranslatedF f2 = f_translated(c, table, z0, 2, q(0), 6);
    ExactScalar direct = table.L(2).eval(z0.P);
    EXPECT_EQ(f2.series.at(0), direct);
    EKEngine e(c, pi, 4);
    EXPECT_EQ(e.value(z0, 0, 2), -direct);
}

TEST(Translated, SeedSatisfiesPiRelationAsSeries) {
    auto c = CurveData::gauss();
    ExactScalar pi = gi(3, 2), pibar = gi(3, -2);
    TorsionPoint z0 = four_torsion_gauss();
    Point pz = cm_mul(c, pi, z0.P);
    RationalMap f1p = f1p_rational_checked(c, pi);
    ExactScalar s0 = coleman_seed(c, z0.P, pi, f1p), s1 = coleman_seed(c, pz, pi, f1p);
    EXPECT_FALSE(s0 == s1 && s0.is_zero());
    const int M = 10;
    TranslatedBasis a = translated_basis(c, z0.P, s0, M), b = translated_basis(c, pz, s1, M);
    XSeries lhs = f1p.expand(a.wp, a.dwp, M);
    XSeries rhs = a.F1 - b.F1.scale(pi) * pibar.inverse();
    EXPECT_TRUE(lhs.agrees_with(rhs));
    EXPECT_EQ(f1p.eval(z0.P), s0 - s1 / pibar);
}

TEST(Translated, OrbitMustAvoidKernel) {
    auto c = CurveData::gauss();
    EXPECT_THROW(coleman_seed(c, Point::origin(), gi(3, 2)), DomainError);
}

TEST(EK, VanishingAndConstantRules) {
    auto c = CurveData::gauss();
    EKEngine e(c, gi(3, 2), 4);
    TorsionPoint O = make_torsion_point(c, Point::origin());
    TorsionPoint z0 = two_torsion_gauss();
    for (const auto& P : {O, z0}) {
        EXPECT_EQ(e.value(P, 0, 0), q(-1));
        for (int a = 1; a <= 4; ++a) EXPECT_TRUE(e.value(P, a, 0).is_zero());
    }
    EXPECT_TRUE(e.value(O, 0, 2).is_zero());
    auto col = e.column(z0, 4, 2);
    for (int a = 0; a <= 4; ++a) EXPECT_EQ(col[a], e.value(z0, a, 2));
    ExactScalar v = ek_exact(c, z0, 1, 2, gi(3, 2));
    EXPECT_EQ(v, col[1]);
}

TEST(EK, ConstantTermRouteMatchesLaurentRoute) {
    auto c = CurveData::gauss();
    ExactScalar pi = gi(3, 2);
    EKEngine e(c, pi, 4);
    TorsionPoint z0 = four_torsion_gauss();
    ExactScalar s = e.seed(z0.P);
    for (int b = 1; b <= 4; ++b) {
        ExactScalar direct(0);
        for (int n = 0; n <= b; ++n) direct = direct + s.pow(b - n) * inv_fact(b - n) * e.table().L(n).eval(z0.P);
        EXPECT_EQ(e.value(z0, 0, b), EKEngine::from_coefficient(direct, 0, b)) << b;
    }
}

TEST(EK, TableRoundTripAndAppendOnly) {
    auto c = CurveData::gauss();
    EKEngine e(c, gi(3, 2), 3);
    TorsionPoint z0 = two_torsion_gauss();
    EKTable t;
    for (int b = 0; b <= 3; ++b) {
        auto col = e.column(z0, 3, b);
        for (int a = 0; a <= 3; ++a) t.insert(a, b, "2tor:1", col[a], "exact");
    }
    EXPECT_EQ(t.size(), 16u);
    std::stringstream ss;
    t.write(ss);
    EKTable u = EKTable::read(ss);
    ASSERT_EQ(u.size(), 16u);
    for (const auto& [k, v] : t.entries()) {
        const auto* w = u.find(std::get<0>(k), std::get<1>(k), std::get<2>(k));
        ASSERT_NE(w, nullptr);
        EXPECT_EQ(w->value, v.value);
    }
    EXPECT_NO_THROW(t.insert(1, 2, "2tor:1", e.value(z0, 1, 2), "exact"));
    EXPECT_THROW(t.insert(1, 2, "2tor:1", e.value(z0, 1, 2) + q(1), "exact"), CrossCheckError);
    EXPECT_THROW(t.insert(2, 0, "x", q(1), "exact"), CrossCheckError);
}

TEST(ThetaP, DegenerateCases) {
    auto c = CurveData::gauss();
    for (const Point& z0 : {Point::origin(), Point(q(1), q(0))}) {
        ThetaPExpansion t = theta_p_series(c, z0, q(1), 8, 5);
        for (const auto& r : t.Lp) EXPECT_TRUE(r.terms().empty());
        ThetaPExpansion s = theta_p_series(c, z0, gi(3, 2), 8, 5);
        EXPECT_TRUE(s.Lp[0].terms().empty());
    }
    // w^0 row of Xi^(p) is F1^(p) itself: residue 1 - 1/49 in the inert case
    ThetaPExpansion inert = theta_p_series(c, Point::origin(), q(-7), 8, 4);
    XSeries g = f1p_series(wp_family(c, 12), q(-7), q(-7));
    EXPECT_TRUE(inert.Lp[1].agrees_with(g));
    EXPECT_EQ(inert.Lp[1].at(-1), q(48, 49));
    EXPECT_TRUE(inert.Lp[1].at(0).is_zero());
}

TEST(ThetaP, MatchesTwoVariableDefinitionAtOrigin) {
    auto c = CurveData::gauss();
    ExactScalar pi = gi(3, 2), ib = gi(3, -2).inverse();
    const int MW = 6;
    ThetaPExpansion t = theta_p_series(c, Point::origin(), pi, 8, MW);
    XSeries2 th = theta_oracle(c, 20, MW);
    XSeries2 scaled(ExactScalar(0), th.order_x(), th.order_y());
    for (const auto& [k, v] : th.terms()) scaled.set(k.first, k.second, v * pi.pow(k.first) * ib.pow(k.second + 1));
    auto rows = rows_of(th - scaled, MW);
    WpFamily w = wp_family(c, 30);
    for (int n = 0; n < MW; ++n) {
        XSeries want = combine(-w.F1, rows, n);
        EXPECT_TRUE(t.Lp[n].agrees_with(want)) << n;
    }
}

TEST(ThetaP, MatchesTranslatedGeneratingSeries) {
    auto c = CurveData::gauss();
    ExactScalar pi = gi(3, 2), ib = gi(3, -2).inverse();
    EKEngine e(c, pi, 4);
    const int M = 8, MW = 5;
    for (const auto& z0 : {two_torsion_gauss(), four_torsion_gauss()}) {
        TorsionPoint pz = make_torsion_point(c, cm_mul(c, pi, z0.P));
        ThetaPExpansion t = theta_p_series(c, z0.P, pi, M, MW);
        std::vector<XSeries> rows;
        for (int b = 0; b < MW; ++b)
            rows.push_back(e.generating(z0, b, M) - e.generating(pz, b, M).scale(pi) * ib.pow(b));
        XSeries f1 = e.generating(z0, 1, M);
        for (int n = 0; n < MW; ++n) EXPECT_TRUE(t.Lp[n].agrees_with(combine(-f1, rows, n))) << n;
    }
}
