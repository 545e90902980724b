#include <ekpoly/weierstrass.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace ekpoly;

namespace {

ExactScalar q(long a, long b = 1) { return ExactScalar::rational(a, b); }
ExactScalar gi(long a, long b) { return ExactScalar::quad(1, a, b); }

std::vector<CurveData> matrix() {
    return {CurveData::gauss(), CurveData("g3only", q(0), q(4), 3), CurveData("mixed", q(1), q(1), 0)};
}

// Coefficients c_k of z^(2k-2) in wp from (wp')^2 = 4wp^3 - g2 wp - g3.
std::map<int, ExactScalar> laurent_recursion(const CurveData& c, int kmax) {
    std::map<int, ExactScalar> ck;
    ck[2] = c.g2 / q(20);
    ck[3] = c.g3 / q(28);
    for (int k = 4; k <= kmax; ++k) {
        ExactScalar s(0);
        for (int m = 2; m <= k - 2; ++m) s = s + ck[m] * ck[k - m];
        ck[k] = s * q(3, (2 * k + 1) * (k - 3));
    }
    return ck;
}

FieldPtr sqrt2_over_gauss() { return NumberField::extension(1, {Quad(-2), Quad(0), Quad(1)}, "r2", {1.414, 0}); }

}  // namespace

TEST(Sigma, LeadingCoefficients) {
    auto c = CurveData::gauss();
    XSeries s = sigma_series(c, 9);
    EXPECT_EQ(s.at(1), q(1));
    EXPECT_TRUE(s.at(3).is_zero());
    EXPECT_EQ(s.at(5), -c.g2 / q(240));
    EXPECT_EQ(s.order(), 9);
    auto c2 = CurveData("g3only", q(0), q(4), 3);
    EXPECT_EQ(sigma_series(c2, 9).at(7), -c2.g3 / q(840));
    for (const auto& [e, v] : s.terms()) EXPECT_EQ(e % 2, 1);
}

TEST(Wp, WeierstrassOdeThroughOrder30) {
    for (const auto& c : matrix()) {
        WpFamily w = wp_family(c, 34);
        XSeries lhs = w.dwp * w.dwp;
        XSeries rhs = XSeries::constant(ExactScalar(4)) * w.wp * w.wp * w.wp - w.wp * c.g2 - XSeries::constant(c.g3);
        XSeries d = (lhs - rhs).truncated(30);
        ASSERT_GE(d.order(), 30) << c.name;
        for (int e = d.floor(); e < 30; ++e) EXPECT_TRUE(d.at(e).is_zero()) << c.name << " z^" << e;
    }
}

TEST(Wp, MatchesLaurentRecursion) {
    for (const auto& c : matrix()) {
        WpFamily w = wp_family(c, 24);
        auto ck = laurent_recursion(c, 12);
        EXPECT_EQ(w.wp.at(-2), q(1));
        EXPECT_TRUE(w.wp.at(0).is_zero());
        for (int k = 2; 2 * k - 2 < 24; ++k) EXPECT_EQ(w.wp.at(2 * k - 2), ck[k]) << c.name << " k=" << k;
        for (int e = -1; e < 24; e += 2) EXPECT_TRUE(w.wp.at(e).is_zero());
    }
}

TEST(Wp, ZetaAndSigmaRelations) {
    auto c = CurveData("mixed", q(1), q(1), 0);
    WpFamily w = wp_family(c, 20);
    EXPECT_TRUE(w.zeta.derivative().agrees_with(-w.wp));
    XSeries sg = sigma_series(c, 24);
    EXPECT_TRUE((sg.derivative() / sg).agrees_with(w.zeta));
    EXPECT_TRUE(w.F1.agrees_with(w.zeta));
    EXPECT_TRUE(w.F1.at(1).is_zero());
    EXPECT_TRUE(w.wp.derivative().agrees_with(w.dwp));
}

TEST(Points, AdditionExamples) {
    auto c = CurveData::gauss();
    Point P(q(1), q(0)), Z(q(0), q(0));
    EXPECT_EQ(curve_add(c, P, Point::origin()), P);
    EXPECT_TRUE(curve_add(c, P, P).inf);
    Point R = curve_add(c, Z, P);
    EXPECT_EQ(R, Point(q(-1), q(0)));
    EXPECT_TRUE(c.on_curve(R.x, R.y));
}

TEST(Points, GroupLawProperties) {
    auto c = CurveData::gauss();
    auto F = sqrt2_over_gauss();
    auto pts = torsion_points(c, 4, F);
    for (size_t i = 0; i < pts.size(); i += 3)
        for (size_t j = 0; j < pts.size(); j += 5) {
            Point a = curve_add(c, pts[i].P, pts[j].P), b = curve_add(c, pts[j].P, pts[i].P);
            EXPECT_EQ(a, b);
            if (!a.inf) EXPECT_TRUE(c.on_curve(a.x, a.y));
        }
}

TEST(Torsion, SmallLevels) {
    auto c = CurveData::gauss();
    auto K = NumberField::quadratic(1);
    EXPECT_EQ(torsion_points(c, 1, K).size(), 1u);
    auto t2 = torsion_points(c, 2, K);
    ASSERT_EQ(t2.size(), 4u);
    std::set<std::string> xs;
    for (const auto& t : t2)
        if (!t.P.inf) {
            EXPECT_TRUE(t.P.y.is_zero());
            xs.insert(t.P.x.to_string());
        }
    EXPECT_EQ(xs, (std::set<std::string>{"-1", "0", "1"}));
    EXPECT_THROW(torsion_points(c, 3, K), TowerTooDeep);
}

TEST(Torsion, ThreeTorsionOverEisensteinField) {
    // y^2 = 4x^3 + 1: all of E[3] is defined over Q(sqrt(-3))
    CurveData c("e3", q(0), q(-1), 3);
    auto pts = torsion_points(c, 3, NumberField::quadratic(3));
    EXPECT_EQ(pts.size(), 9u);
    for (const auto& t : pts) EXPECT_TRUE(curve_mul(c, 3, t.P).inf);
}

TEST(Torsion, FourTorsionNeedsSqrt2) {
    auto c = CurveData::gauss();
    auto F = sqrt2_over_gauss();
    auto pts = torsion_points(c, 4, F);
    ASSERT_EQ(pts.size(), 16u);
    auto r2 = ExactScalar::generator(F);
    bool found = false;
    for (const auto& t : pts) {
        if (t.P.inf) continue;
        EXPECT_TRUE(c.on_curve(t.P.x, t.P.y));
        Point d = curve_add(c, t.P, t.P);
        EXPECT_TRUE(curve_add(c, d, d).inf);
        if (t.P.x == ExactScalar(1) + r2) found = true;
    }
    EXPECT_TRUE(found);
}

TEST(Torsion, Annihilators) {
    auto c = CurveData::gauss();
    auto K = NumberField::quadratic(1);
    for (const auto& t : torsion_points(c, 2, K)) {
        if (t.P.inf) continue;
        if (t.P.x.is_zero()) EXPECT_EQ(t.annihilator.base_value().re * t.annihilator.base_value().re +
                                           t.annihilator.base_value().im * t.annihilator.base_value().im,
                                       2);
        else EXPECT_EQ(t.annihilator, q(2));
    }
}

TEST(Translate, AdditionFormulaOracle) {
    auto c = CurveData::gauss();
    int M = 12;
    auto [wpt, dwpt] = translate_wp(c, q(1), q(0), M);
    EXPECT_EQ(wpt.at(0), q(1));
    EXPECT_TRUE(wpt.at(1).is_zero());
    EXPECT_EQ(wpt.at(2), q(2));
    WpFamily w = wp_family(c, M + 8);
    XSeries ratio = (w.dwp - XSeries::constant(q(0))) / (w.wp - XSeries::constant(q(1)));
    XSeries oracle = ratio * ratio * q(1, 4) - w.wp - XSeries::constant(q(1));
    EXPECT_TRUE(wpt.agrees_with(oracle));
    EXPECT_GE(std::min(wpt.order(), oracle.order()), M - 1);
    EXPECT_TRUE(dwpt.agrees_with(wpt.derivative()));
}

TEST(Translate, TorsionPointOverTower) {
    auto c = CurveData::gauss();
    auto F = sqrt2_over_gauss();
    for (const auto& t : torsion_points(c, 4, F)) {
        if (t.P.inf || t.P.y.is_zero()) continue;
        auto [wpt, dwpt] = translate_wp(c, t.P.x, t.P.y, 10);
        EXPECT_EQ(wpt.at(0), t.P.x);
        EXPECT_EQ(wpt.at(1), t.P.y);
        XSeries ode = dwpt * dwpt - (wpt * wpt * wpt * q(4) - wpt * c.g2 - XSeries::constant(c.g3));
        for (int e = 0; e < ode.order(); ++e) EXPECT_TRUE(ode.at(e).is_zero());
        break;
    }
}

TEST(DivisionPolys, SigmaNormalization) {
    for (const auto& c : matrix()) {
        int M = 60;
        XSeries sg = sigma_series(c, M);
        WpFamily w = wp_family(c, M);
        DivisionPolys dp(c);
        for (int n = 2; n <= 5; ++n) {
            const YPoly& ps = dp.psi(n);
            XSeries val = ps.p.eval_series(w.wp);
            if (ps.e) val = val * w.dwp;
            XSeries ratio = sg.scale(ExactScalar(n)) / sg.pow(n * n);
            ASSERT_GE(std::min(ratio.order(), val.order()), 30);
            EXPECT_TRUE(ratio.agrees_with(val)) << c.name << " n=" << n;
        }
    }
}

TEST(DivisionPolys, MultiplicationMaps) {
    auto c = CurveData::gauss();
    int M = 16;
    WpFamily w = wp_family(c, M + 20);
    for (int n = 2; n <= 4; ++n) {
        OddMap m = mul_map(c, n);
        RationalMap xm{m.X, RatFun()}, ym{RatFun(), m.Y};
        EXPECT_TRUE(xm.expand(w, M).agrees_with(w.wp.scale(ExactScalar(n))));
        EXPECT_TRUE(ym.expand(w, M).agrees_with(w.dwp.scale(ExactScalar(n))));
    }
    PiIsogeny two = pi_isogeny(c, ExactScalar(2));
    EXPECT_EQ(two.kernel, c.cubic().monic());
    EXPECT_EQ(two.map.X.den.monic(), c.cubic().monic());
}

TEST(Isogeny, CmActionAndPi) {
    auto c = CurveData::gauss();
    Point P(q(0), q(0));
    EXPECT_EQ(cm_i(c, P), P);
    auto F = sqrt2_over_gauss();
    auto pts = torsion_points(c, 4, F);
    for (const auto& t : pts) {
        if (t.P.inf) continue;
        Point ip = cm_i(c, t.P);
        EXPECT_TRUE(c.on_curve(ip.x, ip.y));
        EXPECT_EQ(cm_i(c, ip), curve_neg(t.P));
    }
    PiIsogeny iso = pi_isogeny(c, gi(3, 2));
    EXPECT_EQ(iso.kernel.degree(), 6);
    EXPECT_EQ(iso.map.X.den.monic(), (iso.kernel * iso.kernel).monic());
    for (const auto& t : pts) EXPECT_EQ(iso.map.apply(t.P), cm_mul(c, gi(3, 2), t.P));
}

TEST(Isogeny, InertSmokeKernelDegree) {
    auto c = CurveData::gauss();
    PiIsogeny iso = pi_isogeny(c, ExactScalar(-7));
    EXPECT_EQ(iso.kernel.degree(), 24);
}

TEST(F1p, RationalFormCrossCheck) {
    auto c = CurveData::gauss();
    SplitPrimeData sp(1, 13, gi(3, 2));
    RationalMap r = f1p_rational(c, sp);
    WpFamily w = wp_family(c, 26);
    XSeries s = r.expand(c, 20);
    EXPECT_EQ(s.at(-1), q(12, 13));
    EXPECT_TRUE(s.at(0).is_zero());
    EXPECT_TRUE(r.eval(Point(q(1), q(0))).is_zero());
    XSeries direct = f1p_series(w, gi(3, 2), gi(3, -2)).truncated(20);
    EXPECT_TRUE(s.agrees_with(direct));
    EXPECT_GE(s.order(), 20);
    RationalMap wrong = f1p_rational(pi_isogeny(c, gi(3, 2)), 12);
    EXPECT_FALSE(wrong.expand(c, 20).agrees_with(direct));
}

TEST(Algebraize, WpMultiples) {
    auto c = CurveData::gauss();
    WpFamily w = wp_family(c, 30);
    EllipticPoly h = algebraize((w.wp * q(-1, 2)).truncated(24), c);
    EXPECT_EQ(h.to_string(), "-1/2*wp");
    EllipticPoly h3 = algebraize((w.dwp * q(-1, 6)).truncated(24), c);
    EXPECT_EQ(h3.to_string(), "-1/6*dwp");
    EXPECT_EQ(algebraize(XSeries::constant(q(1), 24), c).to_string(), "1");
    EXPECT_EQ(algebraize(XSeries(ExactScalar(0), 24), c).to_string(), "0");
}

TEST(Algebraize, RoundTripRandom) {
    std::mt19937 rng(4);
    std::uniform_int_distribution<long> co(-5, 5);
    for (const auto& c : matrix()) {
        WpFamily w = wp_family(c, 40);
        for (int t = 0; t < 4; ++t) {
            std::vector<ExactScalar> a, b;
            for (int k = 0; k < 4; ++k) a.push_back(q(co(rng), 1 + k));
            for (int k = 0; k < 3; ++k) b.push_back(q(co(rng), 2 + k));
            EllipticPoly h{Poly(a), Poly(b)};
            XSeries f = h.expand(w).truncated(24);
            EXPECT_EQ(algebraize(f, c), h);
        }
    }
}

TEST(Algebraize, RejectsNonElliptic) {
    auto c = CurveData::gauss();
    XSeries f = XSeries::monomial(q(1), -1, 24);
    EXPECT_THROW(algebraize(f, c), NotElliptic);
    XSeries g = XSeries::monomial(q(1), 1, 24);
    EXPECT_THROW(algebraize(g, c), NotElliptic);
}

TEST(Presets, ParseFile) {
    std::istringstream in("# comment\nname=foo\ng2=4\ng3=0\nd=1\ne2star=0\n\nname=bar\ng2=1/2+3i\ng3=1\nd=1\n");
    auto m = parse_presets(in);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m["bar"].g2, ExactScalar::quad(1, mpq_class(1, 2), 3));
    std::istringstream bad("name=x\ng2=1\ng3=0\nd=1\ncolor=red\n");
    EXPECT_THROW(parse_presets(bad), ConfigError);
    std::istringstream sing("name=x\ng2=3\ng3=1\nd=0\n");
    EXPECT_THROW(parse_presets(sing), ValidationError);
    EXPECT_EQ(builtin_presets().count("gauss"), 1u);
}
