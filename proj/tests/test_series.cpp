#include <ekpoly/series/series2.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace ekpoly;

using S = TruncSeries<ExactScalar>;
using S2 = TruncSeries2<ExactScalar>;

namespace {

ExactScalar q(long a, long b = 1) { return ExactScalar::rational(a, b); }

S poly(std::initializer_list<std::pair<int, ExactScalar>> t, int order = kExactOrder, std::string var = "z") {
    S s(ExactScalar(0), order, var);
    for (auto& [e, c] : t) s.set(e, c);
    return s;
}

S random_series(std::mt19937& rng, int lo, int order) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
    S s(ExactScalar(0), order);
    for (int e = lo; e < order; ++e) s.set(e, ExactScalar::quad(1, mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))));
    return s;
}

}  // namespace

TEST(Compose, LinearSubstitutionWithPrincipalPart) {
    S f = poly({{-1, q(1)}, {1, q(1)}});
    S g = poly({{1, q(2)}}, 8, "s");
    S r = f.compose(g);
    EXPECT_EQ(r.at(-1), q(1, 2));
    EXPECT_EQ(r.at(1), q(2));
    for (int e = -1; e < r.order(); ++e)
        if (e != -1 && e != 1) EXPECT_TRUE(r.at(e).is_zero());
}

TEST(Compose, GeometricIntoFibonacci) {
    S f(ExactScalar(0), 5);
    for (int n = 0; n < 5; ++n) f.set(n, q(1));
    S g = poly({{1, q(1)}, {2, q(1)}}, kExactOrder, "s");
    S r = f.compose(g);
    ASSERT_EQ(r.order(), 5);
    long fib[] = {1, 1, 2, 3, 5};
    for (int n = 0; n < 5; ++n) EXPECT_EQ(r.at(n), q(fib[n]));
    EXPECT_THROW(r.at(5), UnknownCoefficient);
}

TEST(Compose, IdentityAndErrors) {
    std::mt19937 rng(3);
    S f = random_series(rng, -2, 9);
    S id = poly({{1, q(1)}});
    EXPECT_TRUE(f.compose(id).agrees_with(f));
    EXPECT_EQ(f.compose(id).order(), 9);
    S bad = poly({{0, q(1)}, {1, q(1)}});
    EXPECT_THROW(f.compose(bad), CompositionError);
    S sq = poly({{2, q(1)}}, 10);
    EXPECT_THROW(f.compose(sq), CompositionError);
}

TEST(ExpLog, Definitions) {
    S zero(ExactScalar(0), 6);
    S e0 = zero.exp();
    EXPECT_EQ(e0.at(0), q(1));
    for (int n = 1; n < 6; ++n) EXPECT_TRUE(e0.at(n).is_zero());
    S s = poly({{1, q(1)}}, 4);
    S es = s.exp();
    EXPECT_EQ(es.at(2), q(1, 2));
    EXPECT_EQ(es.at(3), q(1, 6));
    EXPECT_EQ(es.order(), 4);
    S l = poly({{0, q(1)}, {1, q(1)}}, 4).log();
    EXPECT_TRUE(l.at(0).is_zero());
    EXPECT_EQ(l.at(1), q(1));
    EXPECT_EQ(l.at(2), q(-1, 2));
    EXPECT_EQ(l.at(3), q(1, 3));
    EXPECT_THROW(poly({{0, q(2)}}, 4).log(), DomainError);
    EXPECT_THROW(poly({{0, q(2)}}, 4).exp(), DomainError);
}

TEST(ExpLog, RoundTrips) {
    std::mt19937 rng(5);
    for (int t = 0; t < 5; ++t) {
        S f = random_series(rng, 1, 10);
        EXPECT_TRUE(f.exp().log().agrees_with(f));
        S g = f.exp();
        EXPECT_TRUE(g.log().exp().agrees_with(g));
    }
}

TEST(Derive, Examples) {
    EXPECT_EQ(poly({{3, q(1)}}).derivative().at(2), q(3));
    EXPECT_EQ(poly({{2, q(1)}}).antiderivative().at(3), q(1, 3));
    EXPECT_EQ(poly({{-1, q(1)}}).derivative().at(-2), q(-1));
    EXPECT_THROW(poly({{-1, q(1)}}).antiderivative(), ResidueError);
    std::mt19937 rng(1);
    S f = random_series(rng, -3, 12);
    f.set(-1, q(0));
    S back = f.antiderivative().derivative();
    EXPECT_TRUE(back.agrees_with(f));
    EXPECT_TRUE(f.antiderivative().at(0).is_zero());
}

TEST(Product, OrderRule) {
    S a = poly({{-2, q(1)}, {0, q(3)}}, 7);
    S b = poly({{1, q(2)}, {3, q(1)}}, 5);
    S p = a * b;
    EXPECT_EQ(p.order(), std::min(7 + 1, 5 - 2));
}

TEST(Product, RingAxiomsExact) {
    std::mt19937 rng(9);
    for (int t = 0; t < 10; ++t) {
        S a = random_series(rng, -2, 10), b = random_series(rng, 0, 12), c = random_series(rng, 1, 9);
        EXPECT_TRUE(((a * b) * c).agrees_with(a * (b * c)));
        EXPECT_EQ(((a * b) * c).order(), (a * (b * c)).order());
        EXPECT_TRUE((a * (b + c)).agrees_with(a * b + a * c));
    }
}

TEST(Compose, Associative) {
    std::mt19937 rng(13);
    for (int t = 0; t < 5; ++t) {
        S f = random_series(rng, -1, 8), g = random_series(rng, 1, 8), h = random_series(rng, 1, 8);
        S lhs = f.compose(g).compose(h), rhs = f.compose(g.compose(h));
        EXPECT_TRUE(lhs.agrees_with(rhs));
    }
}

TEST(Revert, InverseUnderComposition) {
    std::mt19937 rng(17);
    S g = random_series(rng, 1, 12);
    S h = g.revert();
    S id = g.compose(h);
    EXPECT_EQ(id.at(1), q(1));
    for (int e = 2; e < id.order(); ++e) EXPECT_TRUE(id.at(e).is_zero());
    EXPECT_TRUE(h.revert().agrees_with(g));
}

TEST(Order, TruncationSoundness) {
    std::mt19937 rng(21);
    S f = random_series(rng, 0, 30), g = random_series(rng, 1, 30);
    auto pipeline = [](const S& a, const S& b, int M) {
        S x = a.truncated(M), y = b.truncated(M);
        return (x * y.exp()).compose(y) + (x.derivative() * y).antiderivative();
    };
    S lo = pipeline(f, g, 16), hi = pipeline(f, g, 26);
    ASSERT_LE(lo.order(), hi.order());
    EXPECT_TRUE(lo.agrees_with(hi));
}

TEST(Padic, SeriesPrecisionTracking) {
    auto F = PadicField::make(5, 12);
    PadicScalar ctx = PadicScalar::exact_zero(F);
    TruncSeries<PadicScalar> s(ctx, 12, "s");
    s.set(1, PadicScalar::from_int(F, 5));
    auto e = s.exp();
    // coefficient of s^n is 5^n/n!, valuation n - v_5(n!)
    EXPECT_EQ(e.at(5).valuation(), 5 - 1);
    EXPECT_EQ(e.at(10).valuation(), 10 - 2);
    auto l = e.log();
    EXPECT_TRUE(l.agrees_with(s));
}

TEST(TwoVariable, TransposeTwiceAndRows) {
    std::mt19937 rng(2);
    std::vector<S> rows;
    for (int j = 0; j < 4; ++j) rows.push_back(random_series(rng, -1, 6));
    S2 t = S2::from_rows(ExactScalar(0), rows, -1, 3);
    EXPECT_TRUE(t.transpose().transpose().agrees_with(t));
    EXPECT_TRUE(t.row(0).agrees_with(rows[1]));
    EXPECT_THROW(t.row(3), UnknownCoefficient);
}

TEST(TwoVariable, ComposeAdditiveArgument) {
    // exp(x + y) = exp(x) exp(y)
    S e(ExactScalar(0), 12);
    ExactScalar f = q(1);
    for (int n = 0; n < 12; ++n) {
        if (n) f = f / q(n);
        e.set(n, f);
    }
    S2 g(ExactScalar(0), 6, 6);
    g.set(1, 0, q(1));
    g.set(0, 1, q(1));
    S2 lhs = S2::compose(e, g);
    S2 ex = S2::in_x(e.truncated(6), 1), ey = S2::in_x(e.truncated(6), 1).transpose();
    S2 rhs = S2::mul(ex, ey, 6, 6);
    ASSERT_GE(lhs.order_x(), 6);
    EXPECT_TRUE(lhs.agrees_with(rhs));
}
