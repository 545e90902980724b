#include <ekpoly/analytic.hpp>

#include <gtest/gtest.h>

using namespace ekpoly;

namespace {

IdentityRegistry& gauss_registry() {
    static IdentityRegistry r(CurveData::gauss());
    return r;
}

double d(const Real& x) { return x.convert_to<double>(); }

void expect_pass(const std::string& name, IdentityParams p = {}) {
    ResidualReport r = gauss_registry().verify(name, p);
    std::string all;
    for (const auto& s : r.details) all += "\n  " + s;
    EXPECT_TRUE(r.pass) << name << " residual " << r.residual << " bound " << r.bound << all;
    EXPECT_FALSE(r.details.empty());
}

}  // namespace

TEST(Lattice, GaussIsSquare) {
    const LatticeData& L = gauss_registry().lattice();
    EXPECT_LT(d(abs(L.g1() / L.g2() - cx_i())), 1e-40);
    EXPECT_LT(d(abs(L.A() - norm2(L.g2()) / real_pi())), 1e-40);
    EXPECT_LT(d(abs(L.e2star())), 1e-40);
    for (const Cx& h : {L.g1() / Real(2), L.g2() / Real(2), (L.g1() + L.g2()) / Real(2)}) {
        Cx x = L.wp(h);
        // 2-torsion x-values of y^2 = 4x^3 - 4x
        Real best = std::min({abs(x), abs(x - Cx(1)), abs(x + Cx(1))});
        EXPECT_LT(d(best), 1e-40);
    }
}

TEST(Lattice, WeierstrassEquationAndPairing) {
    for (CurveData c : {CurveData::gauss(), CurveData("hex", ExactScalar(0), ExactScalar(4), 3)}) {
        LatticeData L = lattice_of_curve(c);
        Cx g2 = to_cx(c.g2), g3 = to_cx(c.g3);
        for (const Cx& z : sample_grid(L, 5)) {
            auto [p, dp] = L.wp_dwp(z);
            EXPECT_LT(d(abs(dp * dp - Real(4) * p * p * p + g2 * p + g3) / (1 + abs(dp * dp))), 1e-40);
            EXPECT_LT(d(abs(abs(L.pairing(z, z * Real(3) + L.g1())) - 1)), 1e-40);
            EXPECT_LT(d(abs(L.wp(z + L.g1() - L.g2()) - p)), 1e-35);
        }
        EXPECT_LT(d(abs(L.pairing(L.g1(), L.g2()) - Cx(1))), 1e-40);
    }
}

TEST(Lattice, Rescaling) {
    // (g2, g3) -> (c^-4 g2, c^-6 g3) scales the periods by c
    LatticeData a = lattice_of_curve(CurveData::gauss());
    LatticeData b = lattice_of_curve(CurveData("gauss/2", ExactScalar::rational(1, 4), ExactScalar(0), 1));
    EXPECT_LT(d(abs(b.min_period() / a.min_period() - 2)), 1e-40);
    EXPECT_LT(d(abs(b.A() / a.A() - 4)), 1e-40);
}

TEST(EKL, ValueAtLatticeAndPole) {
    const EKLEvaluator& e = gauss_registry().evaluator();
    const LatticeData& L = gauss_registry().lattice();
    EXPECT_THROW(e.K(0, Cx(0), L.g1(), Cx(1)), PoleError);
    EXPECT_THROW(e.eisenstein_E(1, 1, L.g2()), PoleError);
    EXPECT_THROW(e.direct_sum(2, Cx(0), L.g1() / Real(3), Cx(Real(1)), 20), DomainError);
    Cx w = L.g1() * Real("0.3") + L.g2() * Real("0.1");
    EKLValue v = e.K(0, L.g2(), w, Cx(0));
    EXPECT_LT(d(abs(v.value + L.pairing(w, L.g2()))), 1e-40);
}

TEST(EKL, EllipticLogarithm) {
    const LatticeData& L = gauss_registry().lattice();
    Cx z = elliptic_log(L, Point(ExactScalar(1), ExactScalar(0)));
    EXPECT_LT(d(abs(L.wp(z) - Cx(1))), 1e-30);
    EXPECT_LT(d(abs(L.distance_to_lattice(z * Real(2)))), 1e-30);
}

TEST(Identities, FunctionalEquationAndReflection) {
    expect_pass("functional-equation");
    expect_pass("reflection");
    expect_pass("direct-sum");
}

TEST(Identities, SpecialValues) {
    expect_pass("value-00");
    expect_pass("zero-values");
}

TEST(Identities, Differentials) {
    expect_pass("diff-Ka");
    expect_pass("diff-E");
}

TEST(Identities, EisensteinFunctions) {
    expect_pass("E-periodicity-conjugation");
    expect_pass("E01-F1");
}

TEST(Identities, ThetaComparisons) {
    expect_pass("kronecker-theorem");
    expect_pass("distribution-theta");
}

TEST(Identities, DamerellBridge) { expect_pass("damerell"); }

TEST(Identities, UnknownName) { EXPECT_THROW(gauss_registry().verify("no-such-identity"), UnknownIdentity); }

TEST(Hodge, ConnectionFunctionsAndRelation) {
    expect_pass("xi-and-E");
    expect_pass("hodge-relation");
}

TEST(Hodge, FirstDifferentialEquation) { expect_pass("hodge-first"); }

TEST(Hodge, PathsAndMonodromy) {
    const IdentityRegistry& r = gauss_registry();
    const LatticeData& L = r.lattice();
    HodgeFamily H(r.evaluator(), 2, 2, 32);
    EXPECT_THROW(H.at(L.g1() * Real("0.001")), PathThroughLattice);
    // the two routes to z pass on opposite sides of the lattice point g1
    Cx z = L.g1() * Real("1.3") + L.g2() * Real("0.35");
    Cx way = L.g1() * Real("0.9") + L.g2() * Real("-0.4");
    HodgeValues v = H.at_via(z, way, Real("1e-10"));
    EXPECT_FALSE(v.monodromy.empty());
    EXPECT_LT(d(abs(v.G[0][1] - H.at(z).G[0][1])), 1e-30);
}
