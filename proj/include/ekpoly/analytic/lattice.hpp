#pragma once

#include <ekpoly/analytic/gamma.hpp>
#include <ekpoly/weierstrass.hpp>

#include <array>

namespace ekpoly {

inline Cx cx_i() { return {Real(0), Real(1)}; }

// Period lattice Z g1 + Z g2 with Im(g1/g2) > 0, A = (g1 conj(g2) - g2 conj(g1))/(2 pi i).
// Also carries numeric wp, wp', zeta, sigma through Laurent series at small
// arguments followed by duplication.
class LatticeData {
public:
    LatticeData() = default;

    LatticeData(const CurveData& c, Cx w1, Cx w2, int terms = 34) : curve_(c) {
        if ((w1 / w2).im < 0) std::swap(w1, w2);
        reduce_basis(w1, w2);
        g1_ = w1;
        g2_ = w2;
        A_ = (g1_ * conj(g2_)).im / real_pi();
        if (A_ <= 0) throw DomainError("degenerate period lattice");
        g2c_ = to_cx(c.g2);
        g3c_ = to_cx(c.g3);
        WpFamily w = wp_family(c, 2 * terms + 4);
        XSeries sg = sigma_series(c, 2 * terms + 4);
        for (const auto& [e, v] : w.wp.terms())
            if (e >= 0) wp_.emplace_back(e, to_cx(v));
        for (const auto& [e, v] : w.zeta.terms())
            if (e >= 0) zeta_.emplace_back(e, to_cx(v));
        for (const auto& [e, v] : sg.terms()) sigma_.emplace_back(e, to_cx(v));
        rmin_ = std::min({abs(g1_), abs(g2_), abs(g1_ - g2_), abs(g1_ + g2_)});
        // e2* from the Legendre relation zeta(z + g) - zeta(z) = e2* g + conj(g)/A
        Cx eta1 = zeta(g1_ / Real(2)) * Real(2);
        e2_ = (eta1 - conj(g1_) / A_) / g1_;
    }

    const Cx& g1() const { return g1_; }
    const Cx& g2() const { return g2_; }
    const Real& A() const { return A_; }
    const Cx& e2star() const { return e2_; }
    const CurveData& curve() const { return curve_; }
    Real min_period() const { return rmin_; }

    // <z, w> = exp((z conj(w) - conj(z) w)/A)
    Cx pairing(const Cx& z, const Cx& w) const {
        Cx t = z * conj(w) - conj(z) * w;
        return exp(t / A_);
    }

    // real coordinates of z in the basis (g1, g2)
    std::array<Real, 2> coords(const Cx& z) const {
        Real det = (conj(g1_) * g2_).im;
        Real u = (conj(z) * g2_).im / det;
        Real v = (conj(g1_) * z).im / det;
        return {u, v};
    }

    Cx lattice_point(long m, long n) const { return g1_ * Real(m) + g2_ * Real(n); }

    // z - gamma with coordinates in [-1/2, 1/2)
    Cx reduce(const Cx& z, long* m = nullptr, long* n = nullptr) const {
        auto [u, v] = coords(z);
        long a = floor(u + Real(0.5)).convert_to<long>(), b = floor(v + Real(0.5)).convert_to<long>();
        if (m) *m = a;
        if (n) *n = b;
        return z - lattice_point(a, b);
    }

    Real distance_to_lattice(const Cx& z) const {
        Cx r = reduce(z);
        Real d = abs(r);
        for (long i = -1; i <= 1; ++i)
            for (long j = -1; j <= 1; ++j) d = std::min(d, abs(r - lattice_point(i, j)));
        return d;
    }

    bool in_lattice(const Cx& z, const Real& tol) const { return distance_to_lattice(z) < tol; }

    std::pair<Cx, Cx> wp_dwp(const Cx& z0) const {
        Cx z = reduce(z0);
        if (abs(z) < eps_real() * 1e6 * rmin_) throw PoleError("wp evaluated at a lattice point");
        int k = halvings(z);
        Cx u = z / Real(1L << k);
        Cx p = laurent_wp(u), dp = laurent_dwp(u);
        for (int j = 0; j < k; ++j) std::tie(p, dp) = duplicate(p, dp);
        return {p, dp};
    }
    Cx wp(const Cx& z) const { return wp_dwp(z).first; }

    Cx zeta(const Cx& z) const {
        int k = halvings(z);
        Cx u = z / Real(1L << k);
        Cx p = laurent_wp(u), dp = laurent_dwp(u), zt = laurent_zeta(u);
        for (int j = 0; j < k; ++j) {
            Cx ddp = p * p * Real(6) - g2c_ / Real(2);
            zt = zt * Real(2) + ddp / (dp * Real(2));
            std::tie(p, dp) = duplicate(p, dp);
        }
        return zt;
    }

    // F1(z) = zeta(z) - e2* z
    Cx F1(const Cx& z) const { return zeta(z) - e2_ * z; }

    Cx sigma(const Cx& z) const {
        int k = halvings(z);
        Cx u = z / Real(1L << k);
        Cx s = horner(sigma_, u), p = laurent_wp(u), dp = laurent_dwp(u);
        for (int j = 0; j < k; ++j) {
            s = -dp * pow(s, 4);
            std::tie(p, dp) = duplicate(p, dp);
        }
        return s;
    }

    // theta(z) = exp(-e2* z^2/2) sigma(z) and Theta(z, w) = theta(z + w)/(theta(z) theta(w))
    Cx theta(const Cx& z) const { return exp(-e2_ * z * z / Real(2)) * sigma(z); }
    Cx kronecker_theta(const Cx& z, const Cx& w) const { return theta(z + w) / (theta(z) * theta(w)); }

private:
    static void reduce_basis(Cx& a, Cx& b) {
        for (int it = 0; it < 100; ++it) {
            if (norm2(a) > norm2(b)) {
                std::swap(a, b);
                a = -a;
            }
            Real mu = (b * conj(a)).re / norm2(a);
            long r = floor(mu + Real(0.5)).convert_to<long>();
            if (r == 0) break;
            b = b - a * Real(r);
        }
        if ((a / b).im < 0) std::swap(a, b);
        if ((a / b).im < 0) a = -a;
    }

    int halvings(const Cx& z) const {
        int k = 0;
        Real r = abs(z), lim = rmin_ / 8;
        while (r > lim) {
            r /= 2;
            ++k;
        }
        return k;
    }

    static Cx horner(const std::vector<std::pair<int, Cx>>& c, const Cx& u) {
        Cx r(0);
        for (const auto& [e, v] : c) r += v * pow(u, e);
        return r;
    }

    Cx laurent_wp(const Cx& u) const { return Cx(1) / (u * u) + horner(wp_, u); }

    Cx laurent_dwp(const Cx& u) const {
        Cx r = Cx(-2) / (u * u * u);
        for (const auto& [e, v] : wp_)
            if (e > 0) r += v * Real(e) * pow(u, e - 1);
        return r;
    }

    Cx laurent_zeta(const Cx& u) const { return Cx(1) / u + horner(zeta_, u); }

    std::pair<Cx, Cx> duplicate(const Cx& p, const Cx& dp) const {
        Cx lam = (p * p * Real(6) - g2c_ / Real(2)) / dp;
        Cx X = lam * lam / Real(4) - p * Real(2);
        Cx Y = -(dp + lam * (X - p));
        return {X, Y};
    }

    CurveData curve_;
    Cx g1_, g2_, g2c_, g3c_, e2_;
    Real A_ = 0, rmin_ = 0;
    std::vector<std::pair<int, Cx>> wp_, zeta_, sigma_;
};

namespace detail {

inline Cx agm(Cx a, Cx b) {
    for (int it = 0; it < 200; ++it) {
        Cx a1 = (a + b) / Real(2);
        Cx b1 = sqrt(a * b);
        if (abs(a1 - b1) > abs(a1 + b1)) b1 = -b1;
        a = a1;
        b = b1;
        if (abs(a - b) <= eps_real() * abs(a) * 16) break;
    }
    return a;
}

}  // namespace detail

// Periods by the complex AGM over the three roots of 4x^3 - g2 x - g3; each
// candidate basis is checked by evaluating wp at the half periods.
inline LatticeData lattice_of_curve(const CurveData& c) {
    std::vector<Complex<VarReal>> coeffs = {(-c.g3).embed(60), (-c.g2).embed(60), Complex<VarReal>(VarReal(0), VarReal(0)),
                                            Complex<VarReal>(VarReal(4), VarReal(0))};
    std::vector<Cx> e;
    {
        PrecisionScope scope(70);
        for (const auto& r : detail::complex_roots(coeffs)) e.push_back({Real(r.re), Real(r.im)});
    }
    if (e.size() != 3) throw NotElliptic("cubic does not have three roots");
    std::array<int, 3> perm{0, 1, 2};
    Real best = -1;
    LatticeData out;
    do {
        Cx e1 = e[perm[0]], e2 = e[perm[1]], e3 = e[perm[2]];
        Cx a = sqrt(e1 - e3), b = sqrt(e1 - e2), cc = sqrt(e2 - e3);
        if (abs(a - b) > abs(a + b)) b = -b;
        if (abs(a - cc) > abs(a + cc)) cc = -cc;
        Cx w1 = Cx(real_pi()) / detail::agm(a, b);
        Cx w2 = cx_i() * real_pi() / detail::agm(a, cc);
        if (abs((w1 / w2).im) < Real("1e-20")) continue;
        LatticeData L(c, w1, w2);
        // the three half periods must give the three roots
        Real err = 0;
        std::array<Cx, 3> h = {L.g1() / Real(2), L.g2() / Real(2), (L.g1() + L.g2()) / Real(2)};
        std::vector<bool> used(3, false);
        for (const auto& z : h) {
            Cx p = L.wp(z);
            Real dmin = -1;
            int jm = -1;
            for (int j = 0; j < 3; ++j) {
                Real d = abs(p - e[j]);
                if (dmin < 0 || d < dmin) dmin = d, jm = j;
            }
            if (used[jm]) dmin = Real(1);
            used[jm] = true;
            err = std::max(err, dmin);
        }
        if (best < 0 || err < best) {
            best = err;
            out = L;
        }
        if (err < Real("1e-30")) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best < 0 || best > Real("1e-25")) throw ConvergenceBudget("no period basis reproduces the 2-torsion");
    return out;
}

}  // namespace ekpoly
