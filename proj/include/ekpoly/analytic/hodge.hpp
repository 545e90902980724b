#pragma once

#include <ekpoly/analytic/ekl.hpp>

namespace ekpoly {

using GTable = std::vector<std::vector<Cx>>;  // G[m][b]

struct HodgeValues {
    Cx z;
    GTable G;
    Cx E01, F1;
    std::string monodromy;  // nonempty when a second path disagreed
};

namespace detail {

inline Real factorial_real(int n) {
    Real f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Chebyshev-Lobatto nodes x_j = cos(pi j/N) on [-1, 1], j = 0..N.
inline std::vector<Real> cheb_nodes(int N) {
    std::vector<Real> x;
    for (int j = 0; j <= N; ++j) x.push_back(cos(real_pi() * j / N));
    return x;
}

// Values at the nodes of the antiderivative vanishing at x = -1.
inline std::vector<Cx> cheb_cumulative(const std::vector<Cx>& f) {
    int N = int(f.size()) - 1;
    std::vector<Cx> c(N + 1);
    for (int k = 0; k <= N; ++k) {
        Cx s(0);
        for (int j = 0; j <= N; ++j) {
            Real w = (j == 0 || j == N) ? Real(0.5) : Real(1);
            s += f[j] * (w * cos(real_pi() * j * k / N));
        }
        c[k] = s * (Real(2) / N);
    }
    c[0] /= Real(2);
    c[N] /= Real(2);
    // integral coefficients
    std::vector<Cx> C(N + 2);
    for (int k = 1; k <= N + 1; ++k) {
        Cx prev = c[k - 1] * (k - 1 == 0 ? Real(2) : Real(1));
        Cx next = k + 1 <= N ? c[k + 1] : Cx(0);
        C[k] = (prev - next) / Real(2 * k);
    }
    auto eval = [&](const Real& x) {
        Cx r(0);
        Real t0 = 1, t1 = x;
        for (int k = 0; k <= N + 1; ++k) {
            Real tk = k == 0 ? t0 : (k == 1 ? t1 : Real(0));
            if (k >= 2) {
                tk = 2 * x * t1 - t0;
                t0 = t1;
                t1 = tk;
            }
            r += C[k] * tk;
        }
        return r;
    };
    std::vector<Real> x = cheb_nodes(N);
    Cx at_left = eval(Real(-1));
    std::vector<Cx> out;
    for (int j = 0; j <= N; ++j) out.push_back(eval(x[j]) - at_left);
    return out;
}

}  // namespace detail

// The real-analytic family G_{m,b} (m <= mmax, b <= bmax) by integrating the
// closed forms -G_{m-1,b} dz + G_{m,b-1} dzbar/A along straight segments from a
// fixed basepoint.  G_{0,b} = E_{0,b}; the value at the basepoint is chosen so
// that A^b G_{m,b} + (-1)^(m+b) A^m conj(G_{b,m}) = A^(m+b) E_{m,b} - (-z)^m zbar^b/(m! b!).
class HodgeFamily {
public:
    HodgeFamily(const EKLEvaluator& ekl, int mmax, int bmax, int nodes = 48)
        : ekl_(ekl), L_(ekl.lattice()), mmax_(std::max(mmax, bmax)), bmax_(std::max(mmax, bmax)), nodes_(nodes) {
        base_ = (L_.g1() + L_.g2()) * Real("0.35");
        base_G_ = basepoint_values();
    }

    const Cx& basepoint() const { return base_; }
    int mmax() const { return mmax_; }
    int bmax() const { return bmax_; }

    HodgeValues at(const Cx& z) const { return finish(z, integrate(base_, z, base_G_, nodes_)); }

    // Values at z reached through a waypoint; a disagreement with the straight
    // path is reported in `monodromy` (the functions are multivalued).
    HodgeValues at_via(const Cx& z, const Cx& waypoint, const Real& tol) const {
        GTable mid = integrate(base_, waypoint, base_G_, nodes_);
        HodgeValues v = finish(z, integrate(waypoint, z, mid, nodes_));
        HodgeValues d = at(z);
        Real diff = 0;
        for (int m = 0; m <= mmax_; ++m)
            for (int b = 0; b <= bmax_; ++b) diff = std::max(diff, abs(v.G[m][b] - d.G[m][b]));
        if (diff > tol) v.monodromy = "paths differ by " + diff.str(6, std::ios_base::scientific);
        return v;
    }

    // Values at z + h starting from known values at z along a short segment.
    HodgeValues step(const HodgeValues& from, const Cx& h, int nodes = 12) const {
        return finish(from.z + h, integrate(from.z, from.z + h, from.G, nodes));
    }

    // D_{m,n} = (-1)^(n-1) sum_k E01^(n-k)/(n-k)! G_{m,k}
    static Cx D(const HodgeValues& v, int m, int n) {
        if (n < 0) return Cx(0);
        Cx s(0);
        for (int k = 0; k <= n; ++k) s += pow(v.E01, n - k) / detail::factorial_real(n - k) * v.G[m][k];
        return n % 2 ? s : -s;
    }

    // D*_{m,n} = D_{m,n} - (-1)^(m+n)/(m! n!) z^m F1^n
    static Cx Dstar(const HodgeValues& v, int m, int n) {
        if (n < 0) return Cx(0);
        Cx t = pow(v.z, m) * pow(v.F1, n) / (detail::factorial_real(m) * detail::factorial_real(n));
        return D(v, m, n) - ((m + n) % 2 ? -t : t);
    }

    Cx relation_residual(const HodgeValues& v, int m, int b) const {
        Real A = L_.A();
        Cx lhs = v.G[m][b] * pow(A, b) + conj(v.G[b][m]) * pow(A, m) * Real((m + b) % 2 ? -1 : 1);
        return lhs - rhs(v.z, m, b);
    }

private:
    Cx rhs(const Cx& z, int m, int b) const {
        Real A = L_.A();
        Cx E = (m == 0 && b == 0) ? Cx(-1) : ekl_.eisenstein_E(m, b, z).value;
        Cx mono = pow(-z, m) * pow(conj(z), b) / (detail::factorial_real(m) * detail::factorial_real(b));
        return E * pow(A, m + b) - mono;
    }

    GTable basepoint_values() const {
        Real A = L_.A();
        GTable G(mmax_ + 1, std::vector<Cx>(bmax_ + 1));
        for (int b = 0; b <= bmax_; ++b) G[0][b] = b == 0 ? Cx(-1) : ekl_.eisenstein_E(0, b, base_).value;
        for (int m = 1; m <= mmax_; ++m) G[m][0] = -pow(-base_, m) / detail::factorial_real(m);
        for (int m = 1; m <= mmax_; ++m)
            for (int b = 1; b <= bmax_; ++b) {
                if (m > b) G[m][b] = Cx(0);
                else if (m == b) G[m][b] = Cx(rhs(base_, m, m).re / (2 * pow(A, m)));
                else G[m][b] = rhs(base_, m, b) / pow(A, b);
            }
        return G;
    }

    void check_segment(const Cx& a, const Cx& b) const {
        Real lim = L_.min_period() * Real("0.02");
        for (int j = 0; j <= 64; ++j) {
            Cx p = a + (b - a) * (Real(j) / 64);
            if (L_.distance_to_lattice(p) < lim) throw PathThroughLattice("integration path passes too close to a lattice point");
        }
    }

    GTable integrate(const Cx& a, const Cx& b, const GTable& init, int N) const {
        check_segment(a, b);
        Cx dz = b - a, dzb = conj(dz) / L_.A();
        std::vector<Real> x = detail::cheb_nodes(N);
        std::vector<Cx> pts;
        for (int j = 0; j <= N; ++j) pts.push_back(a + dz * ((x[j] + 1) / 2));
        // path[m][b][j]
        std::vector<std::vector<std::vector<Cx>>> P(mmax_ + 1, std::vector<std::vector<Cx>>(bmax_ + 1));
        for (int b = 0; b <= bmax_; ++b)
            for (int j = 0; j <= N; ++j)
                P[0][b].push_back(b == 0 ? Cx(-1) : ekl_.eisenstein_E(0, b, pts[j]).value);
        for (int m = 1; m <= mmax_; ++m)
            for (int b = 0; b <= bmax_; ++b) {
                std::vector<Cx> f(N + 1);
                for (int j = 0; j <= N; ++j) {
                    f[j] = -P[m - 1][b][j] * dz;
                    if (b > 0) f[j] += P[m][b - 1][j] * dzb;
                    f[j] /= Real(2);  // dt = dx/2
                }
                std::vector<Cx> I = detail::cheb_cumulative(f);
                for (int j = 0; j <= N; ++j) P[m][b].push_back(init[m][b] + I[j]);
            }
        GTable out(mmax_ + 1, std::vector<Cx>(bmax_ + 1));
        for (int m = 0; m <= mmax_; ++m)
            for (int b = 0; b <= bmax_; ++b) out[m][b] = P[m][b][0];  // x_0 = 1 is the endpoint
        return out;
    }

    HodgeValues finish(const Cx& z, GTable G) const {
        HodgeValues v;
        v.z = z;
        v.G = std::move(G);
        v.E01 = v.G[0][1];
        v.F1 = v.E01 + conj(z) / L_.A();
        return v;
    }

    const EKLEvaluator& ekl_;
    const LatticeData& L_;
    int mmax_, bmax_, nodes_;
    Cx base_;
    GTable base_G_;
};

}  // namespace ekpoly
