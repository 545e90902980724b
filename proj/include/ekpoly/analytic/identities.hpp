#pragma once

#include <ekpoly/analytic/hodge.hpp>
#include <ekpoly/kronecker.hpp>

#include <functional>
#include <random>

namespace ekpoly {

// z in C/Gamma with (wp(z), wp'(z)) = P.
inline Cx elliptic_log(const LatticeData& L, const Point& P) {
    if (P.inf) return Cx(0);
    Cx x = to_cx(P.x), y = to_cx(P.y);
    Real tol = Real("1e-25") * (1 + abs(x));
    for (const Cx& h : {L.g1() / Real(2), L.g2() / Real(2), (L.g1() + L.g2()) / Real(2)})
        if (abs(y) < tol && abs(L.wp(h) - x) < tol) return h;
    Cx best;
    Real bd = -1;
    const int G = 24;
    for (int i = 0; i < G; ++i)
        for (int j = 0; j < G; ++j) {
            Cx z = L.g1() * (Real(i) + Real(0.5)) / Real(G) + L.g2() * (Real(j) + Real(0.5)) / Real(G);
            auto [p, dp] = L.wp_dwp(z);
            Real d = abs(p - x) + abs(dp - y);
            if (bd < 0 || d < bd) bd = d, best = z;
        }
    Cx z = best;
    for (int it = 0; it < 100; ++it) {
        auto [p, dp] = L.wp_dwp(z);
        Cx step = (p - x) / dp;
        z -= step;
        if (abs(step) < eps_real() * 1e4 * L.min_period()) break;
    }
    auto [p, dp] = L.wp_dwp(z);
    if (abs(dp + y) < abs(dp - y)) z = -z;
    std::tie(p, dp) = L.wp_dwp(z);
    if (abs(p - x) + abs(dp - y) > Real("1e-20") * (1 + abs(x) + abs(y)))
        throw ConvergenceBudget("elliptic logarithm did not converge");
    return z;
}

// Numeric value of an elliptic polynomial a(wp) + b(wp) wp'.
inline Cx eval_elliptic(const EllipticPoly& P, const Cx& wp, const Cx& dwp) {
    auto horner = [&](const Poly& q) {
        Cx r(0);
        for (int i = q.degree(); i >= 0; --i) r = r * wp + to_cx(q[i]);
        return r;
    };
    Cx r = P.a.is_zero() ? Cx(0) : horner(P.a);
    if (!P.b.is_zero()) r += horner(P.b) * dwp;
    return r;
}

struct ResidualReport {
    std::string name;
    double residual = 0;
    double bound = 0;
    bool pass = false;
    std::vector<std::string> details;
};

struct IdentityParams {
    std::string curve = "gauss";
    int a = 2;
    Cx s = Cx(Real("1.3"), Real("0.2"));
    int m = 1;
    int samples = 20;
    int nmax = 4;
    int grid = 5;
    unsigned seed = 20240611;
    double step = 1e-4;
    int digits = 30;
};

// Points of C/Gamma given by coordinates in the period basis.
inline std::vector<Cx> sample_grid(const LatticeData& L, int count) {
    static const double uv[][2] = {{0.21, 0.33}, {0.45, 0.12}, {0.62, 0.58}, {0.15, 0.71}, {0.38, 0.47},
                                   {0.71, 0.26}, {0.55, 0.83}, {0.29, 0.61}};
    std::vector<Cx> out;
    for (int k = 0; k < count && k < 8; ++k) out.push_back(L.g1() * Real(uv[k][0]) + L.g2() * Real(uv[k][1]));
    return out;
}

namespace detail {

inline double rel(const Cx& a, const Cx& b) {
    Real d = abs(a - b), s = abs(a) + abs(b);
    if (s > 1) d /= s;
    return d.convert_to<double>();
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

class Checker {
public:
    Checker(std::string name, double bound) { r_.name = std::move(name), r_.bound = bound; }
    void add(const std::string& label, double residual) {
        r_.residual = std::max(r_.residual, residual);
        r_.details.push_back(label + ": " + fmt(residual));
    }
    ResidualReport done() {
        r_.pass = r_.residual < r_.bound;
        return r_;
    }

private:
    ResidualReport r_;
};

inline Cx rand_point(const LatticeData& L, std::mt19937& g) {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    return L.g1() * Real(u(g)) + L.g2() * Real(u(g));
}

}  // namespace detail

class IdentityRegistry {
public:
    using Fn = std::function<ResidualReport(const IdentityParams&)>;

    explicit IdentityRegistry(const CurveData& c, int digits = 30)
        : curve_(c), L_(lattice_of_curve(c)), ekl_(L_, digits) {
        add_all();
    }

    const LatticeData& lattice() const { return L_; }
    const EKLEvaluator& evaluator() const { return ekl_; }

    std::vector<std::string> names() const {
        std::vector<std::string> r;
        for (const auto& [k, v] : fns_) r.push_back(k);
        return r;
    }

    ResidualReport verify(const std::string& name, const IdentityParams& p = {}) const {
        auto it = fns_.find(name);
        if (it == fns_.end()) throw UnknownIdentity("no identity named '" + name + "'");
        return it->second(p);
    }

private:
    void add(const std::string& n, Fn f) { fns_[n] = std::move(f); }

    Cx K(int a, const Cx& z, const Cx& w, const Cx& s) const { return ekl_.K(a, z, w, s).value; }
    Cx E(int m, int b, const Cx& z) const { return ekl_.eisenstein_E(m, b, z).value; }
    Cx Apow(const Cx& s) const { return exp(s * Cx(log(L_.A()))); }

    void add_all() {
        const LatticeData& L = L_;

        add("functional-equation", [this, &L](const IdentityParams& p) {
            detail::Checker ck("functional-equation", 1e-8);
            std::mt19937 g(p.seed);
            std::uniform_int_distribution<int> ad(-2, 3);
            std::uniform_real_distribution<double> sr(-1.5, 2.5), si(-1.0, 1.0);
            for (int k = 0; k <= p.samples; ++k) {
                int a = k == 0 ? p.a : ad(g);
                Cx s = k == 0 ? p.s : Cx(Real(sr(g)), Real(si(g)));
                Cx z = detail::rand_point(L, g), w = detail::rand_point(L, g);
                Cx sp = Cx(Real(a + 1)) - s;
                // Gamma(s) K_a(z,w,s) = A^(a+1-2s) Gamma(a+1-s) K_a(w,z,a+1-s) <w,z>, with 1/Gamma moved across
                Cx lhs = K(a, z, w, s) * rgamma(sp);
                Cx rhs = Apow(sp - s) * rgamma(s) * K(a, w, z, sp) * L.pairing(w, z);
                ck.add("a=" + std::to_string(a) + " s=" + to_string(s, 4), detail::rel(lhs, rhs));
            }
            return ck.done();
        });

        add("reflection", [this, &L](const IdentityParams& p) {
            // K_{-a} from the reflection rule against direct summation where it converges
            detail::Checker ck("reflection", 1e-8);
            std::mt19937 g(p.seed + 1);
            for (int a = 1; a <= 3; ++a) {
                Cx z = detail::rand_point(L, g), w = detail::rand_point(L, g);
                Cx s(Real("4.5"), Real("0.3"));
                Cx lhs = K(-a, z, w, s), rhs = ekl_.direct_sum(-a, z, w, s, 60);
                ck.add("a=" + std::to_string(-a), detail::rel(lhs, rhs));
            }
            return ck.done();
        });

        add("direct-sum", [this, &L](const IdentityParams& p) {
            detail::Checker ck("direct-sum", 1e-8);
            std::mt19937 g(p.seed + 2);
            for (int a = 0; a <= 3; ++a) {
                Cx z = detail::rand_point(L, g), w = detail::rand_point(L, g);
                Cx s(Real(a) / 2 + Real("4.2"), Real("-0.4"));
                ck.add("a=" + std::to_string(a), detail::rel(K(a, z, w, s), ekl_.direct_sum(a, z, w, s, 60)));
            }
            return ck.done();
        });

        add("value-00", [this, &L](const IdentityParams& p) {
            detail::Checker ck("value-00", 1e-8);
            std::mt19937 g(p.seed + 3);
            for (const Cx& z0 : {Cx(0), L.g1(), L.g1() - L.g2() * Real(2)}) {
                Cx w = detail::rand_point(L, g);
                ck.add("z0=" + to_string(z0, 4), detail::rel(K(0, z0, w, Cx(0)), -L.pairing(w, z0)));
            }
            return ck.done();
        });

        add("zero-values", [this, &L](const IdentityParams& p) {
            detail::Checker ck("zero-values", 1e-8);
            for (const Cx& z : sample_grid(L, p.grid)) {
                ck.add("E00", detail::rel(E(0, 0, z), Cx(-1)));
                for (int a = 1; a <= 4; ++a) ck.add("e*_{" + std::to_string(a) + ",0}", abs(ekl_.e_star(a, 0, z).value).convert_to<double>());
            }
            return ck.done();
        });

        add("diff-Ka", [this, &L](const IdentityParams& p) {
            detail::Checker ck("diff-Ka", 1e-5);
            Real h(p.step);
            std::mt19937 g(p.seed + 4);
            for (int a = 0; a <= 2; ++a) {
                Cx z = detail::rand_point(L, g), w = detail::rand_point(L, g), s = p.s;
                Cx fx = (K(a, z + Cx(h), w, s) - K(a, z - Cx(h), w, s)) / (2 * h);
                Cx fy = (K(a, z + cx_i() * h, w, s) - K(a, z - cx_i() * h, w, s)) / (2 * h);
                Cx dz = (fx - cx_i() * fy) / Real(2), dzb = (fx + cx_i() * fy) / Real(2);
                ck.add("dz a=" + std::to_string(a), detail::rel(dz, -s * K(a + 1, z, w, s + Cx(1))));
                ck.add("dzbar a=" + std::to_string(a), detail::rel(dzb, (Cx(Real(a)) - s) * K(a - 1, z, w, s)));
            }
            return ck.done();
        });

        add("diff-E", [this, &L](const IdentityParams& p) {
            detail::Checker ck("diff-E", 1e-5);
            Real h(p.step);
            for (const Cx& z : sample_grid(L, 3))
                for (int m = 0; m <= 2; ++m)
                    for (int b = 0; b <= 2; ++b) {
                        auto d = [&](int mm, int bb) {
                            Cx fx = (E(mm, bb, z + Cx(h)) - E(mm, bb, z - Cx(h))) / (2 * h);
                            Cx fy = (E(mm, bb, z + cx_i() * h) - E(mm, bb, z - cx_i() * h)) / (2 * h);
                            return std::make_pair((fx - cx_i() * fy) / Real(2), (fx + cx_i() * fy) / Real(2));
                        };
                        std::string tag = std::to_string(m) + "," + std::to_string(b);
                        ck.add("dz E_{m+1,b} " + tag, detail::rel(d(m + 1, b).first, -E(m, b, z) / L.A()));
                        ck.add("dzbar E_{m,b+1} " + tag, detail::rel(d(m, b + 1).second, E(m, b, z) / L.A()));
                    }
            return ck.done();
        });

        add("E-periodicity-conjugation", [this, &L](const IdentityParams& p) {
            detail::Checker ck("E-periodicity-conjugation", 1e-8);
            for (const Cx& z : sample_grid(L, p.grid))
                for (int m = 0; m <= 2; ++m)
                    for (int b = 0; b <= 2; ++b) {
                        Cx e = E(m, b, z);
                        ck.add("period", detail::rel(E(m, b, z + L.g1() - L.g2() * Real(2)), e));
                        Cx c = E(b, m, z);
                        ck.add("conj", detail::rel(conj(e), (b - m) % 2 ? -c : c));
                    }
            return ck.done();
        });

        add("E01-F1", [this, &L](const IdentityParams& p) {
            // E_{0,1}(z) = F1(z) - conj(z)/A with F1 from its exact Laurent series at small z
            detail::Checker ck("E01-F1", 1e-8);
            WpFamily w = wp_family(curve_, 80);
            for (int k = 1; k <= 3; ++k) {
                Cx z = (L.g1() * Real("0.07") + L.g2() * Real("0.11")) * Real(k);
                Cx f(0);
                for (const auto& [e, v] : w.F1.terms()) f += to_cx(v) * pow(z, e);
                // the exact series uses the preset e2*; the lattice value is the analytic one
                f += (to_cx(curve_.e2star) - L.e2star()) * z;
                ck.add("z=" + to_string(z, 4), detail::rel(E(0, 1, z), f - conj(z) / L.A()));
            }
            return ck.done();
        });

        add("kronecker-theorem", [this, &L](const IdentityParams& p) {
            detail::Checker ck("kronecker-theorem", 1e-8);
            std::mt19937 g(p.seed + 5);
            for (int k = 0; k < p.grid; ++k) {
                Cx z = detail::rand_point(L, g), w = detail::rand_point(L, g);
                Cx lhs = L.kronecker_theta(z, w), rhs = exp(z * conj(w) / L.A()) * K(1, z, w, Cx(1));
                ck.add("z=" + to_string(z, 4), detail::rel(lhs, rhs));
            }
            return ck.done();
        });

        add("distribution-theta", [this, &L](const IdentityParams& p) {
            // Theta_{pi z0,0}(pi z, w/pibar) = (1/pi) sum_{z1 in pi^-1 Gamma/Gamma} Theta_{z0+z1,0}(z, w), m = 1
            detail::Checker ck("distribution-theta", 1e-8);
            if (curve_.d != 1 || abs(L.g1() / L.g2() - cx_i()) > Real("1e-30"))
                throw DomainError("distribution-theta is set up for the gauss lattice (Gamma = Z[i] g2)");
            Cx pi(Real(3), Real(2));
            long N = 13;
            auto Th = [&](const Cx& z0, const Cx& z, const Cx& w) {
                return exp(-w * conj(z0) / L.A()) * L.kronecker_theta(z + z0, w);
            };
            Cx z0 = L.g1() * Real("0.13") + L.g2() * Real("0.27");
            Cx w = L.g1() * Real("0.31") + L.g2() * Real("0.12");
            for (const Cx& z : sample_grid(L, p.grid)) {
                Cx zz = z * Real("0.3");
                Cx lhs = Th(pi * z0, pi * zz, w / conj(pi));
                Cx rhs(0);
                for (long k = 0; k < N; ++k) rhs += Th(z0 + L.g2() * Real(k) / pi, zz, w);
                rhs = rhs / pi;
                ck.add("z=" + to_string(zz, 4), detail::rel(lhs, rhs));
            }
            return ck.done();
        });

        add("damerell", [this, &L](const IdentityParams& p) {
            detail::Checker ck("damerell", 1e-8);
            if (curve_.d == 0) throw DomainError("the Damerell bridge needs a CM preset");
            Point P0(ExactScalar(1), ExactScalar(0));
            if (!curve_.on_curve(P0.x, P0.y)) throw DomainError("the bridge point (1, 0) is not on this curve");
            Cx z0 = elliptic_log(L, P0);
            if (!curve_.pi && curve_.d != 1) throw DomainError("the Damerell bridge needs pi in the preset");
            ExactScalar pi = curve_.pi ? *curve_.pi : ExactScalar::quad(1, 3, 2);
            EKEngine eng(curve_, pi, 4);
            TorsionPoint t = make_torsion_point(curve_, P0);
            for (int a = 0; a <= 4; ++a)
                for (int b = 0; b <= 4; ++b) {
                    Cx num = ekl_.e_star(a, b, z0).value / pow(Cx(L.A()), a);
                    Cx ex = to_cx(eng.value(t, a, b));
                    ck.add("e*_{" + std::to_string(a) + "," + std::to_string(b) + "}/A^a",
                           abs(num - ex).convert_to<double>());
                }
            return ck.done();
        });

        add("xi-and-E", [this, &L](const IdentityParams& p) {
            // L_n(z) = (-1)^(n-1) sum_b E01^(n-b)/(n-b)! E_{0,b}
            detail::Checker ck("xi-and-E", 1e-6);
            ConnectionTable T(curve_, p.nmax);
            for (const Cx& z : sample_grid(L, p.grid)) {
                auto [wp, dwp] = L.wp_dwp(z);
                HodgeValues v;
                v.z = z;
                v.G.assign(1, {});
                for (int b = 0; b <= p.nmax; ++b) v.G[0].push_back(b == 0 ? Cx(-1) : E(0, b, z));
                v.E01 = v.G[0][1];
                for (int n = 0; n <= p.nmax; ++n)
                    ck.add("n=" + std::to_string(n), detail::rel(HodgeFamily::D(v, 0, n), eval_elliptic(T.L(n), wp, dwp)));
            }
            return ck.done();
        });

        add("hodge-first", [this, &L](const IdentityParams& p) {
            // dD_{m+1,n} = -D_{m,n} dz - D_{m+1,n-1} dF1 and the same for D*, by finite differences
            detail::Checker ck("hodge-first", 1e-5);
            HodgeFamily H(ekl_, 3, 3);
            Real h(p.step);
            for (const Cx& z : sample_grid(L, p.grid)) {
                HodgeValues v = H.at(z);
                HodgeValues xp = H.step(v, Cx(h)), xm = H.step(v, Cx(-h));
                HodgeValues yp = H.step(v, cx_i() * h), ym = H.step(v, -cx_i() * h);
                Cx dF1 = -L.wp(z) - L.e2star();
                for (int star = 0; star <= 1; ++star)
                    for (int m = 0; m <= 2; ++m)
                        for (int n = 0; m + n <= 3; ++n) {
                            auto D = [&](const HodgeValues& u, int mm, int nn) {
                                return star ? HodgeFamily::Dstar(u, mm, nn) : HodgeFamily::D(u, mm, nn);
                            };
                            Cx fx = (D(xp, m + 1, n) - D(xm, m + 1, n)) / (2 * h);
                            Cx fy = (D(yp, m + 1, n) - D(ym, m + 1, n)) / (2 * h);
                            Cx dz = (fx - cx_i() * fy) / Real(2), dzb = (fx + cx_i() * fy) / Real(2);
                            Cx want = -D(v, m, n) - D(v, m + 1, n - 1) * dF1;
                            Real scale = 1 + abs(D(v, m, n)) + abs(D(v, m + 1, n - 1) * dF1);
                            std::string tag = std::string(star ? "D*" : "D") + " " + std::to_string(m + 1) + "," + std::to_string(n);
                            ck.add(tag, (abs(dz - want) / scale).convert_to<double>());
                            ck.add(tag + " dzbar", (abs(dzb) / scale).convert_to<double>());
                        }
            }
            return ck.done();
        });

        add("hodge-relation", [this, &L](const IdentityParams& p) {
            detail::Checker ck("hodge-relation", 1e-6);
            HodgeFamily H(ekl_, 3, 3);
            for (const Cx& z : sample_grid(L, std::min(p.grid, 3))) {
                HodgeValues v = H.at(z);
                for (int m = 0; m <= 3; ++m)
                    for (int b = 0; m + b <= 3; ++b)
                        ck.add(std::to_string(m) + "," + std::to_string(b),
                               abs(H.relation_residual(v, m, b)).convert_to<double>());
            }
            return ck.done();
        });
    }

    CurveData curve_;
    LatticeData L_;
    EKLEvaluator ekl_;
    std::map<std::string, Fn> fns_;
};

}  // namespace ekpoly
