#pragma once

#include <ekpoly/weierstrass/points.hpp>

namespace ekpoly {

// y^e * p(x) on the curve; e is kept in {0, 1} by y^2 = 4x^3 - g2 x - g3.
struct YPoly {
    Poly p;
    int e = 0;
};

// Division polynomials psi_n, normalized by sigma(nz) = psi_n(wp, wp') sigma(z)^(n^2),
// so psi_2 = -y.
class DivisionPolys {
public:
    explicit DivisionPolys(const CurveData& c) : c_(c), f_(c.cubic()) {
        const auto& g2 = c.g2;
        const auto& g3 = c.g3;
        auto q = [](long a, long b = 1) { return ExactScalar::rational(a, b); };
        psi_.push_back({Poly(), 0});
        psi_.push_back({Poly(ExactScalar(1)), 0});
        psi_.push_back({Poly(ExactScalar(-1)), 1});
        psi_.push_back({Poly({-g2 * g2 / q(16), -q(3) * g3, -q(3, 2) * g2, q(0), q(3)}), 0});
        Poly in4({g2.pow(3) / q(32) - g3 * g3, -g2 * g3 / q(2), -q(5, 8) * g2 * g2, -q(10) * g3, -q(5, 2) * g2, q(0),
                  q(2)});
        psi_.push_back({-in4, 1});
    }

    const YPoly& psi(int n) {
        if (n < 0) throw DomainError("negative division polynomial index");
        while (int(psi_.size()) <= n) extend();
        return psi_[n];
    }

    // psi_n^2 as a polynomial in x.
    Poly psi_sq(int n) {
        const YPoly& a = psi(n);
        Poly r = a.p * a.p;
        return a.e ? r * f_ : r;
    }

    // x([n]P) = x - psi_{n-1} psi_{n+1} / psi_n^2
    RatFun mul_x(int n) {
        if (n == 0) throw DomainError("[0] has no x-map");
        n = std::abs(n);
        if (n == 1) return RatFun(Poly::x());
        YPoly pr = mulp(psi(n - 1), psi(n + 1));
        return RatFun(Poly::x()) - RatFun(pr.p, psi_sq(n));
    }
    // y([n]P) = y * (returned rational function):  -psi_{2n}/psi_n^4
    RatFun mul_y_over_y(int n) {
        if (n == 0) throw DomainError("[0] has no y-map");
        int s = n < 0 ? -1 : 1;
        n = std::abs(n);
        if (n == 1) return RatFun(Poly(ExactScalar(s)));
        const YPoly& a = psi(2 * n);
        Poly den = psi_sq(n);
        return RatFun(a.p * ExactScalar(-s), den * den);
    }

private:
    YPoly mulp(const YPoly& a, const YPoly& b) const {
        YPoly r{a.p * b.p, a.e + b.e};
        if (r.e >= 2) {
            r.p = r.p * f_;
            r.e -= 2;
        }
        return r;
    }
    YPoly sub(const YPoly& a, const YPoly& b) const {
        if (a.e != b.e) throw DomainError("mixed parity in division polynomial recurrence");
        return {a.p - b.p, a.e};
    }
    YPoly cube(const YPoly& a) const { return mulp(mulp(a, a), a); }
    YPoly sq(const YPoly& a) const { return mulp(a, a); }

    void extend() {
        int n = int(psi_.size());
        int k = n / 2;
        if (n % 2 == 1) {
            // psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
            YPoly a = mulp(psi_[k + 2], cube(psi_[k]));
            YPoly b = mulp(psi_[k - 1], cube(psi_[k + 1]));
            psi_.push_back(sub(a, b));
        } else {
            // psi_{2k} = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / psi_2
            YPoly br = sub(mulp(psi_[k + 2], sq(psi_[k - 1])), mulp(psi_[k - 2], sq(psi_[k + 1])));
            YPoly t = mulp(psi_[k], br);
            if (t.e == 1) {
                psi_.push_back({-t.p, 0});
            } else {
                auto [qq, rr] = Poly::divmod(t.p, f_);
                if (!rr.is_zero()) throw DomainError("division polynomial recurrence is not exact");
                psi_.push_back({-qq, 1});
            }
        }
    }

    CurveData c_;
    Poly f_;
    std::vector<YPoly> psi_;
};

// Nonzero points P with nP = O whose coordinates lie in F (F must contain K).
inline std::vector<TorsionPoint> torsion_points(const CurveData& c, int n, const FieldPtr& F) {
    if (n < 1 || n > 12) throw DomainError("torsion_points supports 1 <= n <= 12");
    std::vector<TorsionPoint> out;
    out.push_back(make_torsion_point(c, Point::origin()));
    if (n == 1) return out;
    DivisionPolys dp(c);
    const YPoly& ps = dp.psi(n);
    Poly xs = ps.e ? ps.p * c.cubic() : ps.p;
    Poly fpoly = c.cubic();
    std::vector<Point> pts;
    for (const auto& x : roots_in_field(xs, F)) {
        ExactScalar v = fpoly.eval(x);
        if (v.is_zero()) {
            pts.emplace_back(x, ExactScalar(0));
            continue;
        }
        Poly yq({-v, ExactScalar(0), ExactScalar(1)});
        for (const auto& y : roots_in_field(yq, F)) pts.emplace_back(x, y);
    }
    for (const auto& P : pts) {
        if (!curve_mul(c, n, P).inf) continue;
        out.push_back(make_torsion_point(c, P));
    }
    if (long(out.size()) != long(n) * n)
        throw TowerTooDeep("only " + std::to_string(out.size()) + " of " + std::to_string(n * n) +
                           " torsion points have coordinates in " + F->tag());
    return out;
}

}  // namespace ekpoly
