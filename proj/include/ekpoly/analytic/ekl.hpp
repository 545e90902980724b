#pragma once

#include <ekpoly/analytic/lattice.hpp>

namespace ekpoly {

struct EKLValue {
    int a = 0;
    Cx z0, w0, s;
    Cx value;
    Real bound = 0;  // heuristic: truncated lattice shells plus working precision
};

// Eisenstein-Kronecker-Lerch series K*_a(z0, w0, s) through the incomplete
// gamma form of the theta integral; a < 0 by the reflection rule.
class EKLEvaluator {
public:
    explicit EKLEvaluator(const LatticeData& L, int digits = 30, int max_shell = 60)
        : L_(L), digits_(digits), max_shell_(max_shell) {
        tol_ = pow(Real(10), -digits);
    }

    const LatticeData& lattice() const { return L_; }
    int digits() const { return digits_; }

    EKLValue K(int a, const Cx& z0, const Cx& w0, const Cx& s) const {
        if (a < 0) {
            EKLValue r = K(-a, -z0, w0, conj(s) - Cx(Real(a)));
            Cx v = conj(r.value);
            if (a % 2) v = -v;
            return {a, z0, w0, s, v, r.bound};
        }
        Real ztol = L_.min_period() * Real("1e-30");
        bool dz = a == 0 && L_.in_lattice(z0, ztol);
        bool dw = a == 0 && L_.in_lattice(w0, ztol);
        if (dw && abs(s - Cx(1)) < Real("1e-40")) throw PoleError("K*_0(z0, w0, s) has a pole at s = 1 for w0 in the lattice");
        Real b1 = 0, b2 = 0;
        Cx I1 = theta_tail(a, z0, w0, s, b1);
        Cx I2 = theta_tail(a, w0, z0, Cx(Real(a + 1)) - s, b2);
        Cx pr = L_.pairing(w0, z0);
        Cx rg = rgamma(s);
        Cx acc = rg * (I1 + I2 * pr);
        if (dz) acc -= pr * rgamma(s + Cx(1));
        if (dw) acc += rg / (s - Cx(1));
        Cx As = exp(-s * Cx(log(L_.A())));
        Real bound = (b1 + b2) * abs(rg) * abs(As) + tol_ * (1 + abs(acc * As));
        return {a, z0, w0, s, acc * As, bound};
    }

    // e*_{a,b}(z0) = K*_{a+b}(0, z0, b)
    EKLValue e_star(int a, int b, const Cx& z0) const { return K(a + b, Cx(0), z0, Cx(Real(b))); }

    // E_{m,b}(z) = K*_{b-m}(0, z, b)
    EKLValue eisenstein_E(int m, int b, const Cx& z) const {
        if (L_.in_lattice(z, L_.min_period() * Real("1e-20"))) throw PoleError("E_{m,b} is evaluated off the lattice");
        return K(b - m, Cx(0), z, Cx(Real(b)));
    }

    // Partial Eisenstein summation over |m|, |n| <= R, valid for Re(s) > a/2 + 1.
    Cx direct_sum(int a, const Cx& z0, const Cx& w0, const Cx& s, int R) const {
        if (s.re <= Real(a) / 2 + 1) throw DomainError("direct summation needs Re(s) > a/2 + 1");
        Cx r(0);
        Real ztol = L_.min_period() * Real("1e-30");
        for (long m = -R; m <= R; ++m)
            for (long n = -R; n <= R; ++n) {
                Cx g = L_.lattice_point(m, n), u = z0 + g;
                if (abs(u) < ztol) continue;
                r += L_.pairing(g, w0) * pow(conj(u), a) * exp(-s * Cx(log(norm2(u))));
            }
        return r;
    }

private:
    // I_a(z0, w0, s) = sum*_g <g, w0> conj(z0 + g)^a int_1^oo exp(-t|z0 + g|^2/A) t^(s-1) dt,
    // summed shell by shell around the lattice point nearest to -z0.
    Cx theta_tail(int a, const Cx& z0, const Cx& w0, const Cx& s, Real& bound) const {
        long m0 = 0, n0 = 0;
        L_.reduce(z0, &m0, &n0);
        Real ztol = L_.min_period() * Real("1e-30");
        Cx sum(0);
        auto term = [&](long m, long n) -> Cx {
            Cx g = L_.lattice_point(m - m0, n - n0), u = z0 + g;
            if (abs(u) < ztol) return Cx(0);
            Real x = norm2(u) / L_.A();
            return L_.pairing(g, w0) * pow(conj(u), a) * upper_gamma_tail(s, x);
        };
        sum += term(0, 0);
        for (int R = 1; R <= max_shell_; ++R) {
            Real shell_max = 0;
            for (long m = -R; m <= R; ++m)
                for (long n = -R; n <= R; ++n) {
                    if (std::max(std::labs(m), std::labs(n)) != R) continue;
                    Cx t = term(m, n);
                    shell_max = std::max(shell_max, abs(t));
                    sum += t;
                }
            if (R >= 2 && shell_max < tol_ * (1 + abs(sum)) / Real(8 * R + 8)) {
                bound = shell_max * Real(8 * R + 8);
                return sum;
            }
        }
        throw ConvergenceBudget("lattice sum did not converge within the shell cap");
    }

    const LatticeData& L_;
    int digits_;
    int max_shell_;
    Real tol_;
};

}  // namespace ekpoly
