#pragma once

#include <ekpoly/errors.hpp>
#include <ekpoly/numeric/complex.hpp>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

#include <vector>

namespace ekpoly {

inline Real real_pi() { return boost::math::constants::pi<Real>(); }

inline Real eps_real() { return std::numeric_limits<Real>::epsilon(); }

inline bool is_nonpositive_integer(const Cx& s) {
    if (s.im != 0 || s.re > 0) return false;
    return s.re == floor(s.re);
}

// log Gamma(z) by Stirling's series, Re z large.
inline Cx lgamma_stirling(const Cx& z) {
    static const std::vector<Real> B = [] {
        std::vector<Real> b;
        for (int k = 1; k <= 30; ++k) b.push_back(boost::math::bernoulli_b2n<Real>(k));
        return b;
    }();
    Real half_log_2pi = log(2 * real_pi()) / 2;
    Cx r = (z - Cx(Real(0.5))) * log(z) - z + Cx(half_log_2pi);
    Cx iz = Cx(1) / z, iz2 = iz * iz, pw = iz;
    for (int k = 1; k <= 30; ++k) {
        Cx t = pw * (B[k - 1] / Real(2 * k * (2 * k - 1)));
        r += t;
        if (abs(t) < eps_real() * abs(r)) break;
        pw *= iz2;
    }
    return r;
}

// 1/Gamma(s), entire: zero at s = 0, -1, -2, ...
inline Cx rgamma(const Cx& s) {
    const int N = 48;
    int shift = s.re >= N ? 0 : int(ceil(Real(N - s.re)).convert_to<long>());
    Cx prod(1);
    for (int k = 0; k < shift; ++k) prod *= s + Cx(Real(k));
    return prod * exp(-lgamma_stirling(s + Cx(Real(shift))));
}

inline Cx cgamma(const Cx& s) {
    if (is_nonpositive_integer(s)) throw PoleError("Gamma has a pole at a non-positive integer");
    return Cx(1) / rgamma(s);
}

// J(s, x) = int_1^oo exp(-x t) t^(s-1) dt = x^-s Gamma(s, x) for x > 0.
inline Cx upper_gamma_tail(const Cx& s, const Real& x) {
    if (x <= 0) throw DomainError("upper_gamma_tail needs x > 0");
    if (x >= Real(0.5)) {
        // Legendre continued fraction, modified Lentz:
        // Gamma(s,x) = e^-x x^s / (x + 1 - s - 1(1-s)/(x + 3 - s - 2(2-s)/(x + 5 - s - ...)))
        const Real tiny("1e-300");
        Cx b = Cx(x + 1) - s;
        Cx f = b;
        if (abs(f) < tiny) f = Cx(tiny);
        Cx C = f, D(0);
        for (int n = 1; n < 20000; ++n) {
            Cx an = -(Cx(Real(n)) * (Cx(Real(n)) - s));
            b += Cx(Real(2));
            D = b + an * D;
            if (abs(D) < tiny) D = Cx(tiny);
            C = b + an / C;
            if (abs(C) < tiny) C = Cx(tiny);
            D = Cx(1) / D;
            Cx delta = C * D;
            f *= delta;
            if (abs(delta - Cx(1)) < eps_real() * 4) return exp(Cx(-x)) / f;
        }
        throw ConvergenceBudget("incomplete gamma continued fraction did not converge");
    }
    boost::math::quadrature::exp_sinh<Real> q;
    Cx sm1 = s - Cx(1);
    auto part = [&](bool im) {
        return q.integrate([&](const Real& u) {
            Real t = u + 1;
            Cx v = exp(sm1 * Cx(log(t)) - Cx(x * t));
            return im ? v.im : v.re;
        });
    };
    return {part(false), part(true)};
}

}  // namespace ekpoly
