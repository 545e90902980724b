#pragma once

#include <ekpoly/formalgroup.hpp>
#include <ekpoly/kronecker.hpp>

namespace ekpoly {

// wp(z + z0), wp'(z + z0) and F_{z0,1}(z) on the residue disc at the
// origin, written in the formal parameter s (z = lambda(s)).
struct DiscBasis {
    XSeries wp, dwp, F1;
    int order = 0;
};

inline DiscBasis disc_basis(const FormalGroupData& fg, const Point& z0, const ExactScalar& seed, int M) {
    if (z0.inf) throw DomainError("disc expansions need z0 outside the lattice");
    if (M + 2 > fg.order) throw PrecisionError("formal group built below the requested disc order");
    const CurveData& c = fg.curve;
    XSeries x = fg.x, y = fg.y;
    XSeries x0 = XSeries::constant(z0.x, kExactOrder, "s"), y0 = XSeries::constant(z0.y, kExactOrder, "s");
    XSeries lam = (y - y0) * (x - x0).inverse(fg.order + 4);
    XSeries X = lam * lam * ExactScalar::rational(1, 4) - x - x0;
    XSeries Y = -(y + lam * (X - x));
    DiscBasis d;
    d.order = M;
    d.wp = X.truncated(M);
    d.dwp = Y.truncated(M);
    if (d.wp.order() < M || d.dwp.order() < M) throw PrecisionError("disc expansion lost truncation order");
    XSeries integrand = (-X - XSeries::constant(c.e2star, kExactOrder, "s")) * fg.dlambda;
    d.F1 = (integrand.antiderivative() + XSeries::constant(seed, kExactOrder, "s")).truncated(M);
    return d;
}

// F_{z0,b}(lambda(s)) = sum_{n <= b} F1^(b-n)/(b-n)! L_n(z + z0) over K.
inline XSeries fhat_exact(const ConnectionTable& table, const DiscBasis& d, int b) {
    if (b < 0 || b > table.nmax()) throw DomainError("b outside the connection table");
    std::vector<XSeries> Ls;
    for (int n = 0; n <= b; ++n) Ls.push_back(table.L(n).expand(d.wp, d.dwp).with_var("s"));
    return detail::exp_combination(d.F1, Ls, b).truncated(d.order).with_var("s");
}

// c_{b+1} = (1/b!) lim d^b/dz^b (1/z - 1/exp_law(z)): the z^b coefficient.
inline ExactScalar star_constant(const FormalGroupData& fg, int b) {
    if (b + 2 > fg.order) throw PrecisionError("formal group too short for c_{b+1}");
    XSeries e = fg.exp_law.truncated(b + 3);
    XSeries r = XSeries::monomial(ExactScalar(1), -1, kExactOrder, "z") - e.inverse(b + 1);
    return r.at(b);
}

}  // namespace ekpoly
