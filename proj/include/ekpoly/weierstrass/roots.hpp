#pragma once

#include <ekpoly/weierstrass/poly.hpp>

#include <complex>

namespace ekpoly {

namespace detail {

using CV = Complex<VarReal>;

// Continued-fraction reconstruction of a rational from a high-precision real.
inline bool reconstruct_rational(const VarReal& v, mpq_class& out, const VarReal& tol) {
    VarReal x = v;
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 80; ++it) {
        VarReal a = floor(x);
        mpz_class ai;
        mpfr_get_z(ai.get_mpz_t(), a.backend().data(), MPFR_RNDN);
        mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        mpq_class q(h1, k1);
        q.canonicalize();
        if (abs(to_var_real(q) - v) < tol) {
            out = q;
            return true;
        }
        if (k1 > mpz_class("1000000000000000000")) return false;
        VarReal frac = x - a;
        if (frac == 0) return false;
        x = 1 / frac;
    }
    return false;
}

// Element of K from a complex approximation.
inline bool reconstruct_quad(const CV& z, long d, Quad& out, const VarReal& tol) {
    mpq_class re, im = 0;
    if (!reconstruct_rational(z.re, re, tol)) return false;
    if (d == 0) {
        if (abs(z.im) > tol) return false;
        out = Quad(re);
        return true;
    }
    if (!reconstruct_rational(z.im / sqrt(VarReal(d)), im, tol)) return false;
    out = Quad(re, im);
    return true;
}

inline CV embed_at(const ExactScalar& x, const CV& theta) {
    long d = x.d();
    CV r(VarReal(0), VarReal(0)), pw(VarReal(1), VarReal(0));
    for (const auto& q : x.coords()) {
        r += embed_quad(q, d) * pw;
        pw *= theta;
    }
    return r;
}

// All complex roots of sum c_i x^i, polished by Newton at the current precision.
inline std::vector<CV> complex_roots(const std::vector<CV>& c) {
    int n = int(c.size()) - 1;
    std::vector<std::complex<double>> cd;
    for (const auto& q : c) cd.emplace_back(q.re.convert_to<double>(), q.im.convert_to<double>());
    auto approx = approx_roots(cd);
    std::vector<CV> out;
    VarReal eps = pow(VarReal(10), -int(VarReal::default_precision()) + 8);
    for (auto r0 : approx) {
        CV z(VarReal(r0.real()), VarReal(r0.imag()));
        for (int it = 0; it < 200; ++it) {
            CV f = c[n], fp(VarReal(0), VarReal(0));
            for (int i = n - 1; i >= 0; --i) {
                fp = fp * z + f;
                f = f * z + c[i];
            }
            if (abs(fp) == 0) break;
            CV step = f / fp;
            z -= step;
            if (abs(step) < eps * (1 + abs(z))) break;
        }
        out.push_back(z);
    }
    return out;
}

inline std::vector<CV> all_generator_roots(const FieldPtr& F) {
    std::vector<CV> c;
    for (const auto& q : F->minpoly()) c.push_back(embed_quad(q, F->d()));
    auto rts = complex_roots(c);
    CV th = F->complex_root(int(VarReal::default_precision()) - 10);
    std::sort(rts.begin(), rts.end(), [&](const CV& a, const CV& b) { return abs(a - th) < abs(b - th); });
    return rts;
}

}  // namespace detail

// Roots of g lying in F (g's coefficients in F or a subfield), each verified
// exactly.  Roots are found numerically under every embedding of F over K and
// the K-coordinates are recovered by interpolation.
inline std::vector<ExactScalar> roots_in_field(const Poly& g, const FieldPtr& F) {
    std::vector<ExactScalar> out;
    if (g.degree() < 1) return out;
    Poly h = g / Poly::gcd(g, g.derivative());
    if (h.degree() == 1) {
        ExactScalar r = -h[0] / h[1];
        out.push_back(r);
        return out;
    }
    PrecisionScope ps(60);
    VarReal tol = pow(VarReal(10), -40);
    long d = F->d();
    auto keep = [&](const ExactScalar& r) {
        if (!h.eval(r).is_zero()) return;
        for (const auto& o : out)
            if (o == r) return;
        out.push_back(r);
    };
    if (!F->is_tower()) {
        std::vector<detail::CV> c;
        for (const auto& a : h.coeffs()) c.push_back(detail::embed_at(a, detail::CV(VarReal(0), VarReal(0))));
        for (const auto& z : detail::complex_roots(c)) {
            Quad q;
            if (detail::reconstruct_quad(z, d, q, tol)) keep(ExactScalar(F, {q}));
        }
        return out;
    }
    int e = F->rel_degree();
    auto thetas = detail::all_generator_roots(F);
    std::vector<std::vector<detail::CV>> R(e);
    for (int j = 0; j < e; ++j) {
        std::vector<detail::CV> c;
        for (const auto& a : h.coeffs()) c.push_back(detail::embed_at(a, thetas[j]));
        R[j] = detail::complex_roots(c);
    }
    std::vector<size_t> idx(e, 0);
    for (size_t i0 = 0; i0 < R[0].size(); ++i0) {
        size_t before = out.size();
        std::fill(idx.begin(), idx.end(), 0);
        idx[0] = i0;
        while (out.size() == before) {
            // solve sum_k c_k theta_j^k = root_j
            std::vector<std::vector<detail::CV>> A(e, std::vector<detail::CV>(e + 1));
            for (int j = 0; j < e; ++j) {
                detail::CV pw(VarReal(1), VarReal(0));
                for (int k = 0; k < e; ++k) {
                    A[j][k] = pw;
                    pw *= thetas[j];
                }
                A[j][e] = R[j][idx[j]];
            }
            for (int col = 0; col < e; ++col) {
                int piv = col;
                for (int r = col + 1; r < e; ++r)
                    if (abs(A[r][col]) > abs(A[piv][col])) piv = r;
                std::swap(A[col], A[piv]);
                for (int r = 0; r < e; ++r) {
                    if (r == col) continue;
                    detail::CV f = A[r][col] / A[col][col];
                    for (int k = col; k <= e; ++k) A[r][k] -= f * A[col][k];
                }
            }
            std::vector<Quad> co(e);
            bool ok = true;
            for (int k = 0; k < e && ok; ++k) ok = detail::reconstruct_quad(A[k][e] / A[k][k], d, co[k], tol);
            if (ok) keep(ExactScalar(F, co));
            int j = 1;
            while (j < e && ++idx[j] == R[j].size()) idx[j++] = 0;
            if (j == e) break;
        }
    }
    return out;
}

}  // namespace ekpoly
