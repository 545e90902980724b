#pragma once

#include <ekpoly/errors.hpp>
#include <ekpoly/numeric/complex.hpp>

#include <gmpxx.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace ekpoly {

// a + b*sqrt(-d); d is carried by the owning field.
struct Quad {
    mpq_class re{0};
    mpq_class im{0};

    Quad() = default;
    Quad(mpq_class r) : re(std::move(r)) {}
    Quad(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    Quad(long r) : re(r) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    friend bool operator==(const Quad& a, const Quad& b) { return a.re == b.re && a.im == b.im; }
};

namespace quad {

inline Quad add(const Quad& a, const Quad& b) { return {a.re + b.re, a.im + b.im}; }
inline Quad sub(const Quad& a, const Quad& b) { return {a.re - b.re, a.im - b.im}; }
inline Quad neg(const Quad& a) { return {-a.re, -a.im}; }
inline Quad mul(const Quad& a, const Quad& b, long d) {
    return {a.re * b.re - d * (a.im * b.im), a.re * b.im + a.im * b.re};
}
inline Quad conj(const Quad& a) { return {a.re, -a.im}; }
inline mpq_class norm(const Quad& a, long d) { return a.re * a.re + d * (a.im * a.im); }
inline Quad inv(const Quad& a, long d) {
    if (a.is_zero()) throw DomainError("division by zero");
    mpq_class n = norm(a, d);
    return {a.re / n, -a.im / n};
}

inline bool rational_sqrt(const mpq_class& q, mpq_class& out) {
    if (sgn(q) < 0) return false;
    mpz_class n = q.get_num(), m = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(m.get_mpz_t())) return false;
    mpz_class rn, rm;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rm.get_mpz_t(), m.get_mpz_t());
    out = mpq_class(rn, rm);
    out.canonicalize();
    return true;
}

// Square root inside Q(sqrt(-d)) if one exists.
inline bool sqrt_in_field(const Quad& a, long d, Quad& out) {
    if (a.is_zero()) { out = Quad(); return true; }
    if (d == 0) {
        if (sgn(a.im) != 0) return false;
        mpq_class r;
        if (!rational_sqrt(a.re, r)) return false;
        out = Quad(r);
        return true;
    }
    // (p + q sqrt(-d))^2 = p^2 - d q^2 + 2pq sqrt(-d)
    mpq_class n;
    if (!rational_sqrt(norm(a, d), n)) return false;
    for (int s : {1, -1}) {
        mpq_class p2 = (a.re + s * n) / 2;
        mpq_class p;
        if (!rational_sqrt(p2, p)) continue;
        if (sgn(p) == 0) {
            // a = -d q^2
            mpq_class q;
            if (sgn(a.im) == 0 && rational_sqrt(-a.re / d, q)) { out = Quad(0, q); return true; }
            continue;
        }
        mpq_class q = a.im / (2 * p);
        Quad c{p, q};
        if (mul(c, c, d) == a) { out = c; return true; }
    }
    return false;
}

inline std::string rat_str(const mpq_class& q) { return q.get_str(); }

inline std::string to_string(const Quad& a, long d) {
    if (d == 0 || sgn(a.im) == 0) return rat_str(a.re);
    std::string unit = d == 1 ? "i" : "sqrt(-" + std::to_string(d) + ")";
    std::string im;
    if (a.im == 1) im = unit;
    else if (a.im == -1) im = "-" + unit;
    else im = rat_str(a.im) + "*" + unit;
    if (sgn(a.re) == 0) return im;
    return rat_str(a.re) + (im[0] == '-' ? "" : "+") + im;
}

}  // namespace quad

// Q (d == 0), K = Q(sqrt(-d)), or K(theta) with theta's monic minimal
// polynomial over K.  Total degree over Q is capped at 8.
class NumberField {
public:
    static std::shared_ptr<const NumberField> rationals() {
        static auto q = std::shared_ptr<const NumberField>(new NumberField(0, {}, "", {}));
        return q;
    }

    static std::shared_ptr<const NumberField> quadratic(long d) {
        if (d <= 0) throw FieldError("quadratic field needs d > 0");
        static std::mutex mu;
        static std::map<long, std::shared_ptr<const NumberField>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& f = cache[d];
        if (!f) f = std::shared_ptr<const NumberField>(new NumberField(d, {}, "", {}));
        return f;
    }

    // minpoly: monic, coefficients low to high.  root_hint selects the complex
    // root theta maps to (with sqrt(-d) -> +i sqrt(d)).
    static std::shared_ptr<const NumberField> extension(long d, std::vector<Quad> minpoly, std::string name,
                                                         std::complex<double> root_hint);

    long d() const { return d_; }
    int rel_degree() const { return minpoly_.empty() ? 1 : int(minpoly_.size()) - 1; }
    int degree() const { return (d_ == 0 ? 1 : 2) * rel_degree(); }
    bool is_tower() const { return !minpoly_.empty(); }
    const std::vector<Quad>& minpoly() const { return minpoly_; }
    const std::string& gen_name() const { return name_; }
    std::complex<double> root_hint() const { return hint_; }

    bool same(const NumberField& o) const {
        return d_ == o.d_ && minpoly_ == o.minpoly_;
    }

    std::string tag() const {
        if (d_ == 0) return "Q";
        std::string t = "K" + std::to_string(d_);
        if (!is_tower()) return t;
        t += "(" + name_ + ":";
        for (size_t i = 0; i < minpoly_.size(); ++i) {
            if (i) t += ",";
            t += quad::to_string(minpoly_[i], d_);
        }
        return t + ")";
    }

    // theta embedded in C with about `digits` correct digits.
    Complex<VarReal> complex_root(int digits) const;

private:
    NumberField(long d, std::vector<Quad> mp, std::string name, std::complex<double> hint)
        : d_(d), minpoly_(std::move(mp)), name_(std::move(name)), hint_(hint) {}

    long d_;
    std::vector<Quad> minpoly_;
    std::string name_;
    std::complex<double> hint_;
    mutable std::mutex mu_;
    mutable std::map<int, Complex<VarReal>> roots_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Temporarily change the default precision of VarReal.
class PrecisionScope {
public:
    explicit PrecisionScope(int digits) : saved_(VarReal::default_precision()) {
        VarReal::default_precision(digits);
    }
    ~PrecisionScope() { VarReal::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

inline VarReal to_var_real(const mpq_class& q) {
    VarReal r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

inline Complex<VarReal> embed_quad(const Quad& a, long d) {
    VarReal re = to_var_real(a.re);
    if (d == 0) return {re, VarReal(0)};
    VarReal sd = sqrt(VarReal(d));
    return {re, to_var_real(a.im) * sd};
}

namespace detail {

// All complex roots of a polynomial (double precision, Durand-Kerner).
inline std::vector<std::complex<double>> approx_roots(const std::vector<std::complex<double>>& c) {
    int n = int(c.size()) - 1;
    std::vector<std::complex<double>> a(c.size());
    for (size_t i = 0; i < c.size(); ++i) a[i] = c[i] / c[n];
    double bound = 1;
    for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::abs(a[i]));
    std::vector<std::complex<double>> z(n);
    for (int i = 0; i < n; ++i) z[i] = bound * std::polar(1.0, 0.4 + 6.283185307179586 * i / n);
    auto eval = [&](std::complex<double> x) {
        std::complex<double> r = 0;
        for (int i = n; i >= 0; --i) r = r * x + a[i];
        return r;
    };
    for (int it = 0; it < 2000; ++it) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            if (std::abs(den) == 0) den = 1e-30;
            std::complex<double> step = eval(z[i]) / den;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-15 * bound) break;
    }
    return z;
}

}  // namespace detail

inline Complex<VarReal> NumberField::complex_root(int digits) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = roots_.lower_bound(digits);
    if (it != roots_.end()) return it->second;
    PrecisionScope scope(digits + 10);
    int e = rel_degree();
    std::vector<Complex<VarReal>> c;
    for (const auto& q : minpoly_) c.push_back(embed_quad(q, d_));
    std::vector<std::complex<double>> cd;
    for (const auto& q : c) cd.emplace_back(q.re.convert_to<double>(), q.im.convert_to<double>());
    auto approx = detail::approx_roots(cd);
    std::complex<double> best = approx[0];
    for (auto r : approx)
        if (std::abs(r - hint_) < std::abs(best - hint_)) best = r;
    Complex<VarReal> z(VarReal(best.real()), VarReal(best.imag()));
    for (int it = 0; it < 200; ++it) {
        Complex<VarReal> f = c[e], fp(VarReal(0));
        for (int i = e - 1; i >= 0; --i) {
            fp = fp * z + f;
            f = f * z + c[i];
        }
        Complex<VarReal> step = f / fp;
        z -= step;
        if (abs(step) < pow(VarReal(10), -(digits + 5))) break;
    }
    roots_[digits] = z;
    return z;
}

}  // namespace ekpoly
