#pragma once

#include <ekpoly/exactnum/field.hpp>

#include <cmath>
#include <sstream>

namespace ekpoly {

// Element of Q, Q(sqrt(-d)) or Q(sqrt(-d))(theta); coordinates in the power
// basis 1, theta, ..., theta^(e-1) over Q(sqrt(-d)).
class ExactScalar {
public:
    ExactScalar() : F_(NumberField::rationals()), c_(1) {}
    ExactScalar(long v) : F_(NumberField::rationals()), c_{Quad(v)} {}
    ExactScalar(const mpq_class& q) : F_(NumberField::rationals()), c_{Quad(q)} {}
    ExactScalar(FieldPtr F, std::vector<Quad> c) : F_(std::move(F)), c_(std::move(c)) {
        c_.resize(F_->rel_degree());
        if (F_->d() == 0)
            for (auto& q : c_)
                if (sgn(q.im) != 0) throw FieldError("imaginary part in Q");
    }

    static ExactScalar rational(long num, long den = 1) { return ExactScalar(canon(num, den)); }
    static ExactScalar quad(long d, const mpq_class& re, const mpq_class& im) {
        return ExactScalar(NumberField::quadratic(d), {Quad(re, im)});
    }
    static ExactScalar sqrt_minus(long d) { return quad(d, 0, 1); }
    static ExactScalar generator(FieldPtr F) {
        std::vector<Quad> c(F->rel_degree());
        if (F->rel_degree() < 2) throw FieldError("field has no tower generator");
        c[1] = Quad(1);
        return ExactScalar(F, c);
    }

    const FieldPtr& field() const { return F_; }
    const std::vector<Quad>& coords() const { return c_; }
    long d() const { return F_->d(); }

    bool is_zero() const {
        for (const auto& q : c_)
            if (!q.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (sgn(c_[i].im) != 0 || (i > 0 && sgn(c_[i].re) != 0)) return false;
        return true;
    }
    bool in_base() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    mpq_class rational_value() const {
        if (!is_rational()) throw FieldError("not rational");
        return c_[0].re;
    }
    Quad base_value() const {
        if (!in_base()) throw FieldError("not in the quadratic base field");
        return c_[0];
    }

    // Lift into a field containing this one.
    ExactScalar lift(const FieldPtr& G) const {
        if (F_->same(*G)) return *this;
        if (F_->is_tower()) throw FieldError("cannot move between towers " + F_->tag() + " -> " + G->tag());
        if (F_->d() != 0 && F_->d() != G->d()) throw FieldError("incompatible quadratic fields");
        std::vector<Quad> c(G->rel_degree());
        c[0] = c_[0];
        return ExactScalar(G, c);
    }

    static FieldPtr join(const FieldPtr& a, const FieldPtr& b) {
        if (a->same(*b)) return a;
        if (a->d() == 0 && !a->is_tower()) return b;
        if (b->d() == 0 && !b->is_tower()) return a;
        if (a->d() != b->d()) throw FieldError("incompatible fields " + a->tag() + " and " + b->tag());
        if (!a->is_tower()) return b;
        if (!b->is_tower()) return a;
        throw FieldError("incompatible towers " + a->tag() + " and " + b->tag());
    }

    friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
        FieldPtr G = join(x.F_, y.F_);
        ExactScalar a = x.lift(G), b = y.lift(G);
        for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = quad::add(a.c_[i], b.c_[i]);
        return a;
    }
    friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
        FieldPtr G = join(x.F_, y.F_);
        ExactScalar a = x.lift(G), b = y.lift(G);
        for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = quad::sub(a.c_[i], b.c_[i]);
        return a;
    }
    friend ExactScalar operator-(const ExactScalar& x) {
        ExactScalar a = x;
        for (auto& q : a.c_) q = quad::neg(q);
        return a;
    }
    friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
        FieldPtr G = join(x.F_, y.F_);
        long d = G->d();
        if (x.c_.size() == 1 && y.c_.size() == 1 && !G->is_tower())
            return ExactScalar(G, {quad::mul(x.c_[0], y.c_[0], d)});
        ExactScalar a = x.lift(G), b = y.lift(G);
        int e = G->rel_degree();
        std::vector<Quad> prod(2 * e - 1);
        for (int i = 0; i < e; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (int j = 0; j < e; ++j) {
                if (b.c_[j].is_zero()) continue;
                prod[i + j] = quad::add(prod[i + j], quad::mul(a.c_[i], b.c_[j], d));
            }
        }
        const auto& mp = G->minpoly();
        for (int k = 2 * e - 2; k >= e; --k) {
            if (prod[k].is_zero()) continue;
            Quad t = prod[k];
            for (int i = 0; i < e; ++i) prod[k - e + i] = quad::sub(prod[k - e + i], quad::mul(t, mp[i], d));
            prod[k] = Quad();
        }
        prod.resize(e);
        return ExactScalar(G, prod);
    }
    ExactScalar inverse() const {
        if (is_zero()) throw DomainError("division by zero");
        long d = F_->d();
        int e = F_->rel_degree();
        if (e == 1) return ExactScalar(F_, {quad::inv(c_[0], d)});
        // Solve (x * y = 1) with the multiplication matrix over K.
        std::vector<std::vector<Quad>> M(e, std::vector<Quad>(e + 1));
        ExactScalar col = *this;
        ExactScalar th = generator(F_);
        for (int j = 0; j < e; ++j) {
            for (int i = 0; i < e; ++i) M[i][j] = col.c_[i];
            col = col * th;
        }
        M[0][e] = Quad(1);
        for (int c = 0; c < e; ++c) {
            int piv = c;
            while (piv < e && M[piv][c].is_zero()) ++piv;
            if (piv == e) throw FieldError("singular multiplication matrix (reducible minimal polynomial?)");
            std::swap(M[piv], M[c]);
            Quad iv = quad::inv(M[c][c], d);
            for (int k = c; k <= e; ++k) M[c][k] = quad::mul(M[c][k], iv, d);
            for (int r = 0; r < e; ++r) {
                if (r == c || M[r][c].is_zero()) continue;
                Quad f = M[r][c];
                for (int k = c; k <= e; ++k) M[r][k] = quad::sub(M[r][k], quad::mul(f, M[c][k], d));
            }
        }
        std::vector<Quad> y(e);
        for (int i = 0; i < e; ++i) y[i] = M[i][e];
        return ExactScalar(F_, y);
    }
    friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) { return x * y.inverse(); }

    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

    friend bool operator==(const ExactScalar& x, const ExactScalar& y) { return (x - y).is_zero(); }
    friend bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }

    ExactScalar pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        ExactScalar r = ExactScalar(1).lift(F_), b = *this;
        while (n) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    // Complex conjugation on K (coordinatewise; only meaningful off towers).
    ExactScalar conj() const {
        if (F_->is_tower()) throw FieldError("conjugation of tower elements is not defined");
        return ExactScalar(F_, {quad::conj(c_[0])});
    }

    std::string to_string() const {
        long d = F_->d();
        if (c_.size() == 1) return quad::to_string(c_[0], d);
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            std::string t = quad::to_string(c_[i], d);
            if (sgn(c_[i].im) != 0 && sgn(c_[i].re) != 0) t = "(" + t + ")";
            std::string mono = i == 0 ? "" : (i == 1 ? F_->gen_name() : F_->gen_name() + "^" + std::to_string(i));
            std::string term;
            if (i == 0) term = t;
            else if (t == "1") term = mono;
            else if (t == "-1") term = "-" + mono;
            else term = t + "*" + mono;
            if (!out.empty() && term[0] != '-') out += "+";
            out += term;
        }
        return out.empty() ? "0" : out;
    }

    // Numerator/denominator decimal strings per coordinate.
    std::string serialize() const {
        std::string s = F_->tag() + ":";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ";";
            s += c_[i].re.get_str();
            if (F_->d() != 0) s += "," + c_[i].im.get_str();
        }
        return s;
    }

    // Inverse of serialize; F must carry the recorded tag.
    static ExactScalar deserialize(const std::string& s, const FieldPtr& F) {
        auto colon = s.rfind(':');
        if (colon == std::string::npos || s.substr(0, colon) != F->tag())
            throw FieldError("serialized scalar does not belong to " + F->tag());
        std::vector<Quad> c;
        std::stringstream in(s.substr(colon + 1));
        std::string part;
        while (std::getline(in, part, ';')) {
            auto comma = part.find(',');
            Quad q(mpq_class(part.substr(0, comma)));
            if (comma != std::string::npos) q.im = mpq_class(part.substr(comma + 1));
            q.re.canonicalize();
            q.im.canonicalize();
            c.push_back(q);
        }
        if (int(c.size()) != F->rel_degree()) throw FieldError("wrong number of coordinates");
        return ExactScalar(F, c);
    }

    Complex<VarReal> embed(int digits) const {
        PrecisionScope scope(digits + 10);
        long d = F_->d();
        Complex<VarReal> r(VarReal(0), VarReal(0));
        if (!F_->is_tower()) return embed_quad(c_[0], d);
        Complex<VarReal> th = F_->complex_root(digits + 5);
        Complex<VarReal> pw(VarReal(1), VarReal(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            r += embed_quad(c_[i], d) * pw;
            pw *= th;
        }
        return r;
    }

private:
    static mpq_class canon(long n, long d) {
        mpq_class q(n, d);
        q.canonicalize();
        return q;
    }

    FieldPtr F_;
    std::vector<Quad> c_;
};

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.to_string(); }

// embed_complex: value at about `digits` decimal digits (sqrt(-d) -> +i sqrt(d)).
inline Complex<VarReal> embed_complex(const ExactScalar& x, int digits = 30) { return x.embed(digits); }

inline Cx to_cx(const ExactScalar& x) {
    auto v = x.embed(60);
    return Cx(Real(v.re), Real(v.im));
}

namespace detail {

inline bool reconstruct_rational(double v, mpq_class& out) {
    // continued fractions with bounded denominator
    double x = v;
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 40; ++it) {
        double a = std::floor(x);
        mpz_class ai(static_cast<long>(a));
        mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        if (k1 > 1000000) return false;
        double approx = h1.get_d() / k1.get_d();
        if (std::abs(approx - v) < 1e-9 * std::max(1.0, std::abs(v))) {
            out = mpq_class(h1, k1);
            out.canonicalize();
            return true;
        }
        double frac = x - a;
        if (frac == 0) return false;
        x = 1 / frac;
    }
    return false;
}

inline bool reconstruct_quad(std::complex<double> z, long d, Quad& out) {
    mpq_class re, im;
    if (!reconstruct_rational(z.real(), re)) return false;
    double y = d == 0 ? z.imag() : z.imag() / std::sqrt(double(d));
    if (std::abs(y) < 1e-12) im = 0;
    else if (d == 0 || !reconstruct_rational(y, im)) return false;
    out = Quad(re, im);
    return true;
}

inline std::vector<Quad> poly_divmod_quad(std::vector<Quad> a, const std::vector<Quad>& b, long d) {
    // returns remainder of a by monic b
    int db = int(b.size()) - 1;
    for (int k = int(a.size()) - 1; k >= db; --k) {
        Quad t = a[k];
        if (t.is_zero()) continue;
        for (int i = 0; i <= db; ++i) a[k - db + i] = quad::sub(a[k - db + i], quad::mul(t, b[i], d));
    }
    a.resize(std::max(0, db));
    return a;
}

}  // namespace detail

inline FieldPtr NumberField::extension(long d, std::vector<Quad> minpoly, std::string name, std::complex<double> root_hint) {
    int e = int(minpoly.size()) - 1;
    if (e < 2) throw FieldError("extension needs a minimal polynomial of degree >= 2");
    if (!(minpoly.back() == Quad(1))) throw FieldError("minimal polynomial must be monic");
    if ((d == 0 ? 1 : 2) * e > 8) throw TowerTooDeep("tower degree exceeds 8");
    if (e > 4) throw FieldError("relative degree above 4 is not supported");
    if (d == 0)
        for (auto& q : minpoly)
            if (sgn(q.im) != 0) throw FieldError("coefficient outside Q");
    if (e == 2) {
        Quad disc = quad::sub(quad::mul(minpoly[1], minpoly[1], d), quad::mul(Quad(4), minpoly[0], d));
        Quad r;
        if (quad::sqrt_in_field(disc, d, r)) throw FieldError("minimal polynomial is reducible");
    } else {
        std::vector<std::complex<double>> cd;
        for (auto& q : minpoly) {
            double im = d == 0 ? 0.0 : q.im.get_d() * std::sqrt(double(d));
            cd.emplace_back(q.re.get_d(), im);
        }
        auto roots = detail::approx_roots(cd);
        for (auto r : roots) {
            Quad c;
            if (!detail::reconstruct_quad(r, d, c)) continue;
            std::vector<Quad> lin{quad::neg(c), Quad(1)};
            auto rem = detail::poly_divmod_quad(minpoly, lin, d);
            if (rem[0].is_zero()) throw FieldError("minimal polynomial has a root in the base field");
        }
        if (e == 4) {
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    Quad s, p;
                    if (!detail::reconstruct_quad(-(roots[i] + roots[j]), d, s)) continue;
                    if (!detail::reconstruct_quad(roots[i] * roots[j], d, p)) continue;
                    auto rem = detail::poly_divmod_quad(minpoly, {p, s, Quad(1)}, d);
                    if (rem[0].is_zero() && rem[1].is_zero())
                        throw FieldError("minimal polynomial has a quadratic factor");
                }
        }
    }
    return std::shared_ptr<const NumberField>(new NumberField(d, std::move(minpoly), std::move(name), root_hint));
}

}  // namespace ekpoly
