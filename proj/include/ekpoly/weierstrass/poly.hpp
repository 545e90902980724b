#pragma once

#include <ekpoly/series/series.hpp>

#include <utility>
#include <vector>

namespace ekpoly {

// Dense univariate polynomial over ExactScalar, coefficients low to high.
class Poly {
public:
    Poly() = default;
    Poly(ExactScalar c) : c_{std::move(c)} { trim(); }
    explicit Poly(std::vector<ExactScalar> c) : c_(std::move(c)) { trim(); }

    static Poly x() { return Poly({ExactScalar(0), ExactScalar(1)}); }
    static Poly monomial(const ExactScalar& a, int n) {
        std::vector<ExactScalar> c(n + 1, ExactScalar(0));
        c[n] = a;
        return Poly(std::move(c));
    }

    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<ExactScalar>& coeffs() const { return c_; }
    ExactScalar operator[](int i) const { return i >= 0 && i < int(c_.size()) ? c_[i] : ExactScalar(0); }
    ExactScalar lead() const { return c_.empty() ? ExactScalar(0) : c_.back(); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<ExactScalar> c(std::max(a.c_.size(), b.c_.size()), ExactScalar(0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<ExactScalar> c(a.c_.size() + b.c_.size() - 1, ExactScalar(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                if (!b.c_[j].is_zero()) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const ExactScalar& s) {
        Poly r = a;
        for (auto& x : r.c_) x = x * s;
        r.trim();
        return r;
    }
    friend Poly operator*(const ExactScalar& s, const Poly& a) { return a * s; }
    friend bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int n) const {
        Poly r(ExactScalar(1)), b = *this;
        while (n) {
            if (n & 1) r = r * b;
            n >>= 1;
            if (n) b = b * b;
        }
        return r;
    }

    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        std::vector<ExactScalar> r = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {Poly(), a};
        std::vector<ExactScalar> q(a.degree() - db + 1, ExactScalar(0));
        ExactScalar li = b.lead().inverse();
        for (int k = a.degree(); k >= db; --k) {
            if (r[k].is_zero()) continue;
            ExactScalar t = r[k] * li;
            q[k - db] = t;
            for (int i = 0; i <= db; ++i) r[k - db + i] = r[k - db + i] - t * b.c_[i];
        }
        r.resize(db);
        return {Poly(std::move(q)), Poly(std::move(r))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * lead().inverse();
    }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<ExactScalar> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * ExactScalar(long(i));
        return Poly(std::move(c));
    }

    ExactScalar eval(const ExactScalar& x) const {
        ExactScalar r(0);
        for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
        return r;
    }

    // p(f) for a series f (Horner).
    template <class T>
    TruncSeries<T> eval_series(const TruncSeries<T>& f, const std::function<T(const ExactScalar&)>& conv) const {
        TruncSeries<T> r(f.context(), kExactOrder, f.var());
        for (int i = degree(); i >= 0; --i) {
            r = r * f;
            T ci = conv(c_[i]);
            if (!scalar_is_zero(ci)) r = r + TruncSeries<T>::constant(ci, kExactOrder, f.var());
        }
        return r;
    }
    TruncSeries<ExactScalar> eval_series(const TruncSeries<ExactScalar>& f) const {
        return eval_series<ExactScalar>(f, [](const ExactScalar& x) { return x; });
    }

    // p(q(x))
    Poly compose(const Poly& q) const {
        Poly r;
        for (int i = degree(); i >= 0; --i) r = r * q + Poly(c_[i]);
        return r;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i].is_zero()) continue;
            std::string c = c_[i].to_string();
            bool compound = c.find_first_of("+-", 1) != std::string::npos;
            std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
            std::string term;
            if (i == 0) term = compound ? "(" + c + ")" : c;
            else if (c == "1") term = mono;
            else if (c == "-1") term = "-" + mono;
            else term = (compound ? "(" + c + ")" : c) + "*" + mono;
            if (!s.empty()) s += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
            else s = term;
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<ExactScalar> c_;
};

// Reduced quotient num/den of polynomials.
struct RatFun {
    Poly num, den{ExactScalar(1)};

    RatFun() = default;
    RatFun(Poly n) : num(std::move(n)) {}
    RatFun(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    void reduce() {
        if (den.is_zero()) throw DomainError("rational function with zero denominator");
        if (num.is_zero()) {
            den = Poly(ExactScalar(1));
            return;
        }
        Poly g = Poly::gcd(num, den);
        if (g.degree() > 0) {
            num = num / g;
            den = den / g;
        }
        ExactScalar l = den.lead().inverse();
        num = num * l;
        den = den * l;
    }
    bool is_zero() const { return num.is_zero(); }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        if (a.den == b.den) return RatFun(a.num + b.num, a.den);
        return RatFun(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFun operator-(const RatFun& a) { return RatFun(-a.num, a.den); }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num * b.num, a.den * b.den); }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw DomainError("division by the zero rational function");
        return RatFun(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const RatFun& a, const RatFun& b) { return (a.num * b.den - b.num * a.den).is_zero(); }

    ExactScalar eval(const ExactScalar& x) const {
        ExactScalar d = den.eval(x);
        if (d.is_zero()) throw PoleError("rational function has a pole at the evaluation point");
        return num.eval(x) / d;
    }

    std::string to_string(const std::string& var = "x") const {
        if (den.degree() == 0) return num.to_string(var);
        return "(" + num.to_string(var) + ")/(" + den.to_string(var) + ")";
    }
};

}  // namespace ekpoly
