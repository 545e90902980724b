#pragma once

#include <ekpoly/series/scalar_traits.hpp>

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ekpoly {

// Truncation order of a series with no truncation (a polynomial).
inline constexpr int kExactOrder = INT_MAX / 4;

inline int ord_add(int a, int b) {
    if (a >= kExactOrder || b >= kExactOrder) return kExactOrder;
    return std::min(a + b, kExactOrder);
}

// Laurent series known modulo var^order.  Coefficients at exponents >= order
// are unknown; reading one throws.
template <class T>
class TruncSeries {
public:
    using Scalar = T;

    TruncSeries() = default;
    explicit TruncSeries(T ctx, int order = kExactOrder, std::string var = "z")
        : ctx_(scalar_zero(ctx)), order_(order), var_(std::move(var)) {}

    static TruncSeries monomial(const T& c, int e, int order = kExactOrder, std::string var = "z") {
        TruncSeries s(c, order, std::move(var));
        s.set(e, c);
        return s;
    }
    static TruncSeries constant(const T& c, int order = kExactOrder, std::string var = "z") {
        return monomial(c, 0, order, std::move(var));
    }
    static TruncSeries from_coeffs(const T& ctx, const std::vector<T>& c, int first, int order, std::string var = "z") {
        TruncSeries s(ctx, order, std::move(var));
        for (size_t i = 0; i < c.size(); ++i)
            if (first + int(i) < order) s.set(first + int(i), c[i]);
        return s;
    }

    int order() const { return order_; }
    bool is_exact() const { return order_ >= kExactOrder; }
    const std::string& var() const { return var_; }
    const std::map<int, T>& terms() const { return c_; }
    const T& context() const { return ctx_; }

    // Lowest stored exponent (order if nothing is stored).
    int floor() const { return c_.empty() ? order_ : c_.begin()->first; }
    int top() const { return c_.empty() ? order_ : c_.rbegin()->first; }

    T at(int e) const {
        if (e >= order_)
            throw UnknownCoefficient("coefficient of " + var_ + "^" + std::to_string(e) + " is beyond order " +
                                     std::to_string(order_));
        auto it = c_.find(e);
        return it == c_.end() ? scalar_zero(ctx_) : it->second;
    }
    T operator[](int e) const { return at(e); }

    void set(int e, const T& v) {
        if (e >= order_) return;
        if (scalar_is_zero(v)) c_.erase(e);
        else c_[e] = v;
    }
    void add_to(int e, const T& v) {
        if (e >= order_ || scalar_is_zero(v)) return;
        auto it = c_.find(e);
        if (it == c_.end()) c_.emplace(e, v);
        else {
            it->second = it->second + v;
            if (scalar_is_zero(it->second)) c_.erase(it);
        }
    }

    TruncSeries truncated(int M) const {
        TruncSeries r(ctx_, std::min(M, order_), var_);
        for (const auto& [e, v] : c_)
            if (e < r.order_) r.c_.emplace(e, v);
        return r;
    }
    TruncSeries with_var(std::string v) const {
        TruncSeries r = *this;
        r.var_ = std::move(v);
        return r;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r = a.truncated(std::min(a.order_, b.order_));
        for (const auto& [e, v] : b.c_) r.add_to(e, v);
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a) {
        TruncSeries r(a.ctx_, a.order_, a.var_);
        for (const auto& [e, v] : a.c_) r.c_.emplace(e, -v);
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

    friend TruncSeries operator*(const TruncSeries& a, const T& s) {
        TruncSeries r(a.ctx_, a.order_, a.var_);
        if (scalar_is_zero(s)) return r;
        for (const auto& [e, v] : a.c_) r.set(e, v * s);
        return r;
    }
    friend TruncSeries operator*(const T& s, const TruncSeries& a) { return a * s; }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul(a, b, kExactOrder); }

    // Product computed only below `cap` (result order is min(cap, rule)).
    static TruncSeries mul(const TruncSeries& a, const TruncSeries& b, int cap) {
        int fa = a.floor(), fb = b.floor();
        int ord = std::min({ord_add(a.order_, fb), ord_add(b.order_, fa), cap});
        TruncSeries r(a.ctx_, ord, a.var_);
        if (a.c_.empty() || b.c_.empty()) return r;
        int lo = fa + fb;
        int hi = std::min(ord, a.top() + b.top() + 1);
        if (hi <= lo) return r;
        std::vector<T> acc(hi - lo, scalar_zero(a.ctx_));
        std::vector<bool> used(hi - lo, false);
        for (const auto& [ea, va] : a.c_) {
            if (ea + fb >= hi) break;
            for (const auto& [eb, vb] : b.c_) {
                int e = ea + eb;
                if (e >= hi) break;
                if (used[e - lo]) acc[e - lo] = acc[e - lo] + va * vb;
                else {
                    acc[e - lo] = va * vb;
                    used[e - lo] = true;
                }
            }
        }
        for (int i = 0; i < hi - lo; ++i)
            if (used[i] && !scalar_is_zero(acc[i])) r.c_.emplace(lo + i, std::move(acc[i]));
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }
    TruncSeries& operator*=(const T& s) { return *this = *this * s; }

    // Multiply by var^k.
    TruncSeries shift(int k) const {
        TruncSeries r(ctx_, ord_add(order_, k), var_);
        for (const auto& [e, v] : c_) r.c_.emplace(e + k, v);
        return r;
    }

    // f(c * var)
    TruncSeries scale(const T& c) const {
        TruncSeries r(ctx_, order_, var_);
        if (c_.empty()) return r;
        T one = scalar_from_int(1, ctx_);
        bool neg = c_.begin()->first < 0;
        T cinv = neg ? one / c : one;
        for (const auto& [e, v] : c_) {
            T pw = one;
            if (e > 0) pw = pow_scalar(c, e);
            else if (e < 0) pw = pow_scalar(cinv, -e);
            r.set(e, v * pw);
        }
        return r;
    }

    TruncSeries inverse(int cap = kExactOrder) const {
        if (c_.empty()) throw DomainError("inverse of a series with no known nonzero term");
        int v = floor();
        const T& lead = c_.begin()->second;
        if (!scalar_invertible(lead)) throw PrecisionError("leading coefficient is not invertible at precision");
        int ord = order_ >= kExactOrder ? kExactOrder : order_ - 2 * v;
        ord = std::min(ord, cap);
        if (ord >= kExactOrder) throw DomainError("inverse of an exact series needs an explicit order");
        TruncSeries r(ctx_, ord, var_);
        int n = ord + v;  // number of coefficients b_0 .. b_{n-1} of 1/(z^-v f)
        if (n <= 0) return r;
        T li = scalar_from_int(1, ctx_) / lead;
        std::vector<T> a(n, scalar_zero(ctx_));
        for (const auto& [e, x] : c_)
            if (e - v < n) a[e - v] = x;
        std::vector<T> b(n, scalar_zero(ctx_));
        b[0] = li;
        for (int k = 1; k < n; ++k) {
            T s = scalar_zero(ctx_);
            for (int j = 1; j <= k; ++j)
                if (!scalar_is_zero(a[j])) s = s + a[j] * b[k - j];
            b[k] = -(s * li);
        }
        for (int k = 0; k < n; ++k) r.set(k - v, b[k]);
        return r;
    }

    friend TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) {
        int cap = kExactOrder;
        if (b.is_exact()) {
            if (a.is_exact()) throw DomainError("quotient of exact series needs an explicit order");
            cap = a.order_ - b.floor() - a.floor();
        }
        return a * b.inverse(cap);
    }

    TruncSeries derivative() const {
        TruncSeries r(ctx_, order_ >= kExactOrder ? kExactOrder : order_ - 1, var_);
        for (const auto& [e, v] : c_)
            if (e != 0) r.set(e - 1, v * scalar_from_int(e, ctx_));
        return r;
    }

    TruncSeries antiderivative() const {
        auto it = c_.find(-1);
        if (it != c_.end() && !residue_negligible(it->second)) throw ResidueError("nonzero residue: cannot integrate");
        TruncSeries r(ctx_, ord_add(order_, 1), var_);
        for (const auto& [e, v] : c_) {
            if (e == -1) continue;
            r.set(e + 1, v / scalar_from_int(e + 1, ctx_));
        }
        return r;
    }

    // f(g(var)); see compose() below for order rules.
    TruncSeries compose(const TruncSeries& g, int cap = kExactOrder) const;

    TruncSeries pow(long n, int cap = kExactOrder) const {
        if (n < 0) return inverse(cap).pow(-n, cap);
        TruncSeries r = constant(scalar_from_int(1, ctx_), kExactOrder, var_);
        TruncSeries b = *this;
        while (n) {
            if (n & 1) r = mul(r, b, cap);
            n >>= 1;
            if (n) b = mul(b, b, cap);
        }
        return r;
    }

    TruncSeries exp(int cap = kExactOrder) const;
    TruncSeries log() const;
    TruncSeries revert() const;

    // Coefficientwise equality below the smaller order (exact for exact
    // scalars; at precision for p-adic ones).
    bool agrees_with(const TruncSeries& o, int upto = kExactOrder) const {
        int M = std::min({order_, o.order_, upto});
        int lo = std::min(floor(), o.floor());
        for (int e = lo; e < M; ++e)
            if (!scalar_zero_at_prec(at(e) - o.at(e))) return false;
        return true;
    }

    // Canonical text: exp:coeff pairs sorted by exponent, then the order.
    std::string serialize() const {
        std::string s;
        for (const auto& [e, v] : c_) {
            if (!s.empty()) s += " ";
            s += std::to_string(e) + ":" + scalar_serialize(v);
        }
        s += " |order:" + (is_exact() ? std::string("exact") : std::to_string(order_));
        return s;
    }

    std::string to_string() const {
        std::string s;
        for (const auto& [e, v] : c_) {
            std::string c = scalar_serialize(v);
            if (!s.empty()) s += " + ";
            s += "(" + c + ")";
            if (e != 0) s += "*" + var_ + (e == 1 ? "" : "^" + std::to_string(e));
        }
        if (s.empty()) s = "0";
        if (!is_exact()) s += " + O(" + var_ + "^" + std::to_string(order_) + ")";
        return s;
    }

    // Minimal absolute precision among stored coefficients (p-adic use).
    int min_absprec(int upto = kExactOrder) const {
        int m = INT_MAX;
        for (const auto& [e, v] : c_)
            if (e < upto) m = std::min(m, scalar_absprec(v));
        return m;
    }

private:
    static T pow_scalar(T b, int n) {
        T r = scalar_from_int(1, b);
        while (n) {
            if (n & 1) r = r * b;
            n >>= 1;
            if (n) b = b * b;
        }
        return r;
    }
    static bool residue_negligible(const ExactScalar& x) { return x.is_zero(); }
    static bool residue_negligible(const PadicScalar& x) { return x.is_zero(); }
    static bool scalar_zero_at_prec(const ExactScalar& x) { return x.is_zero(); }
    static bool scalar_zero_at_prec(const PadicScalar& x) { return x.is_zero(); }

    T ctx_{};
    std::map<int, T> c_;
    int order_ = kExactOrder;
    std::string var_ = "z";
};

// Order of f(g): terms f_n g^n carry order(g) + (n-1)v(g) for n >= 1,
// order(g) - n - 1 for n < 0 (needs v(g) = 1), and the unknown tail of f
// starts at order(f)*v(g).
template <class T>
TruncSeries<T> TruncSeries<T>::compose(const TruncSeries& g, int cap) const {
    if (!g.c_.empty() && g.c_.begin()->first <= 0) {
        if (g.c_.begin()->first < 0) throw CompositionError("inner series has a principal part");
        if (!scalar_zero_at_prec(g.c_.begin()->second)) throw CompositionError("inner series has nonzero constant term");
    }
    TruncSeries g0 = g;
    g0.c_.erase(0);  // a constant that is zero at precision
    int vg = std::max(1, g0.floor());
    bool principal = !c_.empty() && c_.begin()->first < 0;
    if (principal && vg != 1) throw CompositionError("principal part needs an inner series of valuation 1");
    long ordl = cap;
    if (!is_exact()) ordl = std::min<long>(ordl, long(order_) * vg);
    for (const auto& [n, v] : c_) {
        if (n >= 1) {
            ordl = std::min<long>(ordl, long(ord_add(g.order_, (n - 1) * vg)));
            break;
        }
    }
    if (principal) {
        int kmax = -c_.begin()->first;
        if (!g.is_exact()) ordl = std::min<long>(ordl, long(g.order_) - kmax - 1);
    }
    int ord = int(std::min<long>(ordl, kExactOrder));
    if (ord >= kExactOrder) throw DomainError("composition with exact result needs an explicit order");
    TruncSeries r(ctx_, ord, g.var_);
    auto it0 = c_.find(0);
    if (it0 != c_.end()) r.set(0, it0->second);
    // positive powers
    TruncSeries gt = g0.truncated(ord);
    TruncSeries pw = constant(scalar_from_int(1, ctx_), kExactOrder, g.var_);
    int nmax = c_.empty() ? 0 : c_.rbegin()->first;
    for (int n = 1; n <= nmax && long(n) * vg < ord; ++n) {
        pw = mul(pw, gt, ord);
        auto it = c_.find(n);
        if (it == c_.end()) continue;
        for (const auto& [e, v] : pw.c_) r.add_to(e, v * it->second);
    }
    if (principal) {
        TruncSeries gi = g0.inverse(ord);
        TruncSeries ip = constant(scalar_from_int(1, ctx_), kExactOrder, g.var_);
        for (int k = 1; k <= -c_.begin()->first; ++k) {
            ip = mul(ip, gi, ord);
            auto it = c_.find(-k);
            if (it == c_.end()) continue;
            for (const auto& [e, v] : ip.c_) r.add_to(e, v * it->second);
        }
    }
    return r;
}

template <class T>
TruncSeries<T> TruncSeries<T>::exp(int cap) const {
    if (!c_.empty() && c_.begin()->first < 0) throw DomainError("exp of a series with principal part");
    auto it0 = c_.find(0);
    if (it0 != c_.end() && !scalar_zero_at_prec(it0->second)) throw DomainError("exp needs f(0) = 0");
    int ord = std::min(order_, cap);
    if (ord >= kExactOrder) throw DomainError("exp of an exact series needs an explicit order");
    std::vector<T> f(ord, scalar_zero(ctx_)), e(ord, scalar_zero(ctx_));
    for (const auto& [k, v] : c_)
        if (k >= 1 && k < ord) f[k] = v * scalar_from_int(k, ctx_);
    if (ord > 0) e[0] = scalar_from_int(1, ctx_);
    for (int n = 1; n < ord; ++n) {
        T s = scalar_zero(ctx_);
        for (int k = 1; k <= n; ++k)
            if (!scalar_is_zero(f[k])) s = s + f[k] * e[n - k];
        e[n] = s / scalar_from_int(n, ctx_);
    }
    TruncSeries r(ctx_, ord, var_);
    for (int n = 0; n < ord; ++n) {
        if (scalar_absprec(e[n]) <= 0 && scalar_absprec(e[n]) != INT_MAX && e[n].is_zero())
            throw PrecisionError("exp lost all precision at coefficient " + std::to_string(n));
        r.set(n, e[n]);
    }
    return r;
}

template <class T>
TruncSeries<T> TruncSeries<T>::log() const {
    if (!c_.empty() && c_.begin()->first < 0) throw DomainError("log of a series with principal part");
    if (!scalar_zero_at_prec(at(0) - scalar_from_int(1, ctx_))) throw DomainError("log needs f(0) = 1");
    TruncSeries q = derivative() * inverse(order_);
    return q.antiderivative().truncated(order_);
}

// Compositional inverse by Newton iteration: h <- h - (g(h) - z)/g'(h).
template <class T>
TruncSeries<T> TruncSeries<T>::revert() const {
    if (c_.empty() || floor() < 1) {
        if (!(floor() == 0 && scalar_zero_at_prec(at(0)))) throw CompositionError("reversion needs g(0) = 0");
    }
    T g1 = at(1);
    if (!scalar_invertible(g1)) throw CompositionError("reversion needs an invertible linear coefficient");
    int M = order_;
    if (M >= kExactOrder) throw DomainError("reversion of an exact series needs an explicit order");
    T one = scalar_from_int(1, ctx_);
    TruncSeries z = monomial(one, 1, kExactOrder, var_);
    TruncSeries h = monomial(one / g1, 1, std::min(2, M), var_);
    TruncSeries dg = derivative();
    int cur = 2;
    while (cur < M) {
        cur = std::min(2 * cur, M);
        TruncSeries hc(ctx_, cur, var_);
        for (const auto& [e, v] : h.c_) hc.set(e, v);
        TruncSeries gh = compose(hc, cur);
        TruncSeries dgh = dg.compose(hc, cur);
        TruncSeries num = gh - z;
        TruncSeries corr = mul(num, dgh.inverse(cur), cur);
        h = (hc - corr).truncated(cur);
    }
    return h.truncated(M);
}

template <class T>
std::ostream& operator<<(std::ostream& os, const TruncSeries<T>& s) {
    return os << s.to_string();
}

}  // namespace ekpoly
