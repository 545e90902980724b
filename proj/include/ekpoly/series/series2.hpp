#pragma once

#include <ekpoly/series/series.hpp>

#include <utility>

namespace ekpoly {

// Two-variable Laurent series known on the rectangle x^i y^j, i < order_x,
// j < order_y.
template <class T>
class TruncSeries2 {
public:
    using Key = std::pair<int, int>;

    TruncSeries2() = default;
    TruncSeries2(T ctx, int ox, int oy, std::string vx = "z", std::string vy = "w")
        : ctx_(scalar_zero(ctx)), ox_(ox), oy_(oy), vx_(std::move(vx)), vy_(std::move(vy)) {}

    // Sum over j of rows[j](x) * y^(j + first).
    static TruncSeries2 from_rows(const T& ctx, const std::vector<TruncSeries<T>>& rows, int first, int oy,
                                  std::string vx = "z", std::string vy = "w") {
        int ox = kExactOrder;
        for (const auto& r : rows) ox = std::min(ox, r.order());
        TruncSeries2 s(ctx, ox, oy, std::move(vx), std::move(vy));
        for (size_t j = 0; j < rows.size(); ++j) {
            int e = first + int(j);
            if (e >= oy) break;
            for (const auto& [i, v] : rows[j].terms())
                if (i < ox) s.set(i, e, v);
        }
        return s;
    }

    int order_x() const { return ox_; }
    int order_y() const { return oy_; }
    const std::map<Key, T>& terms() const { return c_; }

    int floor_x() const {
        int f = ox_;
        for (const auto& kv : c_) f = std::min(f, kv.first.first);
        return f;
    }
    int floor_y() const {
        int f = oy_;
        for (const auto& kv : c_) f = std::min(f, kv.first.second);
        return f;
    }

    T at(int i, int j) const {
        if (i >= ox_ || j >= oy_) throw UnknownCoefficient("two-variable coefficient beyond truncation");
        auto it = c_.find({i, j});
        return it == c_.end() ? scalar_zero(ctx_) : it->second;
    }
    void set(int i, int j, const T& v) {
        if (i >= ox_ || j >= oy_) return;
        if (scalar_is_zero(v)) c_.erase({i, j});
        else c_[{i, j}] = v;
    }
    void add_to(int i, int j, const T& v) {
        if (i >= ox_ || j >= oy_ || scalar_is_zero(v)) return;
        auto it = c_.find({i, j});
        if (it == c_.end()) c_.emplace(Key{i, j}, v);
        else {
            it->second = it->second + v;
            if (scalar_is_zero(it->second)) c_.erase(it);
        }
    }

    // Coefficient of y^j as a series in x.
    TruncSeries<T> row(int j) const {
        if (j >= oy_) throw UnknownCoefficient("row beyond truncation");
        TruncSeries<T> r(ctx_, ox_, vx_);
        for (const auto& [k, v] : c_)
            if (k.second == j) r.set(k.first, v);
        return r;
    }
    // Coefficient of x^i as a series in y.
    TruncSeries<T> col(int i) const { return transpose().row(i); }

    TruncSeries2 transpose() const {
        TruncSeries2 t(ctx_, oy_, ox_, vy_, vx_);
        for (const auto& [k, v] : c_) t.c_.emplace(Key{k.second, k.first}, v);
        return t;
    }

    TruncSeries2 truncated(int ox, int oy) const {
        TruncSeries2 r(ctx_, std::min(ox, ox_), std::min(oy, oy_), vx_, vy_);
        for (const auto& [k, v] : c_)
            if (k.first < r.ox_ && k.second < r.oy_) r.c_.emplace(k, v);
        return r;
    }

    friend TruncSeries2 operator+(const TruncSeries2& a, const TruncSeries2& b) {
        TruncSeries2 r = a.truncated(b.ox_, b.oy_);
        for (const auto& [k, v] : b.c_) r.add_to(k.first, k.second, v);
        return r;
    }
    friend TruncSeries2 operator-(const TruncSeries2& a) {
        TruncSeries2 r(a.ctx_, a.ox_, a.oy_, a.vx_, a.vy_);
        for (const auto& [k, v] : a.c_) r.c_.emplace(k, -v);
        return r;
    }
    friend TruncSeries2 operator-(const TruncSeries2& a, const TruncSeries2& b) { return a + (-b); }
    friend TruncSeries2 operator*(const TruncSeries2& a, const T& s) {
        TruncSeries2 r(a.ctx_, a.ox_, a.oy_, a.vx_, a.vy_);
        for (const auto& [k, v] : a.c_) r.set(k.first, k.second, v * s);
        return r;
    }

    friend TruncSeries2 operator*(const TruncSeries2& a, const TruncSeries2& b) {
        int ox = std::min(ord_add(a.ox_, b.floor_x()), ord_add(b.ox_, a.floor_x()));
        int oy = std::min(ord_add(a.oy_, b.floor_y()), ord_add(b.oy_, a.floor_y()));
        return mul(a, b, ox, oy);
    }

    static TruncSeries2 mul(const TruncSeries2& a, const TruncSeries2& b, int ox, int oy) {
        ox = std::min({ox, ord_add(a.ox_, b.floor_x()), ord_add(b.ox_, a.floor_x())});
        oy = std::min({oy, ord_add(a.oy_, b.floor_y()), ord_add(b.oy_, a.floor_y())});
        TruncSeries2 r(a.ctx_, ox, oy, a.vx_, a.vy_);
        for (const auto& [ka, va] : a.c_)
            for (const auto& [kb, vb] : b.c_) {
                int i = ka.first + kb.first, j = ka.second + kb.second;
                if (i < ox && j < oy) r.add_to(i, j, va * vb);
            }
        return r;
    }

    // f(G(x, y)) for a one-variable f and G with no constant term.
    static TruncSeries2 compose(const TruncSeries<T>& f, const TruncSeries2& G) {
        if (G.floor_x() < 0 || G.floor_y() < 0) throw CompositionError("inner series has a principal part");
        int vmin = kExactOrder;
        for (const auto& [k, v] : G.c_) {
            if (k.first + k.second == 0) throw CompositionError("inner series has nonzero constant term");
            vmin = std::min(vmin, k.first + k.second);
        }
        if (!f.terms().empty() && f.floor() < 0) throw CompositionError("outer series has a principal part");
        int ox = G.ox_, oy = G.oy_;
        if (!f.is_exact()) {
            // unknown tail of f starts at total degree order(f) * vmin
            long T0 = long(f.order()) * vmin;
            while (ox > 0 && oy > 0 && long(ox - 1) + long(oy - 1) >= T0) {
                if (ox >= oy) --ox;
                else --oy;
            }
        }
        TruncSeries2 r(f.context(), ox, oy, G.vx_, G.vy_);
        TruncSeries2 g = G.truncated(ox, oy);
        TruncSeries2 pw(f.context(), ox, oy, G.vx_, G.vy_);
        pw.set(0, 0, scalar_from_int(1, f.context()));
        if (!f.terms().empty() && f.floor() == 0) r.set(0, 0, f.at(0));
        int nmax = f.terms().empty() ? 0 : f.terms().rbegin()->first;
        for (int n = 1; n <= nmax && long(n) * vmin <= long(ox + oy); ++n) {
            pw = mul(pw, g, ox, oy);
            auto it = f.terms().find(n);
            if (it == f.terms().end()) continue;
            for (const auto& [k, v] : pw.c_) r.add_to(k.first, k.second, v * it->second);
        }
        return r;
    }

    // Embed a one-variable series in x (or y).
    static TruncSeries2 in_x(const TruncSeries<T>& s, int oy, std::string vx = "z", std::string vy = "w") {
        return from_rows(s.context(), {s}, 0, oy, std::move(vx), std::move(vy));
    }

    bool agrees_with(const TruncSeries2& o) const {
        int ox = std::min(ox_, o.ox_), oy = std::min(oy_, o.oy_);
        TruncSeries2 d = truncated(ox, oy) - o.truncated(ox, oy);
        for (const auto& [k, v] : d.c_)
            if (!v.is_zero()) return false;
        return true;
    }

    std::string serialize() const {
        std::string s;
        for (const auto& [k, v] : c_) {
            if (!s.empty()) s += " ";
            s += std::to_string(k.first) + "," + std::to_string(k.second) + ":" + scalar_serialize(v);
        }
        return s + " |order:" + std::to_string(ox_) + "," + std::to_string(oy_);
    }

private:
    T ctx_{};
    std::map<Key, T> c_;
    int ox_ = kExactOrder, oy_ = kExactOrder;
    std::string vx_ = "z", vy_ = "w";
};

}  // namespace ekpoly
