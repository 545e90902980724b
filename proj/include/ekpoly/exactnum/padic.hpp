#pragma once

#include <ekpoly/errors.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace ekpoly {

// Unramified extension Q_p[X]/(modulus) of degree f <= 2.  `cap` is the
// default relative precision given to elements created from exact data.
class PadicField {
public:
    PadicField(long p, std::vector<long> modulus, int cap) : p_(p), cap_(cap) {
        if (p < 2) throw DomainError("p must be a prime >= 2");
        if (cap < 1) throw PrecisionError("precision must be >= 1");
        if (modulus.empty()) modulus = {0, 1};
        f_ = int(modulus.size()) - 1;
        if (f_ < 1 || f_ > 2) throw DomainError("only unramified degree 1 or 2 is supported");
        if (modulus.back() != 1) throw DomainError("modulus must be monic");
        for (long c : modulus) mod_.emplace_back(c);
        if (f_ == 2) {
            // irreducible mod p: no root in F_p
            for (long x = 0; x < p; ++x) {
                mpz_class v = (mod_[0] + mod_[1] * x + x * x) % p_;
                if (v == 0) throw DomainError("modulus is reducible mod p");
            }
        }
    }

    static std::shared_ptr<const PadicField> make(long p, int cap, std::vector<long> modulus = {}) {
        return std::make_shared<const PadicField>(p, std::move(modulus), cap);
    }

    long p() const { return p_; }
    int f() const { return f_; }
    int cap() const { return cap_; }
    const std::vector<mpz_class>& modulus() const { return mod_; }

    const mpz_class& ppow(int k) const {
        std::lock_guard<std::mutex> lock(mu_);
        if (k < 0) throw DomainError("negative power");
        while (int(pows_.size()) <= k) {
            if (pows_.empty()) pows_.emplace_back(1);
            else pows_.push_back(pows_.back() * p_);
        }
        return pows_[k];
    }

    bool same(const PadicField& o) const { return p_ == o.p_ && mod_ == o.mod_; }

    std::string tag() const {
        std::string t = "Q" + std::to_string(p_);
        if (f_ == 2) t += "[X]/(X^2+" + mod_[1].get_str() + "X+" + mod_[0].get_str() + ")";
        return t;
    }

private:
    long p_;
    int f_;
    int cap_;
    std::vector<mpz_class> mod_;
    mutable std::mutex mu_;
    mutable std::deque<mpz_class> pows_;
};

using PadicFieldPtr = std::shared_ptr<const PadicField>;

inline int padic_val(const mpz_class& n, long p, int bound = INT_MAX) {
    if (n == 0) return bound;
    mpz_class t = n;
    int v = 0;
    while (v < bound && mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

// p^val * u + O(p^(val+prec)), u a unit given by coordinates mod p^prec.
// prec == 0 encodes a zero known to absolute precision val; `exact_` marks
// the exact zero.
class PadicScalar {
public:
    PadicScalar() = default;

    static PadicScalar exact_zero(PadicFieldPtr F) {
        PadicScalar x;
        x.F_ = std::move(F);
        x.exact_ = true;
        return x;
    }
    static PadicScalar zero(PadicFieldPtr F, int absprec) {
        PadicScalar x;
        x.F_ = std::move(F);
        x.val_ = absprec;
        x.prec_ = 0;
        return x;
    }

    // From rational coordinates in the basis 1, X.
    static PadicScalar from_coords(PadicFieldPtr F, const std::vector<mpq_class>& coords, int relprec = -1) {
        if (relprec < 0) relprec = F->cap();
        long p = F->p();
        int f = F->f();
        int v = INT_MAX;
        std::vector<int> vs(f, INT_MAX);
        for (int i = 0; i < f && i < int(coords.size()); ++i) {
            if (sgn(coords[i]) == 0) continue;
            vs[i] = padic_val(coords[i].get_num(), p) - padic_val(coords[i].get_den(), p);
            v = std::min(v, vs[i]);
        }
        if (v == INT_MAX) return exact_zero(F);
        PadicScalar x;
        x.F_ = F;
        x.val_ = v;
        x.prec_ = relprec;
        const mpz_class& m = F->ppow(relprec);
        x.u_.assign(f, mpz_class(0));
        for (int i = 0; i < f && i < int(coords.size()); ++i) {
            if (vs[i] == INT_MAX) continue;
            mpz_class num = coords[i].get_num(), den = coords[i].get_den();
            int shift = vs[i] - v;
            int vn = padic_val(num, p), vd = padic_val(den, p);
            mpz_class n2 = num, d2 = den;
            mpz_divexact(n2.get_mpz_t(), n2.get_mpz_t(), F->ppow(vn).get_mpz_t());
            mpz_divexact(d2.get_mpz_t(), d2.get_mpz_t(), F->ppow(vd).get_mpz_t());
            if (shift >= relprec) continue;
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), d2.get_mpz_t(), m.get_mpz_t());
            mpz_class r = n2 * inv * F->ppow(shift);
            mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
            x.u_[i] = r;
        }
        return x;
    }
    static PadicScalar from_rational(PadicFieldPtr F, const mpq_class& q, int relprec = -1) {
        return from_coords(std::move(F), {q}, relprec);
    }
    static PadicScalar from_int(PadicFieldPtr F, long n, int relprec = -1) {
        return from_rational(std::move(F), mpq_class(n), relprec);
    }
    // From an integer representative mod p^N (f = 1) at absolute precision N.
    static PadicScalar from_residue(PadicFieldPtr F, const mpz_class& r, int N) {
        mpz_class m = r % F->ppow(N);
        if (m < 0) m += F->ppow(N);
        if (m == 0) return zero(F, N);
        int v = padic_val(m, F->p());
        PadicScalar x = from_rational(F, mpq_class(m), N - v);
        return x;
    }

    const PadicFieldPtr& field() const { return F_; }
    bool is_exact_zero() const { return exact_; }
    bool is_zero() const { return exact_ || prec_ == 0; }
    // valuation (for a zero: its absolute precision)
    int valuation() const { return exact_ ? INT_MAX : val_; }
    int relprec() const { return exact_ ? INT_MAX : prec_; }
    int absprec() const { return exact_ ? INT_MAX : val_ + prec_; }
    const std::vector<mpz_class>& unit() const { return u_; }

    friend PadicScalar operator+(const PadicScalar& x, const PadicScalar& y) {
        if (x.exact_) return y;
        if (y.exact_) return x;
        const PadicFieldPtr& F = x.F_;
        int A = std::min(x.absprec(), y.absprec());
        int v = std::min(x.val_, y.val_);
        if (v >= A) return zero(F, A);
        int r = A - v;
        const mpz_class& m = F->ppow(r);
        std::vector<mpz_class> c(F->f(), mpz_class(0));
        auto acc = [&](const PadicScalar& z) {
            if (z.prec_ == 0) return;
            int sh = z.val_ - v;
            if (sh >= r) return;
            for (int i = 0; i < F->f(); ++i) {
                if (sh == 0) c[i] += z.u_[i];
                else c[i] += z.u_[i] * F->ppow(sh);
            }
        };
        acc(x);
        acc(y);
        for (auto& ci : c) mpz_mod(ci.get_mpz_t(), ci.get_mpz_t(), m.get_mpz_t());
        return normalize(F, std::move(c), v, r);
    }
    friend PadicScalar operator-(const PadicScalar& x) {
        if (x.exact_ || x.prec_ == 0) return x;
        PadicScalar y = x;
        const mpz_class& m = x.F_->ppow(x.prec_);
        for (auto& c : y.u_) {
            c = -c;
            mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        }
        return y;
    }
    friend PadicScalar operator-(const PadicScalar& x, const PadicScalar& y) { return x + (-y); }

    friend PadicScalar operator*(const PadicScalar& x, const PadicScalar& y) {
        if (x.exact_) return x;
        if (y.exact_) return y;
        const PadicFieldPtr& F = x.F_;
        if (x.prec_ == 0 || y.prec_ == 0) return zero(F, x.val_ + y.val_);
        PadicScalar z;
        z.F_ = F;
        z.val_ = x.val_ + y.val_;
        z.prec_ = std::min(x.prec_, y.prec_);
        const mpz_class& m = F->ppow(z.prec_);
        if (F->f() == 1) {
            mpz_class t = x.u_[0] * y.u_[0];
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
            z.u_ = {t};
        } else {
            // X^2 = -m1 X - m0
            const auto& md = F->modulus();
            mpz_class a0 = x.u_[0] * y.u_[0], a1 = x.u_[0] * y.u_[1] + x.u_[1] * y.u_[0], a2 = x.u_[1] * y.u_[1];
            mpz_class c0 = a0 - a2 * md[0], c1 = a1 - a2 * md[1];
            mpz_mod(c0.get_mpz_t(), c0.get_mpz_t(), m.get_mpz_t());
            mpz_mod(c1.get_mpz_t(), c1.get_mpz_t(), m.get_mpz_t());
            z.u_ = {c0, c1};
        }
        return z;
    }

    PadicScalar inverse() const {
        if (exact_ || prec_ == 0) throw PrecisionError("inverting a p-adic zero");
        PadicScalar z;
        z.F_ = F_;
        z.val_ = -val_;
        z.prec_ = prec_;
        const mpz_class& m = F_->ppow(prec_);
        if (F_->f() == 1) {
            mpz_class t;
            mpz_invert(t.get_mpz_t(), u_[0].get_mpz_t(), m.get_mpz_t());
            z.u_ = {t};
        } else {
            const auto& md = F_->modulus();
            // conj(a + bX) = (a - b m1) - bX ; norm = a^2 - a b m1 + b^2 m0
            mpz_class a = u_[0], b = u_[1];
            mpz_class ca = a - b * md[1], cb = -b;
            mpz_class nrm = a * a - a * b * md[1] + b * b * md[0];
            mpz_mod(nrm.get_mpz_t(), nrm.get_mpz_t(), m.get_mpz_t());
            mpz_class ni;
            if (!mpz_invert(ni.get_mpz_t(), nrm.get_mpz_t(), m.get_mpz_t())) throw PrecisionError("non-unit norm");
            mpz_class c0 = ca * ni, c1 = cb * ni;
            mpz_mod(c0.get_mpz_t(), c0.get_mpz_t(), m.get_mpz_t());
            mpz_mod(c1.get_mpz_t(), c1.get_mpz_t(), m.get_mpz_t());
            z.u_ = {c0, c1};
        }
        return z;
    }
    friend PadicScalar operator/(const PadicScalar& x, const PadicScalar& y) {
        if (x.exact_) return x;
        if (x.prec_ == 0) {
            if (y.exact_ || y.prec_ == 0) throw PrecisionError("dividing by a p-adic zero");
            return zero(x.F_, x.val_ - y.val_);
        }
        return x * y.inverse();
    }

    PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
    PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
    PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }
    PadicScalar& operator/=(const PadicScalar& o) { return *this = *this / o; }

    // Multiply by p^k exactly.
    PadicScalar shift(int k) const {
        if (exact_) return *this;
        PadicScalar z = *this;
        z.val_ += k;
        return z;
    }

    // Reduce relative precision so that absolute precision is at most N.
    PadicScalar truncate_abs(int N) const {
        if (exact_) return zero(F_, N);
        if (absprec() <= N) return *this;
        if (val_ >= N) return zero(F_, N);
        PadicScalar z = *this;
        z.prec_ = N - val_;
        const mpz_class& m = F_->ppow(z.prec_);
        for (auto& c : z.u_) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        return z;
    }

    // Equal as p-adic numbers at the smaller of the two precisions.
    bool equals_at_precision(const PadicScalar& o) const { return (*this - o).is_zero(); }

    // Coordinates of p^val*u as residues mod p^N (requires val >= 0, absprec >= N).
    std::vector<mpz_class> residues(int N) const {
        std::vector<mpz_class> out(F_->f(), mpz_class(0));
        if (exact_) return out;
        if (absprec() < N) throw PrecisionError("not enough precision for residues mod p^" + std::to_string(N));
        if (val_ < 0) throw DomainError("element is not integral");
        if (prec_ == 0 || val_ >= N) return out;
        const mpz_class& m = F_->ppow(N);
        for (int i = 0; i < F_->f(); ++i) {
            mpz_class t = u_[i] * F_->ppow(val_);
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
            out[i] = t;
        }
        return out;
    }

    // Canonical text: "val|absprec|digits" with base-p digits of each unit
    // coordinate (least significant first), coordinates separated by ';'.
    std::string serialize() const {
        if (exact_) return "0";
        std::string s = std::to_string(val_) + "|" + std::to_string(absprec()) + "|";
        if (prec_ == 0) return s + "0";
        for (int i = 0; i < F_->f(); ++i) {
            if (i) s += ";";
            mpz_class t = u_[i];
            for (int k = 0; k < prec_; ++k) {
                if (k) s += " ";
                mpz_class dgt = t % F_->p();
                s += dgt.get_str();
                t /= F_->p();
            }
        }
        return s;
    }

    std::string to_string() const {
        if (exact_) return "0";
        std::string body;
        if (prec_ == 0) body = "0";
        else if (F_->f() == 1) body = u_[0].get_str();
        else body = "(" + u_[0].get_str() + "+" + u_[1].get_str() + "*X)";
        std::string p = std::to_string(F_->p());
        std::string sc = val_ == 0 ? "" : p + "^" + std::to_string(val_) + "*";
        return sc + body + " + O(" + p + "^" + std::to_string(absprec()) + ")";
    }

private:
    static PadicScalar normalize(const PadicFieldPtr& F, std::vector<mpz_class> c, int v, int r) {
        long p = F->p();
        int k = r;
        for (auto& ci : c) k = std::min(k, padic_val(ci, p, r));
        if (k >= r) return zero(F, v + r);
        PadicScalar z;
        z.F_ = F;
        z.val_ = v + k;
        z.prec_ = r - k;
        if (k > 0)
            for (auto& ci : c) mpz_divexact(ci.get_mpz_t(), ci.get_mpz_t(), F->ppow(k).get_mpz_t());
        z.u_ = std::move(c);
        return z;
    }

    PadicFieldPtr F_;
    bool exact_ = false;
    int val_ = 0;
    int prec_ = 0;
    std::vector<mpz_class> u_;
};

inline std::ostream& operator<<(std::ostream& os, const PadicScalar& x) { return os << x.to_string(); }

// Worst absolute precision seen per pipeline stage.
class PrecisionLedger {
public:
    void record(const std::string& stage, int absprec) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = worst_.find(stage);
        if (it == worst_.end() || absprec < it->second) worst_[stage] = absprec;
    }
    std::map<std::string, int> entries() const {
        std::lock_guard<std::mutex> lock(mu_);
        return worst_;
    }
    int worst() const {
        std::lock_guard<std::mutex> lock(mu_);
        int w = INT_MAX;
        for (auto& kv : worst_) w = std::min(w, kv.second);
        return w;
    }

private:
    mutable std::mutex mu_;
    std::map<std::string, int> worst_;
};

}  // namespace ekpoly
