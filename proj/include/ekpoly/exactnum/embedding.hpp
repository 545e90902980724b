#pragma once

#include <ekpoly/exactnum/exact_scalar.hpp>
#include <ekpoly/exactnum/padic.hpp>

#include <map>
#include <mutex>

namespace ekpoly {

// A prime p of Q, the generator pi of the chosen prime above it, and the
// embedding K -> K_p fixed by v(iota(pi)) >= 1 (split) or K_p = Q_p(sqrt(-d))
// (inert).
class SplitPrimeData {
public:
    SplitPrimeData(long d, long p, ExactScalar pi, int cap = 60) : d_(d), p_(p), pi_(std::move(pi)) {
        if (d <= 0) throw DomainError("d must be positive");
        if (p < 3 || d % p == 0) throw DomainError("p must be odd and unramified in K");
        pi_ = pi_.lift(NumberField::quadratic(d));
        Quad q = pi_.base_value();
        mpq_class nrm = quad::norm(q, d);
        long r = find_sqrt_mod_p(-d, p);
        if (r >= 0) {
            split_ = true;
            if (nrm != p) throw ValidationError("split prime: N(pi) must equal p");
            field_ = PadicField::make(p, cap);
            // choose the root u with a + b u = 0 mod p
            long u = -1;
            for (long cand : {r, (p - r) % p}) {
                PadicScalar a = PadicScalar::from_rational(field_, q.re, 2), b = PadicScalar::from_rational(field_, q.im, 2);
                PadicScalar img = a + b * PadicScalar::from_int(field_, cand, 2);
                if (img.valuation() >= 1) { u = cand; break; }
            }
            if (u < 0) throw ValidationError("no branch of sqrt(-d) makes pi non-unit");
            iota_ = hensel_sqrt(u, cap);
        } else {
            split_ = false;
            if (nrm != mpq_class(p * p)) throw ValidationError("inert prime: N(pi) must equal p^2");
            field_ = PadicField::make(p, cap, {d, 0, 1});
            iota_ = PadicScalar::from_coords(field_, {mpq_class(0), mpq_class(1)}, cap);
        }
        pi_image_ = embed_base(q);
        if (pi_image_.valuation() != 1) throw ValidationError("v(pi) must be 1");
    }

    long d() const { return d_; }
    long p() const { return p_; }
    bool split() const { return split_; }
    const ExactScalar& pi() const { return pi_; }
    ExactScalar pi_bar() const { return pi_.conj(); }
    // N(p): p when split, p^2 when inert
    long norm() const { return split_ ? p_ : p_ * p_; }
    const PadicFieldPtr& field() const { return field_; }
    const PadicScalar& iota() const { return iota_; }
    const PadicScalar& pi_image() const { return pi_image_; }
    int cap() const { return field_->cap(); }

    PadicScalar embed_base(const Quad& q) const {
        if (split_) {
            PadicScalar a = PadicScalar::from_rational(field_, q.re);
            if (sgn(q.im) == 0) return a;
            return a + PadicScalar::from_rational(field_, q.im) * iota_;
        }
        return PadicScalar::from_coords(field_, {q.re, q.im});
    }

    PadicScalar embed(const ExactScalar& x) const {
        const FieldPtr& F = x.field();
        if (F->d() != 0 && F->d() != d_) throw FieldError("scalar lives over a different quadratic field");
        if (!F->is_tower()) return embed_base(x.coords()[0]);
        PadicScalar th = tower_root(F);
        PadicScalar r = PadicScalar::exact_zero(field_), pw = PadicScalar::from_int(field_, 1);
        for (const auto& q : x.coords()) {
            if (!q.is_zero()) r += embed_base(q) * pw;
            pw *= th;
        }
        return r;
    }

private:
    static long find_sqrt_mod_p(long a, long p) {
        long t = ((a % p) + p) % p;
        for (long x = 0; x < p; ++x)
            if ((x * x) % p == t) return x;
        return -1;
    }

    PadicScalar hensel_sqrt(long u0, int cap) const {
        mpz_class m = field_->ppow(cap);
        mpz_class u = u0, md = -d_;
        for (int k = 1; k < cap; k *= 2) {
            mpz_class f = u * u - md, fp = 2 * u, inv;
            mpz_invert(inv.get_mpz_t(), fp.get_mpz_t(), m.get_mpz_t());
            u = u - f * inv;
            mpz_mod(u.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
        }
        mpz_class check = (u * u + d_) % m;
        if (check != 0) throw NoRootError("Hensel lift of sqrt(-d) failed");
        return PadicScalar::from_residue(field_, u, cap);
    }

    PadicScalar tower_root(const FieldPtr& F) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = roots_.find(F->tag());
        if (it != roots_.end()) return it->second;
        std::vector<PadicScalar> c;
        for (const auto& q : F->minpoly()) c.push_back(embed_base(q));
        int e = int(c.size()) - 1;
        for (const auto& ci : c)
            if (ci.valuation() < 0) throw NoRootError("minimal polynomial is not p-integral");
        auto eval = [&](const PadicScalar& x, PadicScalar& fx, PadicScalar& dfx) {
            fx = c[e];
            dfx = PadicScalar::exact_zero(field_);
            for (int i = e - 1; i >= 0; --i) {
                dfx = dfx * x + fx;
                fx = fx * x + c[i];
            }
        };
        // residue-field search for a simple root, then Newton
        long p = p_;
        int f = field_->f();
        long count = f == 1 ? p : p * p;
        for (long k = 0; k < count; ++k) {
            std::vector<mpq_class> co{mpq_class(k % p), mpq_class(f == 2 ? k / p : 0)};
            PadicScalar x = PadicScalar::from_coords(field_, co);
            if (k == 0) x = PadicScalar::from_int(field_, 0);
            PadicScalar fx, dfx;
            eval(x, fx, dfx);
            if (fx.valuation() < 1 || dfx.valuation() != 0) continue;
            for (int it = 0; it < 64; ++it) {
                eval(x, fx, dfx);
                if (fx.is_zero()) break;
                x = x - fx / dfx;
            }
            eval(x, fx, dfx);
            if (!fx.is_zero()) continue;
            roots_[F->tag()] = x;
            return x;
        }
        throw NoRootError("tower generator has no simple root in " + field_->tag());
    }

    long d_, p_;
    bool split_ = false;
    ExactScalar pi_;
    PadicFieldPtr field_;
    PadicScalar iota_;
    PadicScalar pi_image_;
    mutable std::mutex mu_;
    mutable std::map<std::string, PadicScalar> roots_;
};

inline PadicScalar embed_padic(const ExactScalar& x, const SplitPrimeData& sp) { return sp.embed(x); }

inline PadicScalar embed_padic(const ExactScalar& x, const SplitPrimeData& sp, int N) {
    if (N < 1) throw PrecisionError("precision must be >= 1");
    if (x.is_zero()) return PadicScalar::exact_zero(sp.field());
    return sp.embed(x).truncate_abs(N);
}

}  // namespace ekpoly
