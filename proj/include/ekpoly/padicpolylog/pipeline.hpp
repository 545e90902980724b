#pragma once

#include <ekpoly/padicpolylog/disc.hpp>

#include <functional>
#include <sstream>

namespace ekpoly {

struct PadicGenSeries {
    std::string id;
    int b = 0;
    PSeries series;
    int absprec = 0;
};

struct EhatSeries {
    std::string id;
    int m = 0, b = 0;
    PSeries series;
    PadicScalar value;  // Ehat_{m,b}(0)
    int certified = 0;  // absolute precision of value
    std::vector<TorsionSum> audit;  // torsion sums of d_log^j Ehat, j = 0, 1, ...
};

inline std::string point_id(const Point& P) {
    std::string s;
    for (char ch : P.to_string())
        if (ch != ' ') s += ch;
    return s;
}

// (d_log)^a f at s = 0, d_log = lambda'(s)^-1 d/ds.
inline PadicScalar moments_nonneg(const PSeries& f, const PSeries& inv_dlambda, int a) {
    if (a < 0) throw DomainError("moments_nonneg needs a >= 0");
    PSeries g = f;
    for (int k = 0; k < a; ++k) {
        if (g.order() < 2) throw PrecisionExhausted("derivatives used up the truncation order");
        g = PSeries::mul(g.derivative(), inv_dlambda, g.order() - 1);
    }
    if (g.order() < 1) throw PrecisionExhausted("derivatives used up the truncation order");
    return g.at(0);
}

// The p-adic side for one curve, prime and precision target.  The order is
// M = (N(p) - 1) target + slack and the power-sum cutoff is M.
class PadicPolylog {
public:
    PadicPolylog(const CurveData& c, const SplitPrimeData& sp, int target, int slack = 16)
        : c_(c), sp_(sp), target_(target), slack_(slack), engine_(c, sp.pi(), 6) {
        if (target < 1) throw PrecisionError("target precision must be >= 1");
        M_ = int((sp.norm() - 1) * target + slack);
        fg_ = build_formal_group(c, M_ + 4, 4);
        pi_ = formal_pi(fg_, sp, sp.cap(), M_);
        dp_ = prepare_and_power_sums(pi_, sp.norm(), M_);
        dlam_ = embed_series(fg_.dlambda.truncated(M_), sp);
        idlam_ = dlam_.inverse(M_);
        ledger_.record("formal_pi", pi_.min_absprec());
        ledger_.record("distinguished_poly", dp_.certified);
    }

    const CurveData& curve() const { return c_; }
    const SplitPrimeData& prime() const { return sp_; }
    const FormalGroupData& formal_group() const { return fg_; }
    const PSeries& pi_series() const { return pi_; }
    const DistinguishedPoly& distinguished() const { return dp_; }
    const PSeries& dlambda() const { return dlam_; }
    const PSeries& inv_dlambda() const { return idlam_; }
    const PrecisionLedger& ledger() const { return ledger_; }
    EKEngine& engine() { return engine_; }
    int order() const { return M_; }
    int target() const { return target_; }
    int slack() const { return slack_; }

    // Coefficients of Ehat_m beyond the order: v >= v0 - slope floor(log_p k).
    int tail_slope(int m, int b) const { return m + (sp_.split() ? 0 : b); }

    const DiscBasis& basis(const Point& z0) {
        std::string id = point_id(z0);
        auto it = basis_.find(id);
        if (it != basis_.end()) return it->second;
        return basis_.emplace(id, disc_basis(fg_, z0, engine_.seed(z0), M_)).first->second;
    }

    const XSeries& fhat_exact_cached(const Point& z0, int b) {
        auto key = std::make_pair(point_id(z0), b);
        auto it = fex_.find(key);
        if (it != fex_.end()) return it->second;
        return fex_.emplace(key, fhat_exact(engine_.table(), basis(z0), b)).first->second;
    }

    PadicGenSeries fhat(const Point& z0, int b) {
        if (b == 0) {
            PSeries one(PadicScalar::exact_zero(sp_.field()), M_, "s");
            one.set(0, PadicScalar::from_int(sp_.field(), 1));
            return {point_id(z0), 0, one, INT_MAX};
        }
        PSeries s = embed_series(fhat_exact_cached(z0, b), sp_);
        ledger_.record("fhat", s.min_absprec());
        return {point_id(z0), b, s, s.min_absprec()};
    }

    // Fhat_{z0,b}(s) - pibar^-b Fhat_{pi z0,b}([pi] s)
    PadicGenSeries fhat_restricted(const Point& z0, int b) {
        auto key = std::make_pair(point_id(z0), b);
        auto it = fres_.find(key);
        if (it != fres_.end()) return it->second;
        Point pz = cm_mul(c_, sp_.pi(), z0);
        if (pz.inf) throw DomainError("z0 is killed by pi");
        PadicGenSeries a = fhat(z0, b), t = fhat(pz, b);
        PadicScalar w = sp_.embed(pi_conj(sp_.pi()).pow(b).inverse());
        PSeries comp = t.series.compose(pi_, M_);
        PSeries r = (a.series - comp * w).truncated(M_);
        PadicGenSeries out{a.id, b, r, r.min_absprec()};
        ledger_.record("fhat_restricted", out.absprec);
        return fres_.emplace(key, out).first->second;
    }

    PadicScalar moment(const Point& z0, int a, int b) {
        return moments_nonneg(fhat_restricted(z0, b).series, idlam_, a);
    }

    // Ehat_{m,b}: Ehat_0 = restricted series, Ehat_m = -int lambda' Ehat_(m-1) + c with
    // the constant fixed by a vanishing sum over the roots of [pi].
    const EhatSeries& ehat(const Point& z0, int m, int b, int audit_depth = 4) {
        auto key = std::make_tuple(point_id(z0), m, b);
        auto it = ehat_.find(key);
        if (it != ehat_.end()) return it->second;
        EhatSeries e;
        e.id = point_id(z0);
        e.m = m;
        e.b = b;
        int slope = tail_slope(m, b);
        if (m == 0) {
            e.series = fhat_restricted(z0, b).series;
            e.value = e.series.at(0);
            e.certified = e.value.absprec();
        } else {
            const EhatSeries& prev = ehat(z0, m - 1, b, audit_depth);
            PSeries g = -PSeries::mul(dlam_, prev.series, M_).antiderivative().truncated(M_);
            TorsionSum t = torsion_sum(g, dp_, slope);
            PadicScalar cst = -t.value / PadicScalar::from_int(sp_.field(), sp_.norm());
            g.set(0, cst);
            e.series = g;
            e.value = cst;
            e.certified = cst.absprec();
        }
        PSeries h = e.series;
        for (int j = 0; j < audit_depth && h.order() > 1; ++j) {
            TorsionSum t = torsion_sum(h, dp_, slope, j == 0);
            if (!t.value.is_zero())
                throw AuditError("torsion sum of d_log^" + std::to_string(j) + " Ehat_{" + std::to_string(m) + "," +
                                 std::to_string(b) + "} is " + t.value.to_string());
            e.audit.push_back(t);
            h = PSeries::mul(h.derivative(), idlam_, h.order() - 1);
        }
        int aud = INT_MAX;
        for (const auto& t : e.audit) aud = std::min(aud, t.certified);
        ledger_.record("ehat_value", e.certified);
        ledger_.record("ehat_audit", aud);
        return ehat_.emplace(key, e).first->second;
    }

    // D_{m,n} from Ehat_{m,b} = sum_{n <= b} Fhat_{z0,1}^(b-n)/(b-n)! D_{m,n}, for n <= nmax.
    std::vector<PSeries> dhat_invert(const Point& z0, int m, int nmax) {
        PSeries F1 = fhat(z0, 1).series;
        std::vector<PSeries> D;
        for (int b = 0; b <= nmax; ++b) {
            PSeries r = ehat(z0, m, b).series;
            PSeries pw = F1;
            for (int k = b - 1; k >= 0; --k) {
                int j = b - k;
                PadicScalar f = sp_.embed(detail::inv_factorial(j));
                if (j > 1) pw = PSeries::mul(pw, F1, M_);
                r = r - PSeries::mul(pw, D[k], M_) * f;
            }
            D.push_back(r.truncated(M_));
        }
        return D;
    }

    // m = 0 oracle: L_n^(p)(z + z0) composed with lambda, built from the
    // two-variable theta expansions without the formal group.
    std::vector<PSeries> lhat_p_oracle(const Point& z0, int nmax, int order) {
        ThetaPExpansion t = theta_p_series(c_, z0, sp_.pi(), order, nmax + 1);
        std::vector<PSeries> out;
        XSeries lam = fg_.lambda.truncated(order);
        for (int n = 0; n <= nmax; ++n) out.push_back(embed_series(t.Lp[n].compose(lam, order), sp_));
        return out;
    }

    // Restriction through the translation sum with the starred series
    // Fhat* = Fhat + c_{b+1}:  R = H - (1/N) sum_n lambda(s)^n/n! T_n(H).
    PSeries restricted_by_translation(const PSeries& H, int order) {
        PSeries lam = embed_series(fg_.lambda.truncated(order), sp_);
        PSeries acc(PadicScalar::exact_zero(sp_.field()), order, "s");
        PSeries pw = PSeries::constant(PadicScalar::from_int(sp_.field(), 1), kExactOrder, "s");
        PSeries h = H;
        for (int n = 0; n < order; ++n) {
            TorsionSum t = torsion_sum(h, dp_, 0);
            acc = acc + pw * (t.value * sp_.embed(detail::inv_factorial(n)));
            pw = PSeries::mul(pw, lam, order);
            h = PSeries::mul(h.derivative(), idlam_, h.order() - 1);
        }
        PadicScalar iN = PadicScalar::from_int(sp_.field(), sp_.norm()).inverse();
        return (H - acc * iN).truncated(order);
    }

    PSeries fhat_star(const Point& z0, int b) {
        PSeries f = fhat(z0, b).series;
        PadicScalar c = sp_.embed(star_constant(fg_, b - 1));
        f.set(0, f.at(0) + c);
        return f;
    }

private:
    CurveData c_;
    const SplitPrimeData& sp_;  // owned by the caller
    int target_, slack_;
    int M_ = 0;
    EKEngine engine_;
    FormalGroupData fg_;
    PSeries pi_;
    DistinguishedPoly dp_;
    PSeries dlam_, idlam_;
    PrecisionLedger ledger_;
    std::map<std::string, DiscBasis> basis_;
    std::map<std::pair<std::string, int>, XSeries> fex_;
    std::map<std::pair<std::string, int>, PadicGenSeries> fres_;
    std::map<std::tuple<std::string, int, int>, EhatSeries> ehat_;
};

struct SpecEntry {
    int m = 0, k = 0;
    std::string row;  // "omega" or "omega*"
    PadicScalar value;
    int precision = 0;
};

// Degree-j blocks (j = m + k <= N) of the specialization, in the normalization
// without the p-adic period: omega row Ehat_{m,k+1}(0) for m >= 1, omega* row
// Ehat_{m+1,k}(0) for k >= 1.  The omega row slots with m = 0 lie in F^0 and are
// only listed.
struct SpecializationTable {
    int degree = 0;
    std::string normalization = "omega-free";
    std::vector<SpecEntry> entries;
    std::vector<std::pair<int, int>> suppressed;

    const SpecEntry* find(int m, int k, const std::string& row) const {
        for (const auto& e : entries)
            if (e.m == m && e.k == k && e.row == row) return &e;
        return nullptr;
    }

    int min_precision() const {
        int r = INT_MAX;
        for (const auto& e : entries) r = std::min(r, e.precision);
        return r;
    }

    std::string serialize() const {
        std::ostringstream os;
        for (const auto& e : entries) {
            std::string d = e.value.serialize();
            for (char& ch : d)
                if (ch == ' ') ch = ',';
            os << e.m << ' ' << e.k << ' ' << e.row << ' ' << d << ' ' << e.precision << '\n';
        }
        return os.str();
    }
};

inline SpecializationTable specialization_table(PadicPolylog& pl, const Point& z0, int N) {
    if (N < 1) throw DomainError("specialization degree must be >= 1");
    SpecializationTable t;
    t.degree = N;
    for (int m = 1; m <= N; ++m)
        for (int k = 0; m + k <= N; ++k) {
            const EhatSeries& e = pl.ehat(z0, m, k + 1);
            t.entries.push_back({m, k, "omega", e.value, e.certified});
        }
    for (int m = 0; m < N; ++m)
        for (int k = 1; m + k <= N; ++k) {
            const EhatSeries& e = pl.ehat(z0, m + 1, k);
            t.entries.push_back({m, k, "omega*", e.value, e.certified});
        }
    for (int n = 0; n <= N; ++n) t.suppressed.push_back({0, n});
    return t;
}

// Runs f on a pipeline, doubling the slack after PrecisionExhausted (at most `retries` times).
template <class F>
auto with_slack_retries(const CurveData& c, const SplitPrimeData& sp, int target, F f, int slack = 16,
                        int retries = 2) {
    for (int attempt = 0;; ++attempt) {
        try {
            PadicPolylog pl(c, sp, target, slack);
            return f(pl);
        } catch (const PrecisionExhausted&) {
            if (attempt >= retries) throw;
            slack *= 2;
        }
    }
}

}  // namespace ekpoly
