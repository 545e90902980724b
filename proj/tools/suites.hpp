#pragma once

#include "commands.hpp"

#include <random>

namespace ekpoly::cli {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    json rows = json::array();
    double seconds = 0;
};

namespace suites {

inline std::vector<CurveData> preset_matrix() {
    auto all = builtin_presets();
    return {all.at("gauss"), all.at("g3only"), all.at("mixed")};
}

struct Tally {
    int checks = 0, failures = 0;
    std::string first;
    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures++ == 0) first = what;
    }
    void fill(CriterionResult& r) const {
        r.pass = failures == 0 && checks > 0;
        r.detail = std::to_string(checks - failures) + "/" + std::to_string(checks) + " checks";
        if (failures) r.detail += "; first failure: " + first;
    }
};

inline bool zero_below(const XSeries& f, int order) {
    for (const auto& [e, v] : f.terms())
        if (e < order && !v.is_zero()) return false;
    return true;
}

inline bool zero_below(const PSeries& f, int order) {
    for (const auto& [e, v] : f.terms())
        if (e < order && !v.is_zero()) return false;
    return true;
}

inline CriterionResult weierstrass_ode() {
    CriterionResult r{1, "weierstrass-ode"};
    Tally t;
    for (const auto& c : preset_matrix()) {
        WpFamily w = wp_family(c, 34);
        XSeries d = w.dwp * w.dwp - XSeries::constant(ExactScalar(4)) * w.wp * w.wp * w.wp + w.wp * c.g2 +
                    XSeries::constant(c.g3);
        t.check(d.order() >= 30 && zero_below(d, 30), c.name);
        r.rows.push_back({{"curve", c.name}, {"order", 30}});
    }
    t.fill(r);
    return r;
}

inline CriterionResult connection_functions() {
    CriterionResult r{2, "connection-functions"};
    Tally t;
    for (const auto& c : preset_matrix()) {
        XiExpansion x = xi_expand(c, 24, 9);
        WpFamily w = wp_family(c, 60);
        t.check(x.L[0].agrees_with(XSeries::constant(ExactScalar(1), 24)), c.name + " L0 series");
        t.check(zero_below(x.L[1], 24) && x.L[1].order() >= 24, c.name + " L1 series");
        t.check(x.L[2].agrees_with(w.wp * ExactScalar::rational(-1, 2)), c.name + " L2 series");
        t.check(x.L[3].agrees_with(w.dwp * ExactScalar::rational(-1, 6)), c.name + " L3 series");
        const char* want[] = {"1", "0", "-1/2*wp", "-1/6*dwp"};
        for (int n = 0; n <= 8; ++n) {
            EllipticPoly h = algebraize(x.L[n], c);
            if (n < 4) t.check(h.to_string() == want[n], c.name + " L" + std::to_string(n) + " = " + h.to_string());
            XSeries back = h.expand(w);
            t.check(back.order() >= 24 && back.truncated(24).agrees_with(x.L[n]),
                    c.name + " round trip L" + std::to_string(n));
            r.rows.push_back({{"curve", c.name}, {"n", n}, {"L", h.to_string()}});
        }
        // the rational-map form of L2 and L3
        RationalMap m2 = algebraize(x.L[2], c).as_rational_map(), m3 = algebraize(x.L[3], c).as_rational_map();
        Point P(ExactScalar(2), ExactScalar(3));
        t.check(m2.eval(P) == ExactScalar::rational(-1, 1), c.name + " L2 rational map");
        t.check(m3.eval(P) == ExactScalar::rational(-1, 2), c.name + " L3 rational map");
    }
    t.fill(r);
    return r;
}

inline CriterionResult theta_symmetry() {
    CriterionResult r{3, "theta-symmetry"};
    Tally t;
    for (const auto& c : preset_matrix()) {
        XiExpansion x = xi_expand(c, 12, 13);
        XSeries2 th = x.theta();
        t.check(th.order_x() >= 12 && th.order_y() >= 12, c.name + " bi-order");
        for (int i = -1; i < 12; ++i)
            for (int j = -1; j < 12; ++j)
                t.check(th.at(i, j) == th.at(j, i), c.name + " z^" + std::to_string(i) + " w^" + std::to_string(j));
        r.rows.push_back({{"curve", c.name}, {"biorder", {12, 12}}});
    }
    t.fill(r);
    return r;
}

inline CriterionResult from_reports(int id, const std::string& name, const std::vector<ResidualReport>& reps) {
    CriterionResult r{id, name};
    Tally t;
    for (const auto& rep : reps) {
        t.check(rep.pass, rep.name + " residual " + detail::fmt(rep.residual) + " >= " + detail::fmt(rep.bound));
        r.rows.push_back({{"identity", rep.name}, {"residual", rep.residual}, {"bound", rep.bound}, {"pass", rep.pass}});
    }
    t.fill(r);
    std::string worst;
    for (const auto& rep : reps) worst += (worst.empty() ? "" : ", ") + rep.name + " " + detail::fmt(rep.residual);
    r.detail += " (" + worst + ")";
    return r;
}

inline IdentityRegistry& gauss_registry() {
    static IdentityRegistry reg(CurveData::gauss());
    return reg;
}

inline CriterionResult damerell_bridge() {
    return from_reports(4, "damerell-bridge", {gauss_registry().verify("damerell")});
}

inline CriterionResult analytic_identities() {
    std::vector<ResidualReport> reps;
    for (const char* n : {"functional-equation", "reflection", "value-00", "zero-values", "diff-Ka", "diff-E",
                          "kronecker-theorem", "distribution-theta"})
        reps.push_back(gauss_registry().verify(n));
    return from_reports(5, "analytic-identities", reps);
}

inline CriterionResult hodge_audit() {
    std::vector<ResidualReport> reps;
    for (const char* n : {"xi-and-E", "hodge-first", "hodge-relation"}) reps.push_back(gauss_registry().verify(n));
    return from_reports(11, "hodge-audit", reps);
}

// gauss, p = 13, pi = 3+2i, z0 = (1,0), target 13^6
struct SplitData {
    CurveData c = CurveData::gauss();
    ExactScalar pi = ExactScalar::quad(1, 3, 2);
    SplitPrimeData sp{1, 13, ExactScalar::quad(1, 3, 2)};
    Point z0{ExactScalar(1), ExactScalar(0)};
    PadicPolylog pl{c, sp, 6};
};

inline SplitData& split_data() {
    static SplitData d;
    return d;
}

inline CriterionResult interpolation() {
    CriterionResult r{6, "padic-interpolation"};
    Tally t;
    SplitData& D = split_data();
    EKEngine e(D.c, D.pi, 3);
    TorsionPoint tz = make_torsion_point(D.c, D.z0);
    TorsionPoint pt = make_torsion_point(D.c, cm_mul(D.c, D.pi, D.z0));
    ExactScalar pibar = D.pi.conj();
    for (int b = 1; b <= 3; ++b)
        for (int a = 0; a <= 3; ++a) {
            ExactScalar rhs = e.value(tz, a, b) - D.pi.pow(a) * e.value(pt, a, b) / pibar.pow(b);
            if ((a + b - 1) % 2) rhs = -rhs;
            PadicScalar got = D.pl.moment(D.z0, a, b);
            std::string tag = "a=" + std::to_string(a) + " b=" + std::to_string(b);
            t.check(got.absprec() >= 6, tag + " precision " + std::to_string(got.absprec()));
            t.check(got.equals_at_precision(D.sp.embed(rhs)), tag + " value");
            r.rows.push_back({{"a", a}, {"b", b}, {"absprec", got.absprec()}, {"digits", got.serialize()}});
        }
    t.fill(r);
    return r;
}

inline PSeries dlog(PadicPolylog& pl, const PSeries& f) { return PSeries::mul(f.derivative(), pl.inv_dlambda(), f.order() - 1); }

inline CriterionResult ehat_construction() {
    CriterionResult r{7, "ehat-construction"};
    Tally t;
    SplitData& D = split_data();
    int M = D.pl.order();
    for (int b = 0; b <= 4; ++b)
        for (int m = 0; m <= 4; ++m) {
            std::string tag = "m=" + std::to_string(m) + " b=" + std::to_string(b);
            const EhatSeries& e = D.pl.ehat(D.z0, m, b);
            int worst = INT_MAX;
            for (const auto& s : e.audit) {
                worst = std::min(worst, s.certified);
                t.check(s.value.is_zero(), tag + " audit sum nonzero");
            }
            t.check(!e.audit.empty() && worst >= 4, tag + " audit certified " + std::to_string(worst));
            if (m > 0)
                t.check(zero_below(dlog(D.pl, e.series) + D.pl.ehat(D.z0, m - 1, b).series, M - 2), tag + " recursion");
            r.rows.push_back({{"m", m}, {"b", b}, {"value_certified", e.certified}, {"audit_certified", worst}});
        }
    t.fill(r);
    return r;
}

inline CriterionResult disc_polylog() {
    CriterionResult r{8, "disc-polylog"};
    Tally t;
    SplitData& D = split_data();
    PadicPolylog& pl = D.pl;
    int M = pl.order();
    auto d0 = pl.dhat_invert(D.z0, 0, 4);
    const int K = 30;
    auto L = pl.lhat_p_oracle(D.z0, 4, K);
    for (int n = 0; n <= 4; ++n) t.check(zero_below(d0[n] - L[n], K), "D_{0," + std::to_string(n) + "} vs L^(p)");
    const DiscBasis& db = pl.basis(D.z0);
    PSeries omega_star = embed_series(-db.wp - XSeries::constant(D.c.e2star, kExactOrder, "s"), D.sp);
    std::vector<std::vector<PSeries>> Dm;
    for (int m = 0; m <= 5; ++m) Dm.push_back(pl.dhat_invert(D.z0, m, 5 - m));
    for (int m = 1; m <= 5; ++m)
        for (int n = 1; m + n <= 5; ++n) {
            PSeries res = dlog(pl, Dm[m][n]) + Dm[m - 1][n] + PSeries::mul(Dm[m][n - 1], omega_star, M);
            t.check(zero_below(res, M - 2), "equation at m=" + std::to_string(m) + " n=" + std::to_string(n));
            r.rows.push_back({{"m", m}, {"n", n}});
        }
    t.fill(r);
    return r;
}

inline CriterionResult frobenius_congruence() {
    CriterionResult r{9, "frobenius-congruence"};
    Tally t;
    CurveData c = CurveData::gauss();
    {
        SplitPrimeData sp(1, 13, ExactScalar::quad(1, 3, 2));
        FormalGroupData fg = build_formal_group(c, 40);
        PSeries f = formal_pi(fg, sp, 20, 40);
        for (int e = 0; e < 20; ++e) {
            PadicScalar d = f.at(e) - (e == 13 ? PadicScalar::from_int(sp.field(), 1) : PadicScalar::exact_zero(sp.field()));
            t.check(d.valuation() >= 1, "split coefficient s^" + std::to_string(e));
        }
        PSeries lam = embed_series(fg.lambda, sp);
        PSeries lhs = lam.compose(f, 30), rhs = (lam * sp.pi_image()).truncated(30);
        t.check(lhs.agrees_with(rhs) && lhs.min_absprec() >= 20, "lambda o [pi] = pi lambda");
        r.rows.push_back({{"p", 13}, {"order", 20}, {"lambda_absprec", lhs.min_absprec()}});
    }
    {
        SplitPrimeData sp(1, 7, ExactScalar(-7));
        FormalGroupData fg = build_formal_group(c, 64);
        PSeries f = formal_pi(fg, sp, 8, 60);
        for (int e = 0; e < 60; ++e) {
            PadicScalar d = f.at(e) - (e == 49 ? PadicScalar::from_int(sp.field(), 1) : PadicScalar::exact_zero(sp.field()));
            t.check(d.valuation() >= 1, "inert coefficient s^" + std::to_string(e));
        }
        r.rows.push_back({{"p", 7}, {"order", 60}});
    }
    t.fill(r);
    return r;
}

// Builds the degree-3 table through the padic command twice from empty cache
// directories and once more from a warm one.
inline CriterionResult specialization_reproducible() {
    CriterionResult r{10, "specialization-table"};
    Tally t;
    std::random_device rd;
    fs::path root = fs::temp_directory_path() / ("ekpoly-acceptance-" + hex64((uint64_t(rd()) << 32) | rd()));
    auto run = [&](const std::string& sub) {
        RunConfig cfg;
        cfg.cache_dir = (root / sub).string();
        PadicOptions o;
        o.p = 13;
        o.pi = "3+2i";
        o.z0 = "1,0";
        o.table = 3;
        return cmd_padic(cfg, o);
    };
    Report a = run("cold-a"), b = run("cold-b"), w = run("cold-a");
    std::string ta = a.metadata["table_text"], tb = b.metadata["table_text"], tw = w.metadata["table_text"];
    t.check(!ta.empty(), "empty table");
    t.check(ta == tb, "second cold run differs");
    t.check(a.results.dump() == b.results.dump() && a.ledger == b.ledger, "cold JSON differs");
    t.check(tw == ta && w.metadata["cache"] == "hit", "warm run differs or missed the cache");
    int minprec = INT_MAX, entries = 0;
    for (const auto& row : a.results)
        if (row["kind"] == "table") {
            ++entries;
            minprec = std::min(minprec, row["precision"].get<int>());
        }
    t.check(entries == 12, "expected 12 table entries, got " + std::to_string(entries));
    t.check(minprec >= 4, "minimum precision " + std::to_string(minprec));
    r.rows.push_back({{"entries", entries}, {"min_precision", minprec}});
    std::error_code ec;
    fs::remove_all(root, ec);
    t.fill(r);
    r.detail += ", min precision 13^" + std::to_string(minprec);
    return r;
}

inline std::vector<int> suite_members(const std::string& suite) {
    if (suite == "exact") return {1, 2, 3};
    if (suite == "analytic") return {4, 5, 11};
    if (suite == "padic") return {6, 7, 8, 9, 10};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    throw ConfigError("unknown suite '" + suite + "' (exact, analytic, padic, all)");
}

inline CriterionResult run_criterion(int id) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    static const std::map<int, std::function<CriterionResult()>> fns = {
        {1, weierstrass_ode},      {2, connection_functions}, {3, theta_symmetry},   {4, damerell_bridge},
        {5, analytic_identities},  {6, interpolation},        {7, ehat_construction}, {8, disc_polylog},
        {9, frobenius_congruence}, {10, specialization_reproducible},                 {11, hodge_audit}};
    try {
        r = fns.at(id)();
    } catch (const std::exception& e) {
        r.id = id;
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace suites

inline std::string criterion_line(const CriterionResult& r) {
    return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail;
}

inline Report cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream* progress = nullptr) {
    Report r;
    r.command = "verify";
    r.params = {{"suite", suite}, {"curve", cfg.curve}};
    for (int id : suites::suite_members(suite)) {
        CriterionResult c = suites::run_criterion(id);
        r.failed |= !c.pass;
        r.results.push_back({{"criterion", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"rows", c.rows}});
        r.metadata["seconds"][std::to_string(c.id)] = c.seconds;
        r.text.push_back(criterion_line(c));
        if (progress) *progress << criterion_line(c) << std::endl;
        for (const auto& row : c.rows)
            if (row.contains("identity"))
                r.text.push_back("    " + row["identity"].get<std::string>() + "  residual " +
                                 detail::fmt(row["residual"].get<double>()) + "  bound " +
                                 detail::fmt(row["bound"].get<double>()));
    }
    r.text.push_back(r.failed ? "verification FAILED" : "all criteria PASS");
    return r;
}

}  // namespace ekpoly::cli
