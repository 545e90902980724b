#pragma once

#include "config.hpp"

#include <chrono>

namespace ekpoly::cli {

struct Report {
    std::string command;
    json params = json::object();
    json results = json::array();
    json ledger = json::object();
    json metadata = json::object();  // run-dependent fields (timing, cache paths and hits)
    std::vector<std::string> text;
    bool failed = false;

    json to_json() const {
        return {{"command", command}, {"params", params},     {"results", results},
                {"ledger", ledger},   {"version", version()}, {"metadata", metadata}};
    }
};

inline json cx_json(const Cx& z, double bound = -1) {
    json j = {{"re", z.re.str(30, std::ios_base::scientific)}, {"im", z.im.str(30, std::ios_base::scientific)}};
    if (bound >= 0) j["bound"] = bound;
    return j;
}

inline json padic_json(const PadicScalar& x) {
    return {{"digits", x.serialize()}, {"absprec", x.absprec() == INT_MAX ? -1 : x.absprec()}, {"value", x.to_string()}};
}

inline void emit(const Report& r, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << r.to_json().dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        std::vector<std::string> cols;
        for (const auto& row : r.results)
            for (const auto& [k, v] : row.items())
                if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
        auto cell = [](const json& v) {
            std::string s = v.is_string() ? v.get<std::string>() : v.dump();
            if (s.find_first_of(",\"\n") != std::string::npos) {
                std::string q = "\"";
                for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                return q + "\"";
            }
            return s;
        };
        for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        out << '\n';
        for (const auto& row : r.results) {
            for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << (row.contains(cols[i]) ? cell(row[cols[i]]) : "");
            out << '\n';
        }
        return;
    }
    for (const auto& l : r.text) out << l << '\n';
}

// e2* of a CM curve without extra units must match the lattice value before exact work.
inline void check_e2star(const CurveData& c) {
    if (c.d <= 0 || c.d == 1 || c.d == 3) return;
    LatticeData L = lattice_of_curve(c);
    Real diff = abs(L.e2star() - to_cx(c.e2star));
    if (diff > Real("1e-8"))
        throw ValidationError("preset e2* differs from the lattice value " + cx_str(L.e2star(), 15) + " by " +
                              diff.str(3, std::ios_base::scientific));
}

// ---------------------------------------------------------------- expand

struct ExpandOptions {
    std::string what = "sigma";  // sigma, wp, dwp, zeta, F1, Ln, xi, theta
    int n = 2;
    int order = 12;
    std::pair<int, int> orders{6, 6};
};

inline json expand_results(const CurveData& c, const ExpandOptions& o) {
    json res = json::array();
    auto series_row = [&](const std::string& name, const XSeries& s) {
        res.push_back({{"name", name}, {"series", s.serialize()}, {"text", s.to_string()}});
    };
    if (o.what == "sigma") {
        series_row("sigma", sigma_series(c, o.order));
    } else if (o.what == "wp" || o.what == "dwp" || o.what == "zeta" || o.what == "F1") {
        WpFamily w = wp_family(c, o.order);
        series_row(o.what, o.what == "wp" ? w.wp : o.what == "dwp" ? w.dwp : o.what == "zeta" ? w.zeta : w.F1);
    } else if (o.what == "Ln") {
        if (o.n < 0 || o.n > 16) throw ConfigError("--n must lie in 0..16");
        ConnectionTable T(c, o.n);
        XiExpansion x = xi_expand(c, std::max(4, o.order), std::max(4, o.n + 1));
        res.push_back({{"name", "L" + std::to_string(o.n)},
                       {"algebraic", T.L(o.n).to_string()},
                       {"series", x.L[o.n].truncated(o.order).serialize()}});
    } else if (o.what == "xi" || o.what == "theta") {
        auto [oz, ow] = o.orders;
        XiExpansion x = xi_expand(c, std::max(4, oz), std::max(4, ow));
        XSeries2 s = o.what == "xi" ? x.xi : x.theta();
        for (int j = -1; j + 1 < ow; ++j) {
            XSeries row = s.row(j).truncated(oz);
            res.push_back({{"name", "w^" + std::to_string(j)}, {"series", row.serialize()}, {"text", row.to_string()}});
        }
    } else {
        throw ConfigError("unknown --what '" + o.what + "' (sigma, wp, dwp, zeta, F1, Ln, xi, theta)");
    }
    return res;
}

inline Report cmd_expand(const RunConfig& cfg, const ExpandOptions& o) {
    Report r;
    r.command = "expand";
    CurveData c = cfg.curve_data();
    r.params = {{"curve", c.name}, {"what", o.what}, {"n", o.n}, {"order", o.order},
                {"orders", {o.orders.first, o.orders.second}}};
    Cache cache = open_cache(cfg);
    auto key = curve_params(c);
    key["what"] = o.what;
    key["n"] = std::to_string(o.n);
    key["order"] = std::to_string(o.order);
    key["orders"] = std::to_string(o.orders.first) + "," + std::to_string(o.orders.second);
    std::string module = o.what == "xi" || o.what == "theta" || o.what == "Ln" ? "kronecker" : "weierstrass";
    if (auto hit = cache.get(module, "expand", key)) {
        r.results = json::parse(*hit);
        r.metadata["cache"] = "hit";
    } else {
        r.results = expand_results(c, o);
        cache.put(module, "expand", key, r.results.dump());
        r.metadata["cache"] = cache.enabled() ? "miss" : "off";
    }
    for (const auto& row : r.results) {
        std::string name = row["name"];
        if (row.contains("algebraic")) r.text.push_back(name + " = " + row["algebraic"].get<std::string>());
        else r.text.push_back(name + " = " + row["text"].get<std::string>());
    }
    return r;
}

// ---------------------------------------------------------------- eisenstein

struct EisensteinOptions {
    int a = 0, b = 0;
    std::string z0 = "lattice";
    std::string pi;
    bool numeric_only = false, exact_only = false, recompute = false;
    int digits = 30;
    double tol = 1e-8;
};

// The persistent table of exact values for one curve.
class StoredEKTable {
public:
    StoredEKTable(const Cache& cache, const CurveData& c) : cache_(cache), key_(curve_params(c)) {
        if (auto hit = cache_.get("kronecker", "ektable", key_)) {
            std::istringstream in(*hit);
            table_ = EKTable::read(in);
        }
    }
    EKTable& table() { return table_; }
    void save() const {
        std::ostringstream out;
        table_.write(out);
        cache_.put("kronecker", "ektable", key_, out.str());
    }

private:
    const Cache& cache_;
    std::map<std::string, std::string> key_;
    EKTable table_;
};

inline Report cmd_eisenstein(const RunConfig& cfg, const EisensteinOptions& o) {
    Report r;
    r.command = "eisenstein";
    if (o.numeric_only && o.exact_only) throw ConfigError("--numeric-only and --exact-only exclude each other");
    CurveData c = cfg.curve_data();
    TorsionPoint t = parse_point(c, o.z0);
    std::string id = t.P.inf ? "O" : point_id(t.P);
    r.params = {{"curve", c.name}, {"a", o.a}, {"b", o.b}, {"z0", id}, {"digits", o.digits}};
    json row = {{"a", o.a}, {"b", o.b}, {"z0", id}};
    std::string line = "e*_{" + std::to_string(o.a) + "," + std::to_string(o.b) + "}(" + id + ")";

    std::optional<ExactScalar> exact;
    bool want_exact = !o.numeric_only && o.a >= 0 && o.b >= 0;
    if (o.exact_only && !want_exact) throw ConfigError("exact values need a, b >= 0");
    if (want_exact) {
        check_e2star(c);
        Cache cache = open_cache(cfg);
        StoredEKTable st(cache, c);
        const EKTable::Entry* e = st.table().find(o.a, o.b, id);
        if (e && !o.recompute) {
            exact = e->value;
            r.metadata["cache"] = "hit";
        } else {
            EKEngine eng(c, parse_pi(c, o.pi), std::max(o.b, 1));
            exact = eng.value(t, o.a, o.b);
            st.table().insert(o.a, o.b, id, *exact, "laurent");  // CrossCheckError on a changed value
            st.save();
            r.metadata["cache"] = cache.enabled() ? (e ? "verified" : "miss") : "off";
        }
        row["exact_over_A^a"] = exact->to_string();
        row["exact_serialized"] = exact->serialize();
        line += "/A^" + std::to_string(o.a) + " = " + exact->to_string();
    }
    if (!o.exact_only) {
        LatticeData L = lattice_of_curve(c);
        EKLEvaluator ekl(L, o.digits);
        Cx z0 = elliptic_log(L, t.P);
        EKLValue v = ekl.e_star(o.a, o.b, z0);
        double bound = v.bound.convert_to<double>();
        row["numeric"] = cx_json(v.value, bound);
        Cx scaled = v.value / exp(Cx(log(L.A())) * Cx(Real(o.a)));
        row["numeric_over_A^a"] = cx_json(scaled);
        if (exact) {
            double diff = abs(scaled - to_cx(*exact)).convert_to<double>();
            bool ok = diff < o.tol;
            row["difference"] = diff;
            row["match"] = ok;
            r.failed = !ok;
            line += "  numeric " + cx_str(scaled) + "  |diff| " + detail::fmt(diff) + (ok ? "  match" : "  MISMATCH");
        } else {
            line += " = " + cx_str(v.value) + "  (bound " + detail::fmt(bound) + ")";
        }
    }
    r.results.push_back(row);
    r.text.push_back(line);
    return r;
}

// ---------------------------------------------------------------- padic

struct PadicOptions {
    long p = 13;
    std::string pi;
    std::string z0 = "2tor:1";
    int target = 6;
    int slack = 16;
    int table = 0;
    std::vector<std::string> moments;  // "a=2,b=1"
    std::vector<std::string> ehat;     // "m=1,b=2"
    bool smoke = false;
};

inline std::string distinguished_text(const DistinguishedPoly& dp) {
    std::string s = "degree " + std::to_string(dp.degree) + " certified " + std::to_string(dp.certified) + "\n";
    for (const auto& a : dp.coeffs) s += a.serialize() + "\n";
    return s;
}

inline json ledger_json(const PrecisionLedger& l) {
    json j = json::object();
    for (const auto& [k, v] : l.entries()) j[k] = v;
    return j;
}

inline Report cmd_padic(const RunConfig& cfg, const PadicOptions& o) {
    Report r;
    r.command = "padic";
    CurveData c = cfg.curve_data();
    if (c.d <= 0) throw ConfigError("the p-adic pipeline needs a CM curve");
    check_e2star(c);
    ExactScalar pi = parse_pi(c, o.pi);
    if (o.smoke && o.pi.empty()) pi = ExactScalar(-o.p);
    int target = o.smoke && o.target == 6 ? 1 : o.target;
    TorsionPoint t = parse_point(c, o.z0);
    if (t.P.inf) throw ConfigError("the p-adic pipeline needs z0 outside the lattice");
    std::string id = point_id(t.P);
    if (target < 1) throw ConfigError("--target must be >= 1");
    SplitPrimeData sp(c.d, o.p, pi, std::max(60, target + 30));
    r.params = {{"curve", c.name}, {"p", o.p},           {"pi", pi.to_string()}, {"z0", id},
                {"target", target}, {"slack", o.slack},  {"table", o.table},     {"smoke", o.smoke}};
    Cache cache = open_cache(cfg);
    auto key = curve_params(c);
    key["p"] = std::to_string(o.p);
    key["pi"] = pi.serialize();

    std::vector<std::pair<int, int>> moments, ehats;
    for (const auto& s : o.moments) moments.push_back(parse_pair(s, "a", "b"));
    for (const auto& s : o.ehat) ehats.push_back(parse_pair(s, "m", "b"));
    if (o.smoke && ehats.empty())
        for (int b = 1; b <= 2; ++b)
            for (int m = 0; m <= 2; ++m) ehats.push_back({m, b});

    auto tkey = key;
    tkey["z0"] = id;
    tkey["target"] = std::to_string(target);
    tkey["slack"] = std::to_string(o.slack);
    tkey["degree"] = std::to_string(o.table);
    std::optional<json> cached_table;
    if (o.table > 0)
        if (auto hit = cache.get("padicpolylog", "table", tkey)) cached_table = json::parse(*hit);
    bool need_pipeline = !moments.empty() || !ehats.empty() || o.smoke || (o.table > 0 && !cached_table);

    auto table_rows = [&](const json& payload) {
        std::istringstream in(payload["table"].get<std::string>());
        std::string l;
        r.text.push_back("# degree " + std::to_string(o.table) + " specialization, " +
                         payload["normalization"].get<std::string>() + " normalization: m k row digits precision");
        while (std::getline(in, l)) {
            std::istringstream ls(l);
            int m, k, prec;
            std::string row, digits;
            ls >> m >> k >> row >> digits >> prec;
            r.results.push_back({{"kind", "table"}, {"m", m}, {"k", k}, {"row", row}, {"digits", digits}, {"precision", prec}});
            r.text.push_back(l);
        }
        for (const auto& s : payload["suppressed"]) {
            r.results.push_back({{"kind", "suppressed"}, {"m", s[0]}, {"k", s[1]}, {"row", "omega"}});
            r.text.push_back("# suppressed " + s[0].dump() + " " + s[1].dump() + " omega (F^0)");
        }
        r.metadata["table_text"] = payload["table"];
    };

    if (!need_pipeline) {
        r.ledger = (*cached_table)["ledger"];
        table_rows(*cached_table);
        for (const auto& [k, v] : r.ledger.items()) r.text.push_back("ledger " + k + " " + v.dump());
        r.metadata["cache"] = "hit";
        return r;
    }

    with_slack_retries(c, sp, target, [&](PadicPolylog& pl) {
        r.metadata["slack_used"] = pl.slack();
        r.metadata["order"] = pl.order();
        // the distinguished polynomial is cached as an integrity record
        auto dkey = key;
        dkey["order"] = std::to_string(pl.order());
        std::string dtext = distinguished_text(pl.distinguished());
        if (auto prev = cache.get("formalgroup", "distinguished", dkey)) {
            if (*prev != dtext) throw CrossCheckError("recomputed distinguished polynomial differs from the cache");
        } else {
            cache.put("formalgroup", "distinguished", dkey, dtext);
        }

        if (!moments.empty()) {
            EKEngine eng(c, pi, 6);
            TorsionPoint pt = make_torsion_point(c, cm_mul(c, pi, t.P));
            ExactScalar pibar = pi.conj();
            for (auto [a, b] : moments) {
                PadicScalar got = pl.moment(t.P, a, b);
                ExactScalar rhs = eng.value(t, a, b) - pi.pow(a) * eng.value(pt, a, b) / pibar.pow(b);
                if ((a + b - 1) % 2) rhs = -rhs;
                bool ok = got.equals_at_precision(sp.embed(rhs));
                r.failed |= !ok;
                json row = {{"kind", "moment"}, {"a", a}, {"b", b}, {"value", padic_json(got)},
                            {"exact_rhs", rhs.to_string()}, {"agree", ok}};
                r.results.push_back(row);
                r.text.push_back("moment a=" + std::to_string(a) + " b=" + std::to_string(b) + ": " + got.to_string() +
                                 (ok ? "  agrees with the exact side" : "  DISAGREES with " + rhs.to_string()));
            }
        }
        for (auto [m, b] : ehats) {
            const EhatSeries& e = pl.ehat(t.P, m, b);
            json audit = json::array();
            int worst = INT_MAX;
            for (const auto& s : e.audit) {
                audit.push_back({{"value", s.value.serialize()}, {"certified", s.certified}});
                worst = std::min(worst, s.certified);
            }
            r.results.push_back({{"kind", "ehat"}, {"m", m}, {"b", b}, {"value", padic_json(e.value)},
                                 {"certified", e.certified}, {"audit", audit}});
            r.text.push_back("Ehat_{" + std::to_string(m) + "," + std::to_string(b) + "}(0) = " + e.value.to_string() +
                             "  audit certified >= " + std::to_string(worst));
        }
        if (o.table > 0) {
            SpecializationTable tab = specialization_table(pl, t.P, o.table);
            json sup = json::array();
            for (auto [m, n] : tab.suppressed) sup.push_back({m, n});
            json payload = {{"table", tab.serialize()}, {"normalization", tab.normalization}, {"suppressed", sup},
                            {"ledger", ledger_json(pl.ledger())}};
            if (cached_table && (*cached_table)["table"] != payload["table"])
                throw CrossCheckError("recomputed specialization table differs from the cache");
            if (!cached_table) cache.put("padicpolylog", "table", tkey, payload.dump());
            table_rows(payload);
        }
        r.ledger = ledger_json(pl.ledger());
        for (const auto& [k, v] : pl.ledger().entries()) r.text.push_back("ledger " + k + " " + std::to_string(v));
        return 0;
    }, o.slack);
    return r;
}

}  // namespace ekpoly::cli
