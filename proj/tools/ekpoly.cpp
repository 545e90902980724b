#include "suites.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace ekpoly;
using namespace ekpoly::cli;

namespace {

enum Exit { kOk = 0, kFail = 1, kConfig = 2, kPrecision = 3 };

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--curve", cfg.curve, "curve preset name (gauss, g3only, mixed, or one from --presets)");
    sub->add_option("--presets", cfg.presets, "preset file with name/g2/g3/d/e2star blocks");
    sub->add_option("--cache-dir", cfg.cache_dir, "cache directory (default: $EKPOLY_CACHE_DIR or ~/.cache/ekpoly)");
    sub->add_flag("--no-cache", cfg.no_cache, "neither read nor write the cache");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eisenstein-Kronecker numbers, elliptic polylogarithms and their p-adic realizations"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    RunConfig cfg;

    ExpandOptions ex;
    std::string orders;
    auto* expand = app.add_subcommand("expand", "Laurent expansions: sigma, wp, dwp, zeta, F1, Ln, xi, theta");
    add_common(expand, cfg);
    expand->add_option("--what", ex.what, "object to expand");
    expand->add_option("--n", ex.n, "index of L_n");
    expand->add_option("--order", ex.order, "truncation order in z");
    expand->add_option("--orders", orders, "z,w orders for xi and theta");

    EisensteinOptions ei;
    auto* eis = app.add_subcommand("eisenstein", "Eisenstein-Kronecker numbers, exact and numeric side by side");
    add_common(eis, cfg);
    eis->add_option("--a", ei.a, "index a");
    eis->add_option("--b", ei.b, "index b");
    eis->add_option("--z0", ei.z0, "lattice, <n>tor:<k> or x,y");
    eis->add_option("--pi", ei.pi, "split prime generator used by the exact route");
    eis->add_option("--digits", ei.digits, "numeric target digits");
    eis->add_option("--tol", ei.tol, "agreement tolerance");
    eis->add_flag("--numeric-only", ei.numeric_only);
    eis->add_flag("--exact-only", ei.exact_only);
    eis->add_flag("--recompute", ei.recompute, "recompute a cached exact value and check it");

    PadicOptions pa;
    auto* padic = app.add_subcommand("padic", "p-adic moments, Ehat values and the specialization table");
    add_common(padic, cfg);
    padic->add_option("--p", pa.p, "prime");
    padic->add_option("--pi", pa.pi, "generator of the prime above p (N(pi) = p split, p^2 inert)");
    padic->add_option("--z0", pa.z0, "torsion point: <n>tor:<k> or x,y");
    padic->add_option("--target", pa.target, "target absolute precision p^target");
    padic->add_option("--slack", pa.slack, "extra truncation order");
    padic->add_option("--table", pa.table, "degree of the specialization table");
    padic->add_option("--moment", pa.moments, "a=<int>,b=<int> (repeatable)");
    padic->add_option("--ehat", pa.ehat, "m=<int>,b=<int> (repeatable)");
    padic->add_flag("--smoke", pa.smoke, "inert smoke run (pi = -p, target 1)");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run acceptance suites; nonzero exit on any failure");
    add_common(verify, cfg);
    verify->add_option("--suite", suite, "exact, analytic, padic or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        cfg.validate();
        Report r;
        if (*expand) {
            if (!orders.empty()) ex.orders = parse_pair(orders, "z", "w");
            r = cmd_expand(cfg, ex);
        } else if (*eis) {
            r = cmd_eisenstein(cfg, ei);
        } else if (*padic) {
            r = cmd_padic(cfg, pa);
        } else {
            r = cmd_verify(cfg, suite, cfg.format == "text" ? nullptr : &std::cerr);
        }
        r.metadata["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(r, cfg.format, std::cout);
        return r.failed ? kFail : kOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const UnknownIdentity& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        return kPrecision;
    } catch (const PrecisionError& e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        return kPrecision;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    }
}
