#pragma once

#include <ekpoly/analytic.hpp>
#include <ekpoly/padicpolylog.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace ekpoly::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

inline const char* version() { return EKPOLY_VERSION; }

// Settings shared by every command.  Validated before any computation.
struct RunConfig {
    std::string curve = "gauss";
    std::string presets;  // optional preset file merged over the built-in ones
    std::string cache_dir;
    std::string format = "text";
    bool no_cache = false;

    CurveData curve_data() const {
        auto all = builtin_presets();
        if (!presets.empty()) {
            std::ifstream in(presets);
            if (!in) throw ConfigError("cannot open preset file '" + presets + "'");
            for (auto& [k, v] : parse_presets(in)) all[k] = v;
        }
        auto it = all.find(curve);
        if (it == all.end()) throw ConfigError("unknown curve preset '" + curve + "'");
        return it->second;
    }

    void validate() const {
        if (format != "text" && format != "json" && format != "csv")
            throw ConfigError("format must be text, json or csv");
        curve_data();
    }
};

inline fs::path default_cache_dir() {
    if (const char* e = std::getenv("EKPOLY_CACHE_DIR"); e && *e) return e;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "ekpoly";
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "ekpoly";
    return fs::temp_directory_path() / "ekpoly-cache";
}

// Default split prime generator for the presets (N(pi) = p).
inline ExactScalar default_pi(const CurveData& c) {
    if (c.pi) return *c.pi;
    if (c.d == 1) return ExactScalar::quad(1, 3, 2);
    if (c.d == 3) return ExactScalar::quad(3, 2, 1);
    throw ConfigError("curve '" + c.name + "' has no CM data; pass --pi");
}

inline ExactScalar parse_pi(const CurveData& c, const std::string& s) {
    if (s.empty()) return default_pi(c);
    if (c.d <= 0) throw ConfigError("pi needs a CM curve");
    return parse_scalar(s, c.d);
}

// "lattice" / "O", "<n>tor:<k>" (k-th nonzero n-torsion point over K), or "x,y".
inline TorsionPoint parse_point(const CurveData& c, const std::string& s) {
    if (s == "lattice" || s == "O" || s == "0") return make_torsion_point(c, Point::origin());
    auto tor = s.find("tor:");
    if (tor != std::string::npos) {
        int n = 0, k = 0;
        try {
            n = std::stoi(s.substr(0, tor));
            k = std::stoi(s.substr(tor + 4));
        } catch (const std::exception&) {
            throw ConfigError("bad torsion selector '" + s + "'");
        }
        FieldPtr F = c.d > 0 ? NumberField::quadratic(c.d) : NumberField::rationals();
        auto pts = torsion_points(c, n, F);
        if (k < 1 || k >= int(pts.size()))
            throw ConfigError(std::to_string(n) + "-torsion has " + std::to_string(pts.size() - 1) + " nonzero points over K");
        return pts[k];
    }
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ConfigError("point must be lattice, <n>tor:<k> or x,y");
    long d = std::max(c.d, 0L);
    Point P(parse_scalar(s.substr(0, comma), d), parse_scalar(s.substr(comma + 1), d));
    if (!c.on_curve(P.x, P.y)) throw ConfigError("point " + P.to_string() + " is not on the curve");
    return make_torsion_point(c, P);
}

// "2,1" or "a=2,b=1"
inline std::pair<int, int> parse_pair(const std::string& s, const std::string& k1, const std::string& k2) {
    std::string t = s;
    for (const std::string& k : {k1 + "=", k2 + "="}) {
        auto p = t.find(k);
        if (p != std::string::npos) t.erase(p, k.size());
    }
    auto comma = t.find(',');
    try {
        if (comma == std::string::npos) throw std::invalid_argument(s);
        return {std::stoi(t.substr(0, comma)), std::stoi(t.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ConfigError("expected " + k1 + "=<int>," + k2 + "=<int>, got '" + s + "'");
    }
}

inline std::string hex64(uint64_t h) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

// FNV-1a, stable across platforms and runs.
inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

// Text entries keyed by (module, op, canonical params, code version).  A file
// whose recorded key or version differs is ignored and later overwritten.
class Cache {
public:
    Cache() = default;
    Cache(fs::path dir, std::string ver = version()) : dir_(std::move(dir)), ver_(std::move(ver)), on_(true) {}

    bool enabled() const { return on_; }
    const fs::path& dir() const { return dir_; }

    static std::string canonical(const std::map<std::string, std::string>& params) {
        std::string s;
        for (const auto& [k, v] : params) s += (s.empty() ? "" : "&") + k + "=" + v;
        return s;
    }

    fs::path path_for(const std::string& module, const std::string& op, const std::string& key) const {
        return dir_ / module / (op + "-" + hex64(fnv1a(key)) + ".txt");
    }

    std::optional<std::string> get(const std::string& module, const std::string& op,
                                   const std::map<std::string, std::string>& params) const {
        if (!on_) return std::nullopt;
        std::string key = module + "/" + op + "?" + canonical(params);
        std::ifstream in(path_for(module, op, key), std::ios::binary);
        if (!in) return std::nullopt;
        std::string l1, l2;
        std::getline(in, l1);
        std::getline(in, l2);
        if (l1 != "key " + key || l2 != "version " + ver_) return std::nullopt;
        std::ostringstream body;
        body << in.rdbuf();
        return body.str();
    }

    void put(const std::string& module, const std::string& op, const std::map<std::string, std::string>& params,
             const std::string& payload) const {
        if (!on_) return;
        std::string key = module + "/" + op + "?" + canonical(params);
        fs::path p = path_for(module, op, key);
        fs::create_directories(p.parent_path());
        fs::path tmp = p;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw ConfigError("cannot write cache file " + tmp.string());
            out << "key " << key << "\nversion " << ver_ << "\n" << payload;
        }
        fs::rename(tmp, p);
    }

private:
    fs::path dir_;
    std::string ver_;
    bool on_ = false;
};

inline Cache open_cache(const RunConfig& cfg) {
    if (cfg.no_cache) return Cache();
    return Cache(cfg.cache_dir.empty() ? default_cache_dir() : fs::path(cfg.cache_dir));
}

inline std::map<std::string, std::string> curve_params(const CurveData& c) {
    return {{"curve", c.name}, {"g2", c.g2.serialize()}, {"g3", c.g3.serialize()}, {"d", std::to_string(c.d)},
            {"e2star", c.e2star.serialize()}};
}

inline std::string cx_str(const Cx& z, int digits = 20) { return to_string(z, digits); }

}  // namespace ekpoly::cli
