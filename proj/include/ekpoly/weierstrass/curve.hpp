#pragma once

#include <ekpoly/weierstrass/poly.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace ekpoly {

// y^2 = 4x^3 - g2 x - g3 over K = Q(sqrt(-d)), with the weight-2 constant e2*.
// d = 0 marks a curve used without CM data (expansions only).
struct CurveData {
    std::string name;
    ExactScalar g2, g3;
    long d = 1;
    ExactScalar e2star;
    std::optional<ExactScalar> pi;

    CurveData() = default;
    CurveData(std::string n, ExactScalar a, ExactScalar b, long dd, ExactScalar e2 = ExactScalar(0))
        : name(std::move(n)), g2(std::move(a)), g3(std::move(b)), d(dd), e2star(std::move(e2)) {
        validate();
    }

    ExactScalar discriminant() const { return g2.pow(3) - ExactScalar(27) * g3 * g3; }

    void validate() const {
        if (discriminant().is_zero()) throw ValidationError("singular curve: g2^3 - 27 g3^2 = 0");
        if ((d == 1 || d == 3) && !e2star.is_zero())
            throw ValidationError("e2* must be 0 for d = 1 or 3");
    }

    // 4x^3 - g2 x - g3
    Poly cubic() const { return Poly({-g3, -g2, ExactScalar(0), ExactScalar(4)}); }

    bool on_curve(const ExactScalar& x, const ExactScalar& y) const { return y * y == cubic().eval(x); }

    static CurveData gauss() { return CurveData("gauss", ExactScalar(4), ExactScalar(0), 1, ExactScalar(0)); }
};

// Parses "a", "a/b", "a+bi", "a-b*i", "bi", "-i" style scalars in Q(sqrt(-d)).
inline ExactScalar parse_scalar(std::string s, long d) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') t += ch;
    if (t.empty()) throw ConfigError("empty scalar");
    auto rat = [&](const std::string& u) -> mpq_class {
        if (u.empty() || u == "+") return 1;
        if (u == "-") return -1;
        mpq_class q;
        std::string v = u[0] == '+' ? u.substr(1) : u;
        if (q.set_str(v, 10) != 0) throw ConfigError("bad rational '" + u + "'");
        q.canonicalize();
        return q;
    };
    mpq_class re = 0, im = 0;
    size_t start = 0;
    for (size_t k = 1; k <= t.size(); ++k) {
        if (k == t.size() || ((t[k] == '+' || t[k] == '-') && t[k - 1] != '/')) {
            std::string term = t.substr(start, k - start);
            if (!term.empty() && term.back() == 'i') {
                im += rat(term.substr(0, term.size() - 1));
            } else {
                re += rat(term);
            }
            start = k;
        }
    }
    if (im != 0) {
        if (d <= 0) throw ConfigError("imaginary unit in a rational field");
        return ExactScalar::quad(d, re, im);
    }
    return ExactScalar(re);
}

// Curve presets file: blocks of key=value lines (name, g2, g3, d, e2star),
// separated by blank lines.  '#' starts a comment.
inline std::map<std::string, CurveData> parse_presets(std::istream& in) {
    std::map<std::string, CurveData> out;
    std::map<std::string, std::string> kv;
    auto flush = [&]() {
        if (kv.empty()) return;
        for (const auto& [k, v] : kv)
            if (k != "name" && k != "g2" && k != "g3" && k != "d" && k != "e2star")
                throw ConfigError("unknown preset key '" + k + "'");
        if (!kv.count("name") || !kv.count("g2") || !kv.count("g3") || !kv.count("d"))
            throw ConfigError("preset needs name, g2, g3, d");
        long d = std::stol(kv["d"]);
        ExactScalar e2 = kv.count("e2star") ? parse_scalar(kv["e2star"], d) : ExactScalar(0);
        CurveData c(kv["name"], parse_scalar(kv["g2"], d), parse_scalar(kv["g3"], d), d, e2);
        out[c.name] = c;
        kv.clear();
    };
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        auto eq = line.find('=');
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) {
            flush();
            continue;
        }
        if (eq == std::string::npos) throw ConfigError("preset line without '=': " + line);
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    flush();
    return out;
}

inline std::map<std::string, CurveData> builtin_presets() {
    std::istringstream in(
        "name=gauss\ng2=4\ng3=0\nd=1\ne2star=0\n\n"
        "name=g3only\ng2=0\ng3=4\nd=3\ne2star=0\n\n"
        "name=mixed\ng2=1\ng3=1\nd=0\n");
    return parse_presets(in);
}

}  // namespace ekpoly
