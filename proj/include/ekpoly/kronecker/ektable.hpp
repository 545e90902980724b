#pragma once

#include <ekpoly/kronecker/translated.hpp>

#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

namespace ekpoly {

// Exact e*_{a,b}(z0)/A^a for a, b >= 0 read off the Laurent coefficients of F_{z0,b}:
//   coefficient of z^a = (-1)^(a+b-1) e*_{a,b}(z0) / (a! A^a).
class EKEngine {
public:
    EKEngine(const CurveData& c, const ExactScalar& pi, int bmax)
        : c_(c), pi_(pi), table_(c, std::max(bmax, 1)), bmax_(bmax) {}

    const CurveData& curve() const { return c_; }
    const ConnectionTable& table() const { return table_; }

    const RationalMap& f1p() {
        if (!f1p_) f1p_ = f1p_rational_checked(c_, pi_);
        return *f1p_;
    }

    ExactScalar seed(const Point& z0) {
        for (const auto& [P, s] : seeds_)
            if (P == z0) return s;
        ExactScalar s = coleman_seed(c_, z0, pi_, f1p());
        seeds_.emplace_back(z0, s);
        return s;
    }

    // F_{z0,b} below order M; z0 = O gives F_b.
    XSeries generating(const TorsionPoint& z0, int b, int M) {
        if (b < 0 || b > bmax_) throw DomainError("b out of range for this engine");
        if (z0.P.inf) return xi_expand(c_, std::max(4, M), std::max(4, b + 1)).F[b].truncated(M);
        return f_translated(c_, table_, z0, b, seed(z0.P), M).series;
    }

    ExactScalar value(const TorsionPoint& z0, int a, int b) {
        if (a < 0) throw DomainError("exact Eisenstein-Kronecker numbers need a >= 0");
        return from_coefficient(generating(z0, b, a + 1).at(a), a, b);
    }

    // All a <= amax for one b from a single expansion.
    std::vector<ExactScalar> column(const TorsionPoint& z0, int amax, int b) {
        XSeries f = generating(z0, b, amax + 1);
        std::vector<ExactScalar> r;
        for (int a = 0; a <= amax; ++a) r.push_back(from_coefficient(f.at(a), a, b));
        return r;
    }

    static ExactScalar from_coefficient(const ExactScalar& coef, int a, int b) {
        mpz_class f = 1;
        for (int k = 2; k <= a; ++k) f *= k;
        ExactScalar v = coef * ExactScalar(mpq_class(f));
        return (a + b - 1) % 2 == 0 ? v : -v;
    }

private:
    CurveData c_;
    ExactScalar pi_;
    ConnectionTable table_;
    int bmax_;
    std::optional<RationalMap> f1p_;
    std::vector<std::pair<Point, ExactScalar>> seeds_;
};

inline ExactScalar ek_exact(const CurveData& c, const TorsionPoint& z0, int a, int b, const ExactScalar& pi) {
    EKEngine e(c, pi, b);
    return e.value(z0, a, b);
}

// Append-only table of exact values keyed by (a, b, point id).
class EKTable {
public:
    struct Entry {
        ExactScalar value;
        std::string provenance;
    };
    using Key = std::tuple<int, int, std::string>;

    // Re-inserting a key must reproduce the stored value.
    void insert(int a, int b, const std::string& id, const ExactScalar& v, const std::string& provenance) {
        if (id.empty() || id.find(' ') != std::string::npos) throw DomainError("point id must be a nonempty word");
        Key k{a, b, id};
        auto it = map_.find(k);
        if (it != map_.end()) {
            if (!(it->second.value == v))
                throw CrossCheckError("recomputed e*(" + std::to_string(a) + "," + std::to_string(b) + ") at " + id +
                                      " differs from the stored value");
            return;
        }
        if (b == 0 && !(v == ExactScalar(a == 0 ? -1 : 0)))
            throw CrossCheckError("e*_{a,0} must be -1 for a = 0 and 0 otherwise");
        map_.emplace(k, Entry{v, provenance});
    }

    const Entry* find(int a, int b, const std::string& id) const {
        auto it = map_.find(Key{a, b, id});
        return it == map_.end() ? nullptr : &it->second;
    }
    size_t size() const { return map_.size(); }
    const std::map<Key, Entry>& entries() const { return map_; }

    void write(std::ostream& out) const {
        for (const auto& [k, e] : map_)
            out << std::get<0>(k) << ' ' << std::get<1>(k) << ' ' << std::get<2>(k) << ' ' << e.value.serialize() << ' '
                << e.provenance << '\n';
    }

    // fields: every tower a stored value may live in; Q and K are resolved from the tag.
    static EKTable read(std::istream& in, const std::vector<FieldPtr>& fields = {}) {
        EKTable t;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            int a, b;
            std::string id, val, prov;
            if (!(ls >> a >> b >> id >> val >> prov)) throw ConfigError("malformed table line: " + line);
            std::string tag = val.substr(0, val.rfind(':'));
            FieldPtr F;
            if (tag == "Q") F = NumberField::rationals();
            else if (tag.size() > 1 && tag[0] == 'K' && tag.find('(') == std::string::npos)
                F = NumberField::quadratic(std::stol(tag.substr(1)));
            else
                for (const auto& f : fields)
                    if (f->tag() == tag) F = f;
            if (!F) throw ConfigError("unknown field in table: " + tag);
            t.insert(a, b, id, ExactScalar::deserialize(val, F), prov);
        }
        return t;
    }

private:
    std::map<Key, Entry> map_;
};

}  // namespace ekpoly
