#pragma once

#include <ekpoly/exactnum/exact_scalar.hpp>
#include <ekpoly/exactnum/padic.hpp>

namespace ekpoly {

// Helpers letting series code create constants in the scalar domain of an
// existing value (the p-adic field, or Q which promotes on contact).

inline bool scalar_is_zero(const ExactScalar& x) { return x.is_zero(); }
inline ExactScalar scalar_zero(const ExactScalar&) { return ExactScalar(0); }
inline ExactScalar scalar_from_int(long n, const ExactScalar&) { return ExactScalar(n); }
inline ExactScalar scalar_from_rational(const mpq_class& q, const ExactScalar&) { return ExactScalar(q); }
inline std::string scalar_serialize(const ExactScalar& x) { return x.to_string(); }
inline bool scalar_invertible(const ExactScalar& x) { return !x.is_zero(); }
inline int scalar_absprec(const ExactScalar&) { return INT_MAX; }

inline bool scalar_is_zero(const PadicScalar& x) { return x.is_exact_zero(); }
inline PadicScalar scalar_zero(const PadicScalar& c) { return PadicScalar::exact_zero(c.field()); }
inline PadicScalar scalar_from_int(long n, const PadicScalar& c) {
    if (n == 0) return PadicScalar::exact_zero(c.field());
    return PadicScalar::from_int(c.field(), n);
}
inline PadicScalar scalar_from_rational(const mpq_class& q, const PadicScalar& c) {
    return PadicScalar::from_rational(c.field(), q);
}
inline std::string scalar_serialize(const PadicScalar& x) { return x.serialize(); }
inline bool scalar_invertible(const PadicScalar& x) { return !x.is_zero(); }
inline int scalar_absprec(const PadicScalar& x) { return x.absprec(); }

}  // namespace ekpoly
