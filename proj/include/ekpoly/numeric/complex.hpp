#pragma once

// Minimal complex arithmetic over an arbitrary real type (boost mpfr numbers
// in practice; std::complex is not specified for non-builtin reals).

#include <boost/multiprecision/mpfr.hpp>

#include <ostream>
#include <string>

namespace ekpoly {

using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<50, boost::multiprecision::allocate_stack>,
    boost::multiprecision::et_off>;

using VarReal = boost::multiprecision::mpfr_float;

template <class R>
struct Complex {
    R re{0};
    R im{0};

    Complex() = default;
    Complex(const R& r) : re(r), im(0) {}
    Complex(const R& r, const R& i) : re(r), im(i) {}
    Complex(int r) : re(r), im(0) {}
    Complex(double r, double i) : re(r), im(i) {}

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        R r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        R den = o.re * o.re + o.im * o.im;
        R r = (re * o.re + im * o.im) / den;
        im = (im * o.re - re * o.im) / den;
        re = r;
        return *this;
    }
    Complex& operator*=(const R& s) { re *= s; im *= s; return *this; }
    Complex& operator/=(const R& s) { re /= s; im /= s; return *this; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const R& s) { return a *= s; }
    friend Complex operator*(const R& s, Complex a) { return a *= s; }
    friend Complex operator/(Complex a, const R& s) { return a /= s; }
    friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <class R> R abs_real(const R& x) { return x < 0 ? R(-x) : x; }

template <class R> Complex<R> conj(const Complex<R>& z) { return {z.re, -z.im}; }
template <class R> R norm2(const Complex<R>& z) { return z.re * z.re + z.im * z.im; }
template <class R> R abs(const Complex<R>& z) { using std::sqrt; return sqrt(norm2(z)); }
template <class R> R arg(const Complex<R>& z) { using std::atan2; return atan2(z.im, z.re); }

template <class R>
Complex<R> exp(const Complex<R>& z) {
    using std::exp; using std::cos; using std::sin;
    R m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

template <class R>
Complex<R> log(const Complex<R>& z) {
    using std::log;
    return {log(abs(z)), arg(z)};
}

template <class R>
Complex<R> sqrt(const Complex<R>& z) {
    using std::sqrt;
    R r = abs(z);
    if (r == 0) return {};
    R a = sqrt((r + abs_real(z.re)) / 2);
    if (z.re >= 0) return {a, z.im / (2 * a)};
    R b = z.im >= 0 ? a : R(-a);
    return {z.im / (2 * b), b};
}

template <class R>
Complex<R> pow(Complex<R> z, long n) {
    if (n < 0) return Complex<R>(1) / pow(z, -n);
    Complex<R> r(1);
    while (n) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

// z^s on the principal branch.
template <class R>
Complex<R> cpow(const Complex<R>& z, const Complex<R>& s) {
    return exp(s * log(z));
}

template <class R>
std::ostream& operator<<(std::ostream& os, const Complex<R>& z) {
    return os << z.re << (z.im < 0 ? " - " : " + ") << abs_real(z.im) << "i";
}

template <class R>
std::string to_string(const Complex<R>& z, int digits) {
    auto s = [digits](const R& x) { return x.str(digits, std::ios_base::scientific); };
    return s(z.re) + (z.im < 0 ? "-" : "+") + s(abs_real(z.im)) + "i";
}

using Cx = Complex<Real>;

}  // namespace ekpoly
