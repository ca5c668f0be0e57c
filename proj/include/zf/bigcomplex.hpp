#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include "zf/numbers.hpp"

namespace zf {

// Arbitrary-precision real; precision is set per value at construction from
// BigFloat::default_precision() (decimal digits).
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

inline int digits_for_bits(int bits) { return static_cast<int>(bits * 0.30103) + 4; }

// Minimal complex type over BigFloat; std::complex is not specified for
// user-defined scalars.
struct BigComplex {
    BigFloat re, im;

    BigComplex() : re(0), im(0) {}
    BigComplex(const BigFloat& r) : re(r), im(0) {}
    BigComplex(const BigFloat& r, const BigFloat& i) : re(r), im(i) {}
    BigComplex(double r, double i = 0.0) : re(r), im(i) {}

    static BigComplex from_cd(CD z) { return {BigFloat(z.real()), BigFloat(z.imag())}; }
    CD to_cd() const { return {re.convert_to<double>(), im.convert_to<double>()}; }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend BigComplex operator*(const BigFloat& s, const BigComplex& a) { return {s * a.re, s * a.im}; }
    friend BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
    BigComplex& operator+=(const BigComplex& b) { return *this = *this + b; }
    BigComplex& operator-=(const BigComplex& b) { return *this = *this - b; }
    BigComplex& operator*=(const BigComplex& b) { return *this = *this * b; }

    BigFloat norm2() const { return re * re + im * im; }
    BigFloat abs() const { return sqrt(norm2()); }
    bool is_zero() const { return re == 0 && im == 0; }
};

}  // namespace zf
