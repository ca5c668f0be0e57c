#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace zf {

using Int = mpz_class;
using Rat = mpq_class;
using CD = std::complex<double>;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// floor(x^(1/e)) for x >= 0
inline Int int_root(const Int& x, unsigned long e) {
    Int r;
    mpz_root(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

inline double to_double(const Int& x) { return x.get_d(); }
inline double to_double(const Rat& x) { return x.get_d(); }

// Complex numbers over exact rationals (the field Q(i)); used where tests
// need decomposition identities to hold exactly rather than to rounding.
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(const Rat& r) : re(r), im(0) {}
    GaussRat(const Rat& r, const Rat& i) : re(r), im(i) {}
    GaussRat(long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {Rat(a.re + b.re), Rat(a.im + b.im)};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {Rat(a.re - b.re), Rat(a.im - b.im)};
    }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {Rat(a.re * b.re - a.im * b.im), Rat(a.re * b.im + a.im * b.re)};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat d = b.re * b.re + b.im * b.im;
        if (d == 0) throw std::domain_error("GaussRat: division by zero");
        return {Rat((a.re * b.re + a.im * b.im) / d), Rat((a.im * b.re - a.re * b.im) / d)};
    }
    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
    GaussRat& operator/=(const GaussRat& b) { return *this = *this / b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }

    CD to_cd() const { return {re.get_d(), im.get_d()}; }
};

inline double abs2(CD z) { return std::norm(z); }

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace zf
