#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "zf/numbers.hpp"

namespace zf {

// Real interval [lo, hi] with outward directed rounding at a fixed precision.
// All comparisons against it are then rigorous: if hi < x the true value is < x.
class RInterval {
    struct PrecTag {};
    RInterval(PrecTag, mpfr_prec_t prec) : prec_(prec) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }

  public:
    static RInterval with_prec(mpfr_prec_t prec) { return RInterval(PrecTag{}, prec); }
    RInterval() : RInterval(PrecTag{}, 128) {}
    RInterval(long v, mpfr_prec_t prec = 128) : RInterval(PrecTag{}, prec) {
        mpfr_set_si(lo_, v, MPFR_RNDD);
        mpfr_set_si(hi_, v, MPFR_RNDU);
    }
    RInterval(double v, mpfr_prec_t prec = 128) : RInterval(PrecTag{}, prec) {
        mpfr_set_d(lo_, v, MPFR_RNDD);
        mpfr_set_d(hi_, v, MPFR_RNDU);
    }
    RInterval(const Rat& v, mpfr_prec_t prec = 128) : RInterval(PrecTag{}, prec) {
        mpfr_set_q(lo_, v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, v.get_mpq_t(), MPFR_RNDU);
    }
    RInterval(const Int& v, mpfr_prec_t prec = 128) : RInterval(PrecTag{}, prec) {
        mpfr_set_z(lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(hi_, v.get_mpz_t(), MPFR_RNDU);
    }
    RInterval(const RInterval& o) : RInterval(PrecTag{}, o.prec_) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    RInterval(RInterval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    RInterval& operator=(RInterval o) {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~RInterval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    mpfr_prec_t precision() const { return prec_; }
    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

    friend RInterval operator+(const RInterval& a, const RInterval& b) {
        RInterval r = RInterval::with_prec(a.prec_);
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend RInterval operator-(const RInterval& a, const RInterval& b) {
        RInterval r = RInterval::with_prec(a.prec_);
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    friend RInterval operator-(const RInterval& a) {
        RInterval r = RInterval::with_prec(a.prec_);
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }
    friend RInterval operator*(const RInterval& a, const RInterval& b) {
        RInterval r = RInterval::with_prec(a.prec_);
        mpfr_t t;
        mpfr_init2(t, a.prec_);
        // lo = min of the four corner products rounded down
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        // hi = max of the four rounded up
        mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }
    friend RInterval operator/(const RInterval& a, const RInterval& b) {
        if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
            throw std::domain_error("RInterval: division by interval containing 0");
        RInterval r = RInterval::with_prec(a.prec_);
        mpfr_t t;
        mpfr_init2(t, a.prec_);
        mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    // log requires lo > 0
    friend RInterval log(const RInterval& a) {
        if (mpfr_sgn(a.lo_) <= 0) throw std::domain_error("RInterval: log of nonpositive");
        RInterval r = RInterval::with_prec(a.prec_);
        mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }
    friend RInterval exp(const RInterval& a) {
        RInterval r = RInterval::with_prec(a.prec_);
        mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }
    friend RInterval sqrt(const RInterval& a) {
        if (mpfr_sgn(a.lo_) < 0) throw std::domain_error("RInterval: sqrt of negative");
        RInterval r = RInterval::with_prec(a.prec_);
        mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    static RInterval euler(mpfr_prec_t prec = 128) {
        RInterval r = RInterval::with_prec(prec);
        mpfr_set_ui(r.lo_, 1, MPFR_RNDD);
        mpfr_exp(r.lo_, r.lo_, MPFR_RNDD);
        mpfr_set_ui(r.hi_, 1, MPFR_RNDU);
        mpfr_exp(r.hi_, r.hi_, MPFR_RNDU);
        return r;
    }
    static RInterval pi(mpfr_prec_t prec = 128) {
        RInterval r = RInterval::with_prec(prec);
        mpfr_const_pi(r.lo_, MPFR_RNDD);
        mpfr_const_pi(r.hi_, MPFR_RNDU);
        return r;
    }

    // rigorous comparisons; "maybe" answers are the indeterminate zone
    bool certainly_less(const RInterval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
    bool certainly_greater(const RInterval& o) const { return mpfr_cmp(lo_, o.hi_) > 0; }
    bool certainly_le(const RInterval& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }
    bool certainly_ge(const RInterval& o) const { return mpfr_cmp(lo_, o.hi_) >= 0; }

    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

    std::string str(int digits = 20) const {
        char buf[160];
        mpfr_snprintf(buf, sizeof buf, "[%.*Rg, %.*Rg]", digits, lo_, digits, hi_);
        return buf;
    }
    std::string midpoint_str(int digits = 20) const {
        mpfr_t m;
        mpfr_init2(m, prec_);
        mpfr_add(m, lo_, hi_, MPFR_RNDN);
        mpfr_div_ui(m, m, 2, MPFR_RNDN);
        char buf[96];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, m);
        mpfr_clear(m);
        return buf;
    }

    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

  private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

inline RInterval pow_int(const RInterval& a, long e, mpfr_prec_t prec = 128) {
    RInterval r(1L, prec);
    RInterval base = a;
    bool invert = e < 0;
    unsigned long n = invert ? -(unsigned long)e : (unsigned long)e;
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    if (invert) r = RInterval(1L, prec) / r;
    return r;
}

// Tri-state verdict for an inequality checked in intervals; ties fail closed.
enum class Verdict { Pass, Fail, Indeterminate };

inline Verdict verdict_le(const RInterval& lhs, const RInterval& rhs) {
    if (lhs.certainly_less(rhs)) return Verdict::Pass;
    if (lhs.certainly_ge(rhs)) return Verdict::Fail;
    return Verdict::Indeterminate;
}
inline Verdict verdict_ge(const RInterval& lhs, const RInterval& rhs) {
    if (lhs.certainly_greater(rhs)) return Verdict::Pass;
    if (lhs.certainly_le(rhs)) return Verdict::Fail;
    return Verdict::Indeterminate;
}

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "indeterminate";
    }
}

}  // namespace zf
