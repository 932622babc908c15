#pragma once

// Arbitrary-precision reals with a guaranteed error contract: every BigReal
// is a midpoint (MPFR, round-to-nearest) plus an absolute error bound kept
// at low precision and always rounded upward. Every producing operation
// propagates the bound; nothing is allowed to shrink it silently.

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "mills/rational.hpp"

namespace mills {

namespace detail {

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Mpfr(const Mpfr& o) {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    Mpfr(Mpfr&& o) noexcept {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_swap(x_, o.x_);
    }
    Mpfr& operator=(const Mpfr& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept {
        if (this != &o) mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Mpfr() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }

private:
    mpfr_t x_;
};

}  // namespace detail

class BigReal {
public:
    static constexpr mpfr_prec_t kMinPrec = 64;
    static constexpr mpfr_prec_t kErrPrec = 32;

    static BigReal from_rational(const BigRational& q, mpfr_prec_t prec) {
        BigReal r(check_prec(prec));
        int t = mpfr_set_q(r.v_.get(), q.raw().get_mpq_t(), MPFR_RNDN);
        r.bump(t);
        return r;
    }

    static BigReal from_long(long n, mpfr_prec_t prec) { return from_rational(BigRational(n), prec); }

    // Midpoint of [lo, hi] with half the width as the error bound.
    static BigReal from_interval(const BigRational& lo, const BigRational& hi, mpfr_prec_t prec) {
        if (hi < lo) throw DomainError("BigReal::from_interval: hi < lo");
        BigRational mid = (lo + hi) / 2;
        BigReal r = from_rational(mid, prec);
        r.add_error((hi - lo) / 2);
        return r;
    }

    static BigReal pi(mpfr_prec_t prec) {
        BigReal r(check_prec(prec));
        int t = mpfr_const_pi(r.v_.get(), MPFR_RNDN);
        r.bump(t);
        return r;
    }

    mpfr_prec_t precision_bits() const { return mpfr_get_prec(v_.get()); }
    mpfr_srcptr value() const { return v_.get(); }
    mpfr_srcptr err() const { return e_.get(); }

    double value_double() const { return mpfr_get_d(v_.get(), MPFR_RNDN); }
    // Upper-rounded; underflow clamps to the smallest positive double, which
    // keeps the bound honest.
    double err_bound_double() const { return mpfr_get_d(e_.get(), MPFR_RNDU); }

    bool is_exact_zero() const { return mpfr_zero_p(v_.get()) && mpfr_zero_p(e_.get()); }

    // Binary exponent of the midpoint; very negative for zero.
    long exponent2() const {
        if (mpfr_zero_p(v_.get())) return -(1L << 60);
        return static_cast<long>(mpfr_get_exp(v_.get()));
    }

    BigRational upper_rational() const { return bound_rational(MPFR_RNDU); }
    BigRational lower_rational() const { return bound_rational(MPFR_RNDD); }

    // The propagated absolute error bound as an exact rational.
    BigRational error_rational() const {
        if (mpfr_zero_p(e_.get())) return BigRational();
        BigInt mant;
        mpfr_exp_t ex = mpfr_get_z_2exp(mant.get_mpz_t(), e_.get());
        if (ex >= 0) return BigRational(BigInt(mant * pow2(static_cast<unsigned long>(ex))));
        return BigRational(mant, pow2(static_cast<unsigned long>(-ex)));
    }

    bool definitely_positive() const {
        detail::Mpfr lo(precision_bits() + 64);
        mpfr_sub(lo.get(), v_.get(), e_.get(), MPFR_RNDD);
        return mpfr_sgn(lo.get()) > 0;
    }

    bool definitely_negative() const {
        detail::Mpfr hi(precision_bits() + 64);
        mpfr_add(hi.get(), v_.get(), e_.get(), MPFR_RNDU);
        return mpfr_sgn(hi.get()) < 0;
    }

    bool definitely_below(const BigRational& q) const {
        detail::Mpfr hi(precision_bits() + 64);
        mpfr_add(hi.get(), v_.get(), e_.get(), MPFR_RNDU);
        return mpfr_cmp_q(hi.get(), q.raw().get_mpq_t()) < 0;
    }

    bool definitely_above(const BigRational& q) const {
        detail::Mpfr lo(precision_bits() + 64);
        mpfr_sub(lo.get(), v_.get(), e_.get(), MPFR_RNDD);
        return mpfr_cmp_q(lo.get(), q.raw().get_mpq_t()) > 0;
    }

    bool definitely_below(const BigReal& o) const {
        detail::Mpfr hi(precision_bits() + 64);
        mpfr_add(hi.get(), v_.get(), e_.get(), MPFR_RNDU);
        detail::Mpfr lo(o.precision_bits() + 64);
        mpfr_sub(lo.get(), o.v_.get(), o.e_.get(), MPFR_RNDD);
        return mpfr_cmp(hi.get(), lo.get()) < 0;
    }

    // err <= 2^-bits * |value|.
    bool relative_error_within(mpfr_prec_t bits) const {
        if (mpfr_zero_p(v_.get())) return mpfr_zero_p(e_.get());
        detail::Mpfr t(kErrPrec);
        mpfr_abs(t.get(), v_.get(), MPFR_RNDD);
        mpfr_mul_2si(t.get(), t.get(), -static_cast<long>(bits), MPFR_RNDD);
        return mpfr_cmp(e_.get(), t.get()) <= 0;
    }

    // Widen the bound by a known extra (e.g. a series truncation tail).
    void add_error(const BigRational& extra) {
        if (extra.sign() < 0) throw DomainError("BigReal::add_error: negative bound");
        detail::Mpfr t(kErrPrec);
        mpfr_set_q(t.get(), extra.raw().get_mpq_t(), MPFR_RNDU);
        mpfr_add(e_.get(), e_.get(), t.get(), MPFR_RNDU);
    }

    // Widen by scale * (|other| + err(other)); used for first-omitted-term tails.
    void add_error_of(const BigReal& other, unsigned long scale) {
        detail::Mpfr t(kErrPrec);
        mpfr_abs(t.get(), other.v_.get(), MPFR_RNDU);
        mpfr_add(t.get(), t.get(), other.e_.get(), MPFR_RNDU);
        mpfr_mul_ui(t.get(), t.get(), scale, MPFR_RNDU);
        mpfr_add(e_.get(), e_.get(), t.get(), MPFR_RNDU);
    }

    // Fixed-point decimal rendering of the midpoint.
    std::string to_decimal_string(int digits) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rf", digits, v_.get());
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend BigReal operator+(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.precision_bits(), b.precision_bits()));
        int t = mpfr_add(r.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDN);
        mpfr_add(r.e_.get(), a.e_.get(), b.e_.get(), MPFR_RNDU);
        r.bump(t);
        return r;
    }

    friend BigReal operator-(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.precision_bits(), b.precision_bits()));
        int t = mpfr_sub(r.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDN);
        mpfr_add(r.e_.get(), a.e_.get(), b.e_.get(), MPFR_RNDU);
        r.bump(t);
        return r;
    }

    friend BigReal operator*(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.precision_bits(), b.precision_bits()));
        int t = mpfr_mul(r.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDN);
        // |a| err_b + |b| err_a + err_a err_b
        detail::Mpfr am(kErrPrec), bm(kErrPrec), acc(kErrPrec);
        mpfr_abs(am.get(), a.v_.get(), MPFR_RNDU);
        mpfr_abs(bm.get(), b.v_.get(), MPFR_RNDU);
        mpfr_mul(acc.get(), am.get(), b.e_.get(), MPFR_RNDU);
        mpfr_mul(bm.get(), bm.get(), a.e_.get(), MPFR_RNDU);
        mpfr_add(acc.get(), acc.get(), bm.get(), MPFR_RNDU);
        mpfr_mul(am.get(), a.e_.get(), b.e_.get(), MPFR_RNDU);
        mpfr_add(r.e_.get(), acc.get(), am.get(), MPFR_RNDU);
        r.bump(t);
        return r;
    }

    friend BigReal operator/(const BigReal& a, const BigReal& b) {
        detail::Mpfr bl(kErrPrec);
        mpfr_abs(bl.get(), b.v_.get(), MPFR_RNDD);
        mpfr_sub(bl.get(), bl.get(), b.e_.get(), MPFR_RNDD);
        if (mpfr_sgn(bl.get()) <= 0) throw DomainError("BigReal: division by interval containing zero");
        BigReal r(std::max(a.precision_bits(), b.precision_bits()));
        int t = mpfr_div(r.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDN);
        // (err_a + |a/b| err_b) / (|b| - err_b)
        detail::Mpfr num(kErrPrec);
        mpfr_abs(num.get(), r.v_.get(), MPFR_RNDU);
        mpfr_mul(num.get(), num.get(), b.e_.get(), MPFR_RNDU);
        mpfr_add(num.get(), num.get(), a.e_.get(), MPFR_RNDU);
        mpfr_div(r.e_.get(), num.get(), bl.get(), MPFR_RNDU);
        r.bump(t);
        return r;
    }

    friend BigReal operator+(const BigReal& a, const BigRational& q) {
        BigReal r(a.precision_bits());
        int t = mpfr_add_q(r.v_.get(), a.v_.get(), q.raw().get_mpq_t(), MPFR_RNDN);
        mpfr_set(r.e_.get(), a.e_.get(), MPFR_RNDU);
        r.bump(t);
        return r;
    }

    friend BigReal operator-(const BigReal& a, const BigRational& q) {
        BigReal r(a.precision_bits());
        int t = mpfr_sub_q(r.v_.get(), a.v_.get(), q.raw().get_mpq_t(), MPFR_RNDN);
        mpfr_set(r.e_.get(), a.e_.get(), MPFR_RNDU);
        r.bump(t);
        return r;
    }

    friend BigReal operator-(const BigRational& q, const BigReal& a) { return neg(a - q); }
    friend BigReal operator+(const BigRational& q, const BigReal& a) { return a + q; }

    friend BigReal operator*(const BigReal& a, const BigRational& q) {
        BigReal r(a.precision_bits());
        int t = mpfr_mul_q(r.v_.get(), a.v_.get(), q.raw().get_mpq_t(), MPFR_RNDN);
        detail::Mpfr qm(kErrPrec);
        mpfr_set_q(qm.get(), abs(q).raw().get_mpq_t(), MPFR_RNDU);
        mpfr_mul(r.e_.get(), a.e_.get(), qm.get(), MPFR_RNDU);
        r.bump(t);
        return r;
    }

    friend BigReal operator*(const BigRational& q, const BigReal& a) { return a * q; }

    friend BigReal operator/(const BigReal& a, const BigRational& q) {
        if (q.is_zero()) throw DomainError("BigReal: division by zero rational");
        BigReal r(a.precision_bits());
        int t = mpfr_div_q(r.v_.get(), a.v_.get(), q.raw().get_mpq_t(), MPFR_RNDN);
        detail::Mpfr qm(kErrPrec);
        mpfr_set_q(qm.get(), abs(q).raw().get_mpq_t(), MPFR_RNDD);
        mpfr_div(r.e_.get(), a.e_.get(), qm.get(), MPFR_RNDU);
        r.bump(t);
        return r;
    }

    friend BigReal neg(const BigReal& a) {
        BigReal r = a;
        mpfr_neg(r.v_.get(), r.v_.get(), MPFR_RNDN);
        return r;
    }

    friend BigReal abs(const BigReal& a) {
        BigReal r = a;
        mpfr_abs(r.v_.get(), r.v_.get(), MPFR_RNDN);
        return r;
    }

    // Exact scaling by 2^k.
    friend BigReal scale2(const BigReal& a, long k) {
        BigReal r = a;
        mpfr_mul_2si(r.v_.get(), r.v_.get(), k, MPFR_RNDN);
        mpfr_mul_2si(r.e_.get(), r.e_.get(), k, MPFR_RNDU);
        return r;
    }

    friend BigReal exp(const BigReal& a) {
        BigReal r(a.precision_bits());
        int t = mpfr_exp(r.v_.get(), a.v_.get(), MPFR_RNDN);
        // |e^X - e^x| <= e^x (e^err - 1); use the upper midpoint for e^x.
        detail::Mpfr em1(kErrPrec), vu(kErrPrec), u(kErrPrec);
        mpfr_expm1(em1.get(), a.e_.get(), MPFR_RNDU);
        mpfr_abs(vu.get(), r.v_.get(), MPFR_RNDU);
        ulp_bound(u, r.v_.get(), t);
        mpfr_add(vu.get(), vu.get(), u.get(), MPFR_RNDU);
        mpfr_mul(r.e_.get(), vu.get(), em1.get(), MPFR_RNDU);
        mpfr_add(r.e_.get(), r.e_.get(), u.get(), MPFR_RNDU);
        return r;
    }

    friend BigReal sqrt(const BigReal& a) {
        detail::Mpfr lo(a.precision_bits());
        mpfr_sub(lo.get(), a.v_.get(), a.e_.get(), MPFR_RNDD);
        if (mpfr_sgn(lo.get()) < 0) throw DomainError("BigReal: sqrt of interval reaching below zero");
        BigReal r(a.precision_bits());
        int t = mpfr_sqrt(r.v_.get(), a.v_.get(), MPFR_RNDN);
        // |sqrt X - sqrt x| <= err / (sqrt(x - err) + sqrt x)
        detail::Mpfr den(kErrPrec), slo(kErrPrec);
        mpfr_sqrt(slo.get(), lo.get(), MPFR_RNDD);
        mpfr_add(den.get(), slo.get(), r.v_.get(), MPFR_RNDD);
        if (mpfr_sgn(den.get()) > 0) {
            mpfr_div(r.e_.get(), a.e_.get(), den.get(), MPFR_RNDU);
        } else {
            mpfr_set(r.e_.get(), a.e_.get(), MPFR_RNDU);  // exact zero input only
        }
        r.bump(t);
        return r;
    }

private:
    explicit BigReal(mpfr_prec_t prec) : v_(prec), e_(kErrPrec) {}

    static mpfr_prec_t check_prec(mpfr_prec_t prec) {
        if (prec < kMinPrec) throw DomainError("BigReal: precision below 64 bits");
        return prec;
    }

    // 2^(exp-prec) covers a round-to-nearest step when the op was inexact.
    static void ulp_bound(detail::Mpfr& out, mpfr_srcptr v, int ternary) {
        if (ternary == 0 || mpfr_zero_p(v)) {
            if (ternary != 0 && mpfr_zero_p(v))
                throw std::logic_error("BigReal: inexact underflow to zero");
            mpfr_set_zero(out.get(), 1);
            return;
        }
        mpfr_set_ui_2exp(out.get(), 1, mpfr_get_exp(v) - mpfr_get_prec(v), MPFR_RNDU);
    }

    void bump(int ternary) {
        detail::Mpfr u(kErrPrec);
        ulp_bound(u, v_.get(), ternary);
        mpfr_add(e_.get(), e_.get(), u.get(), MPFR_RNDU);
    }

    BigRational bound_rational(mpfr_rnd_t dir) const {
        detail::Mpfr b(precision_bits() + 64);
        if (dir == MPFR_RNDU)
            mpfr_add(b.get(), v_.get(), e_.get(), MPFR_RNDU);
        else
            mpfr_sub(b.get(), v_.get(), e_.get(), MPFR_RNDD);
        if (mpfr_zero_p(b.get())) return BigRational();
        BigInt mant;
        mpfr_exp_t ex = mpfr_get_z_2exp(mant.get_mpz_t(), b.get());
        if (ex >= 0) return BigRational(BigInt(mant * pow2(static_cast<unsigned long>(ex))));
        return BigRational(mant, pow2(static_cast<unsigned long>(-ex)));
    }

    detail::Mpfr v_;  // midpoint, precision as constructed
    detail::Mpfr e_;  // absolute error bound, kErrPrec, rounded upward
};

}  // namespace mills
