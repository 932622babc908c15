#pragma once

// Arbitrary-precision evaluation of the Gaussian upper tail, the Mills ratio
// R(t) and its derivatives, certified rational brackets, continued-fraction
// convergents and the alternating asymptotic partial sums.
//
// Evaluation strategy for the tail: for |t| <= 4 the all-positive series
// Phi(t) - 1/2 = phi(t) * sum t^(2n+1)/(2n+1)!! with a first-omitted-term
// tail bound; for t > 4 the certified brackets themselves at adaptive depth.

#include <cmath>
#include <string>
#include <vector>

#include "mills/big_real.hpp"
#include "mills/errors.hpp"
#include "mills/laplace.hpp"

namespace mills {

inline constexpr long kSeriesCutoff = 4;      // switch point between the two tail regimes
inline constexpr int kMaxBracketDepth = 5000;  // escalation ceiling for bracket-based evaluation

inline mpfr_prec_t digits_to_bits(int digits) {
    if (digits < 1) throw DomainError("digits_to_bits: need at least one digit");
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 16;
}

// Certified two-sided rational bracket for R(t), Q_{2j-1}/P_{2j} < R < Q_{2j}/P_{2j+1}.
struct Bracket {
    BigRational t;
    int depth = 0;  // j; polynomial orders used are 2j-1 .. 2j+1
    BigRational lower;
    BigRational upper;

    BigRational width() const { return upper - lower; }
};

inline Bracket bracket(const BigRational& t, int depth) {
    if (t.sign() <= 0) throw DomainError("bracket: requires t > 0");
    if (depth < 1) throw DomainError("bracket: depth must be >= 1");
    const int k = 2 * depth;
    Bracket b;
    b.t = t;
    b.depth = depth;
    b.lower = laplace_Q(k - 1).eval(t) / laplace_P(k).eval(t);
    b.upper = laplace_Q(k).eval(t) / laplace_P(k + 1).eval(t);
    if (!(b.lower < b.upper)) throw std::logic_error("bracket: bounds out of order");
    return b;
}

// Depth-k truncation of 1/(t + 1/(t + 2/(t + ... (k-1)/t))), evaluated
// bottom-up in exact rationals. Equals Q_{k-1}(t)/P_k(t).
inline BigRational cf_convergent(int k, const BigRational& t) {
    if (t.sign() <= 0) throw DomainError("cf_convergent: requires t > 0");
    if (k < 1) throw DomainError("cf_convergent: depth must be >= 1");
    BigRational v;
    for (long i = k - 1; i >= 1; --i) v = BigRational(i) / (t + v);
    return BigRational(1) / (t + v);
}

// S_j(t) = sum_{i=0}^{j} (-1)^i (2i-1)!!/t^(2i+1), with (-1)!! = 1.
inline BigRational asymptotic_partial_sum(const BigRational& t, int j) {
    if (t.sign() <= 0) throw DomainError("asymptotic_partial_sum: requires t > 0");
    if (j < 0) throw DomainError("asymptotic_partial_sum: negative order");
    const BigRational t2 = t * t;
    BigRational tpow = t;  // t^(2i+1)
    BigInt dfac = 1;       // (2i-1)!!
    BigRational acc;
    for (int i = 0; i <= j; ++i) {
        if (i > 0) {
            dfac *= 2 * i - 1;
            tpow *= t2;
        }
        BigRational term = BigRational(dfac) / tpow;
        acc += (i % 2 == 0) ? term : -term;
    }
    return acc;
}

// phi(t) = exp(-t^2/2)/sqrt(2 pi).
inline BigReal gaussian_density(const BigRational& t, mpfr_prec_t prec) {
    const mpfr_prec_t w = prec + 32;
    BigReal arg = BigReal::from_rational(-(t * t) / 2, w);
    return exp(arg) / sqrt(scale2(BigReal::pi(w), 1));
}

namespace detail {

// sum_{n>=0} t^(2n+1)/(2n+1)!! at working precision, truncation folded into
// the error bound once the term ratio has dropped below 1/2.
inline BigReal tail_series(const BigRational& t, mpfr_prec_t w) {
    const BigRational t2 = t * t;
    const double t2d = t2.to_double();
    BigReal term = BigReal::from_rational(t, w);
    BigReal sum = term;
    for (long n = 0;; ++n) {
        if (n > 200000) throw PrecisionUnachievable("tail_series: iteration ceiling");
        term = term * t2 / BigRational(2 * n + 3);
        sum = sum + term;
        // ratio <= 1/2 from here on; remaining tail <= 2 * next term <= term
        if (static_cast<double>(n) >= t2d && term.exponent2() + static_cast<long>(w) + 4 < sum.exponent2()) {
            sum.add_error_of(term, 1);
            return sum;
        }
    }
}

BigReal mills_ratio_impl(const BigRational& t, mpfr_prec_t prec);

// Phibar for 0 < t <= kSeriesCutoff via the series route.
inline BigReal upper_tail_series_branch(const BigRational& t, mpfr_prec_t prec) {
    const double td = t.to_double();
    // extra bits to survive the cancellation in 1/2 - phi*S, about t^2/(2 ln 2)
    mpfr_prec_t w = prec + 48 + static_cast<mpfr_prec_t>(std::ceil(td * td * 0.7213475204));
    for (int attempt = 0; attempt < 6; ++attempt) {
        BigReal phi = gaussian_density(t, w);
        BigReal res = BigRational(1, 2) - phi * tail_series(t, w);
        if (res.relative_error_within(prec)) return res;
        w *= 2;
    }
    throw PrecisionUnachievable("normal_upper_tail: series branch ceiling");
}

// R(t) for t > kSeriesCutoff straight from the certified brackets.
inline BigReal mills_from_brackets(const BigRational& t, mpfr_prec_t prec) {
    const double td = t.to_double();
    const mpfr_prec_t bits = prec + 8;
    const double efolds = static_cast<double>(bits) * 0.6931471805599453;
    const double estimate = 1.2 * (efolds / (2.0 * td)) * (efolds / (2.0 * td)) + 8;
    if (!(estimate < kMaxBracketDepth))
        throw PrecisionUnachievable("mills_ratio: bracket depth ceiling at t = " + t.to_string());
    int depth = static_cast<int>(estimate);
    const BigInt scale = pow2(static_cast<unsigned long>(bits));
    for (;;) {
        if (depth > kMaxBracketDepth)
            throw PrecisionUnachievable("mills_ratio: bracket depth ceiling at t = " + t.to_string());
        Bracket b = bracket(t, depth);
        if (b.width() * BigRational(scale) <= b.lower)
            return BigReal::from_interval(b.lower, b.upper, prec + 16);
        depth = depth + depth / 2 + 4;
    }
}

}  // namespace detail

// Phibar(t) with a relative error bound of 2^-prec.
inline BigReal normal_upper_tail(const BigRational& t, mpfr_prec_t prec) {
    if (prec < BigReal::kMinPrec) throw DomainError("normal_upper_tail: prec must be >= 64");
    if (t.is_zero()) return BigReal::from_rational(BigRational(1, 2), prec);
    if (t.sign() < 0) return BigRational(1) - normal_upper_tail(-t, prec + 8);
    if (t <= BigRational(kSeriesCutoff)) return detail::upper_tail_series_branch(t, prec);
    mpfr_prec_t w = prec + 16;
    for (int attempt = 0; attempt < 4; ++attempt) {
        BigReal res = detail::mills_from_brackets(t, w) * gaussian_density(t, w);
        if (res.relative_error_within(prec)) return res;
        w *= 2;
    }
    throw PrecisionUnachievable("normal_upper_tail: bracket branch ceiling");
}

// R(t) = Phibar(t)/phi(t) with a relative error bound of 2^-prec.
inline BigReal mills_ratio(const BigRational& t, mpfr_prec_t prec) {
    if (prec < BigReal::kMinPrec) throw DomainError("mills_ratio: prec must be >= 64");
    if (t > BigRational(kSeriesCutoff)) return detail::mills_from_brackets(t, prec);
    mpfr_prec_t w = prec + 16;
    for (int attempt = 0; attempt < 5; ++attempt) {
        BigReal res = normal_upper_tail(t, w) / gaussian_density(t, w);
        if (res.relative_error_within(prec)) return res;
        w *= 2;
    }
    throw PrecisionUnachievable("mills_ratio: ceiling");
}

// Low-precision cross-check of the Laplace-transform representation,
// int_0^inf exp(-t x - x^2/2) dx, by composite Simpson. Good to ~1e-10.
inline double mills_ratio_quadrature(double t) {
    if (!(t >= 0)) throw DomainError("mills_ratio_quadrature: requires t >= 0");
    const double X = -t + std::sqrt(t * t + 100.0);  // integrand ~ e^-50 past X
    const int n = 40000;                             // even
    const double h = X / n;
    auto f = [t](double x) { return std::exp(-t * x - 0.5 * x * x); };
    double acc = f(0.0) + f(X);
    for (int i = 1; i < n; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// d^k R / dt^k = R(t) P_k(t) - Q_{k-1}(t); k = 0 gives R itself.
inline BigReal mills_derivative(int k, const BigRational& t, mpfr_prec_t prec) {
    if (k < 0) throw DomainError("mills_derivative: negative order");
    if (prec < BigReal::kMinPrec) throw DomainError("mills_derivative: prec must be >= 64");
    if (k == 0) return mills_ratio(t, prec);
    const BigRational pk = laplace_P(k).eval(t);
    const BigRational qk = laplace_Q(k - 1).eval(t);
    mpfr_prec_t w = prec + 64;
    for (int attempt = 0; attempt < 8; ++attempt) {
        BigReal val = mills_ratio(t, w) * pk - qk;
        if (val.relative_error_within(prec)) return val;
        w *= 2;
    }
    throw PrecisionUnachievable("mills_derivative: cancellation exceeded retry ceiling");
}

// |R(s+t) - sum_{k<=N} d^k R(t) s^k / k!|. Raises NonConvergence when the
// residual is still growing across the trailing window of orders.
inline BigReal taylor_shift_check(const BigRational& s, const BigRational& t, int order, mpfr_prec_t prec) {
    if (t.sign() <= 0) throw DomainError("taylor_shift_check: requires t > 0");
    if (order < 0) throw DomainError("taylor_shift_check: negative order");
    if (prec < BigReal::kMinPrec) throw DomainError("taylor_shift_check: prec must be >= 64");
    const mpfr_prec_t w = prec + 64;
    const BigReal rt = mills_ratio(t, w);
    const BigReal rst = mills_ratio(s + t, w);
    BigRational a, b;          // partial sums of P_k(t) s^k/k! and Q_{k-1}(t) s^k/k!
    BigRational spow(1);       // s^k
    BigRational kfac_inv(1);   // 1/k!
    std::vector<BigReal> checkpoints;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            spow *= s;
            kfac_inv /= BigRational(k);
        }
        const BigRational weight = spow * kfac_inv;
        a += laplace_P(k).eval(t) * weight;
        if (k >= 1) b += laplace_Q(k - 1).eval(t) * weight;
        if (k == order - 8 || k == order - 4 || k == order)
            checkpoints.push_back(abs(rst - (rt * a - b)));
    }
    if (checkpoints.size() == 3 && checkpoints[0].definitely_below(checkpoints[1]) &&
        checkpoints[1].definitely_below(checkpoints[2]))
        throw NonConvergence("taylor_shift_check: residual grows over the trailing window");
    return checkpoints.back();
}

}  // namespace mills
