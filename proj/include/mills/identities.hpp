#pragma once

// Mechanical verification of the combinatorial identities, generating
// functions, the Hermite correspondence and the matching-number results.
// Exact statements are checked in integer/rational arithmetic with zero
// tolerance; numeric statements carry explicit truncation majorants.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mills/big_real.hpp"
#include "mills/errors.hpp"
#include "mills/laplace.hpp"
#include "mills/mills_ratio.hpp"

namespace mills {

struct IdentityReport {
    enum class Kind { Exact, Numeric };

    std::string name;
    Kind kind = Kind::Exact;
    bool verified = false;
    std::string detail;      // residual/tolerance for numeric, witness range for exact
    BigRational residual;    // numeric reports: certified upper bound on |lhs - rhs|
    BigRational tolerance;   // numeric reports: the bound the residual was held to

    std::string kind_string() const { return kind == Kind::Exact ? "exact" : "numeric"; }
    std::string status() const { return verified ? "verified" : "failed"; }
};

// ---- Identity (triple sum) = sqrt(2 pi) e^2 (Phi(2) - Phi(1)) ----

// Exact (n, m) term: 2^-n (n+m)!/m! * sum_{j=0}^{n} 1/(j! (m+2n+1-j)!).
inline BigRational identity_one_term(int n, int m) {
    if (n < 0 || m < 0) throw DomainError("identity_one_term: negative index");
    BigInt rising = 1;  // (n+m)!/m!
    for (long i = m + 1; i <= m + n; ++i) rising *= i;
    BigRational inner;
    for (int j = 0; j <= n; ++j)
        inner += BigRational(BigInt(1), factorial(static_cast<unsigned long>(j)) *
                                            factorial(static_cast<unsigned long>(m + 2 * n + 1 - j)));
    return BigRational(rising) * inner / BigRational(pow2(static_cast<unsigned long>(n)));
}

// Majorant B(n,m) = (n+m)! 2^(m+n+1) / (m! (m+2n+1)!): dominates the term and
// decays with ratio <= 1/2 in n everywhere and in m for m >= 3.
inline BigRational identity_one_majorant(int n, int m) {
    BigInt rising = 1;
    for (long i = m + 1; i <= m + n; ++i) rising *= i;
    return BigRational(BigInt(rising * pow2(static_cast<unsigned long>(m + n + 1))),
                       factorial(static_cast<unsigned long>(m + 2 * n + 1)));
}

// Bound on the sum over the complement of the rectangle [0,N] x [0,M], M >= 3.
inline BigRational identity_one_tail_bound(int N, int M) {
    if (M < 3) throw DomainError("identity_one_tail_bound: need M >= 3");
    BigRational tail;
    for (int n = 0; n <= N; ++n) tail += 2 * identity_one_majorant(n, M + 1);
    for (int m = 0; m <= M; ++m) tail += 2 * identity_one_majorant(N + 1, m);
    tail += 4 * identity_one_majorant(N + 1, M + 1);
    return tail;
}

inline BigRational identity_one_partial(int N, int M) {
    BigRational acc;
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= M; ++m) acc += identity_one_term(n, m);
    return acc;
}

// Right-hand side sqrt(2 pi) e^2 (Phi(2) - Phi(1)), via the Phibar oracle.
inline BigReal identity_one_rhs(mpfr_prec_t prec) {
    BigReal root = sqrt(scale2(BigReal::pi(prec), 1));
    BigReal e2 = exp(BigReal::from_long(2, prec));
    BigReal gap = normal_upper_tail(BigRational(1), prec) - normal_upper_tail(BigRational(2), prec);
    return root * e2 * gap;
}

inline IdentityReport identity_one_verify(const BigRational& tol, mpfr_prec_t prec) {
    if (tol < BigRational(BigInt(1), pow10(30)))
        throw DomainError("identity_one_verify: tolerance below the oracle-precision floor 1e-30");
    int trunc = 8;
    BigRational tail;
    for (;; trunc *= 2) {
        if (trunc > 512) throw NonConvergence("identity_one_verify: tail bound never met the tolerance");
        tail = identity_one_tail_bound(trunc, trunc);
        if (2 * tail <= tol) break;
    }
    const double tol_d = tol.to_double();
    const mpfr_prec_t w =
        std::max(prec, static_cast<mpfr_prec_t>(std::ceil(-std::log2(tol_d))) + 48);
    const BigRational partial = identity_one_partial(trunc, trunc);
    const BigReal rhs = identity_one_rhs(w);
    const BigRational diff = abs(BigReal::from_rational(partial, w) - rhs).upper_rational();
    const BigRational residual = diff + tail;
    IdentityReport rep;
    rep.name = "identity_one";
    rep.kind = IdentityReport::Kind::Numeric;
    rep.verified = residual <= tol;
    rep.residual = residual;
    rep.tolerance = tol;
    rep.detail = "n,m <= " + std::to_string(trunc) + ", tail <= " + tail.to_decimal_string(24) +
                 ", residual <= " + residual.to_decimal_string(24) + ", tol = " + tol.to_decimal_string(24);
    return rep;
}

// ---- Identity sum_k (-1)^k C(n,k)/(2k+1) = 4^n (n!)^2 / (2n+1)! ----

inline IdentityReport identity_two_verify(int n) {
    if (n < 0) throw DomainError("identity_two_verify: negative n");
    // Common denominator (2n+1)!! keeps the left side in integer arithmetic.
    BigInt odd_fac = double_factorial(2 * n + 1);
    BigInt numer = 0;
    BigInt binom = 1;  // C(n,k)
    for (int k = 0; k <= n; ++k) {
        BigInt term = binom * (odd_fac / (2 * k + 1));
        numer += (k % 2 == 0) ? term : BigInt(-term);
        binom = binom * (n - k) / (k + 1);
    }
    BigRational lhs(numer, odd_fac);
    BigInt nf = factorial(static_cast<unsigned long>(n));
    BigRational rhs(pow2(static_cast<unsigned long>(2 * n)) * nf * nf,
                    factorial(static_cast<unsigned long>(2 * n + 1)));
    IdentityReport rep;
    rep.name = "identity_two";
    rep.kind = IdentityReport::Kind::Exact;
    rep.verified = lhs == rhs;
    rep.detail = "n = " + std::to_string(n);
    return rep;
}

// q_{2n,0} = 2^n n!, plus the underlying binomial half-row identity
// sum_{i<=n} C(2n+1,i) = 4^n.
inline IdentityReport q_diagonal_check(int n) {
    if (n < 0) throw DomainError("q_diagonal_check: negative n");
    bool ok = q_coeff_closed(2 * n, 0) ==
              pow2(static_cast<unsigned long>(n)) * factorial(static_cast<unsigned long>(n));
    BigInt half_row = 0;
    for (int i = 0; i <= n; ++i)
        half_row += binomial(static_cast<unsigned long>(2 * n + 1), static_cast<unsigned long>(i));
    ok = ok && half_row == pow2(static_cast<unsigned long>(2 * n));
    IdentityReport rep;
    rep.name = "q_diagonal";
    rep.kind = IdentityReport::Kind::Exact;
    rep.verified = ok;
    rep.detail = "n = " + std::to_string(n);
    return rep;
}

// ---- Generating functions ----

namespace detail {

// Upper bound on sum_{k>N} a_k y^k for a_k = [x^k] exp(x + x^2/2), via
// a_k <= f(rho)/rho^k over a small grid of integer rho > y. MPFR, upward.
inline BigRational exp_series_tail_bound(int N, const BigRational& y) {
    if (y.sign() < 0) throw DomainError("exp_series_tail_bound: negative radius");
    if (y.is_zero()) return BigRational();
    Mpfr yu(64), best(64), cand(64), q(64), f(64), den(64);
    mpfr_set_q(yu.get(), y.raw().get_mpq_t(), MPFR_RNDU);
    mpfr_set_inf(best.get(), 1);
    long base = static_cast<long>(mpfr_get_si(yu.get(), MPFR_RNDU));
    for (long i = 1; i <= 40; ++i) {
        const long rho = base + i;
        mpfr_div_si(q.get(), yu.get(), rho, MPFR_RNDU);  // y/rho < 1
        mpfr_set_si(f.get(), rho, MPFR_RNDU);
        mpfr_mul_si(f.get(), f.get(), rho, MPFR_RNDU);
        mpfr_div_2ui(f.get(), f.get(), 1, MPFR_RNDU);
        mpfr_add_si(f.get(), f.get(), rho, MPFR_RNDU);
        mpfr_exp(f.get(), f.get(), MPFR_RNDU);  // exp(rho + rho^2/2)
        mpfr_pow_ui(q.get(), q.get(), static_cast<unsigned long>(N) + 1, MPFR_RNDU);
        mpfr_mul(f.get(), f.get(), q.get(), MPFR_RNDU);
        mpfr_si_sub(den.get(), rho, yu.get(), MPFR_RNDD);
        mpfr_div_si(den.get(), den.get(), rho, MPFR_RNDD);  // 1 - y/rho
        mpfr_div(cand.get(), f.get(), den.get(), MPFR_RNDU);
        if (mpfr_cmp(cand.get(), best.get()) < 0) mpfr_set(best.get(), cand.get(), MPFR_RNDU);
    }
    BigInt mant;
    mpfr_exp_t ex = mpfr_get_z_2exp(mant.get_mpz_t(), best.get());
    if (ex >= 0) return BigRational(BigInt(mant * pow2(static_cast<unsigned long>(ex))));
    return BigRational(mant, pow2(static_cast<unsigned long>(-ex)));
}

inline BigRational max_one_abs(const BigRational& t) {
    BigRational a = abs(t);
    return a < BigRational(1) ? BigRational(1) : a;
}

}  // namespace detail

// sum_{k<=N} P_k(t) s^k/k! against exp(st + s^2/2). The measured residual
// must sit inside the factorial-tail bound of the omitted terms.
inline IdentityReport pgen_check(const BigRational& s, const BigRational& t, int order, mpfr_prec_t prec) {
    if (order < 0) throw DomainError("pgen_check: negative order");
    const BigRational y = abs(s) * detail::max_one_abs(t);
    const BigRational tail = detail::exp_series_tail_bound(order, y);
    if (tail > BigRational(1, 256))
        throw NonConvergence("pgen_check: truncation order too small for a meaningful bound");
    BigRational lhs, spow(1), kfac_inv(1);
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            spow *= s;
            kfac_inv /= BigRational(k);
        }
        lhs += laplace_P(k).eval(t) * spow * kfac_inv;
    }
    mpfr_prec_t w = std::max<mpfr_prec_t>(prec, 96);
    if (!tail.is_zero())
        w = std::max(w, static_cast<mpfr_prec_t>(std::ceil(-std::log2(tail.to_double()))) + 48);
    const BigReal rhs = exp(BigReal::from_rational(s * t + s * s / 2, w));
    const BigReal diff = abs(BigReal::from_rational(lhs, w) - rhs);
    const BigRational residual = diff.upper_rational();
    IdentityReport rep;
    rep.name = "pgen";
    rep.kind = IdentityReport::Kind::Numeric;
    // |lhs - rhs_true| <= tail must hold; the measured upper bound may sit
    // above it by at most twice the propagated oracle error.
    rep.tolerance = tail + 2 * diff.error_rational();
    rep.verified = residual <= rep.tolerance;
    rep.residual = residual;
    rep.detail = "s = " + s.to_string() + ", t = " + t.to_string() + ", N = " + std::to_string(order) +
                 ", residual <= " + residual.to_decimal_string(30) + ", tail bound = " + tail.to_decimal_string(30);
    return rep;
}

// sum_{k<=N} Q_k(t) s^(k+1)/(k+1)! against sqrt(2 pi) e^((s+t)^2/2) (Phi(s+t) - Phi(t)).
// Uses the sharpened majorant q_{k,m} <= (k+1) p_{k,m} for the tail.
inline IdentityReport qgen_check(const BigRational& s, const BigRational& t, int order, mpfr_prec_t prec) {
    if (order < 0) throw DomainError("qgen_check: negative order");
    const BigRational y = abs(s) * detail::max_one_abs(t);
    const BigRational tail = abs(s) * detail::exp_series_tail_bound(order, y);
    if (tail > BigRational(1, 256))
        throw NonConvergence("qgen_check: truncation order too small for a meaningful bound");
    BigRational lhs, spow(1), kfac_inv(1);  // spow*kfac_inv tracks s^(k+1)/(k+1)!
    for (int k = 0; k <= order; ++k) {
        spow *= s;
        kfac_inv /= BigRational(k + 1);
        lhs += laplace_Q(k).eval(t) * spow * kfac_inv;
    }
    mpfr_prec_t w = std::max<mpfr_prec_t>(prec, 96);
    if (!tail.is_zero())
        w = std::max(w, static_cast<mpfr_prec_t>(std::ceil(-std::log2(tail.to_double()))) + 48);
    const BigRational st = s + t;
    BigReal rhs = sqrt(scale2(BigReal::pi(w), 1)) * exp(BigReal::from_rational(st * st / 2, w)) *
                  (normal_upper_tail(t, w) - normal_upper_tail(st, w));
    const BigReal diff = abs(BigReal::from_rational(lhs, w) - rhs);
    const BigRational residual = diff.upper_rational();
    IdentityReport rep;
    rep.name = "qgen";
    rep.kind = IdentityReport::Kind::Numeric;
    rep.tolerance = tail + 2 * diff.error_rational();
    rep.verified = residual <= rep.tolerance;
    rep.residual = residual;
    rep.detail = "s = " + s.to_string() + ", t = " + t.to_string() + ", N = " + std::to_string(order) +
                 ", residual <= " + residual.to_decimal_string(30) + ", tail bound = " + tail.to_decimal_string(30);
    return rep;
}

// ---- Hermite correspondence ----

// Probabilists' Hermite polynomial, H_{k+1} = t H_k - k H_{k-1}.
inline IntPoly hermite_poly(int k) {
    if (k < 0) throw DomainError("hermite_poly: negative order");
    IntPoly prev = IntPoly::constant(1);
    if (k == 0) return prev;
    IntPoly cur(std::vector<BigInt>{0, 1});
    for (int j = 1; j < k; ++j) {
        IntPoly next = cur.shift_mul_t() - BigInt(j) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// Coefficient-level restatement of P_k(t) = (-i)^k H_k(it):
// p_{k,m} = (-1)^((k-m)/2) h_{k,m} for every m.
inline IdentityReport hermite_relation_check(int k) {
    if (k < 0) throw DomainError("hermite_relation_check: negative order");
    const IntPoly h = hermite_poly(k);
    bool ok = true;
    for (int m = 0; m <= k && ok; ++m) {
        BigInt expected = h.coeff(m);
        if ((k - m) % 2 != 0) {
            ok = sgn(expected) == 0 && p_coeff_closed(k, m) == 0;
            continue;
        }
        if (((k - m) / 2) % 2 != 0) expected = -expected;
        ok = p_coeff_closed(k, m) == expected;
    }
    IdentityReport rep;
    rep.name = "hermite_relation";
    rep.kind = IdentityReport::Kind::Exact;
    rep.verified = ok;
    rep.detail = "k = " + std::to_string(k) + ", all m";
    return rep;
}

// ---- Matching numbers of the complete graph ----

inline constexpr int kMatchingBruteForceLimit = 12;

// Exhaustive count of m-edge matchings in K_k by backtracking over the
// lowest-indexed free vertex.
inline std::uint64_t matching_count_bruteforce(int k, int m) {
    if (k < 0 || m < 0) throw DomainError("matching_count_bruteforce: negative argument");
    if (k > kMatchingBruteForceLimit)
        throw InstanceTooLarge("matching_count_bruteforce: k > " + std::to_string(kMatchingBruteForceLimit));
    if (2 * m > k) return 0;
    std::vector<bool> used(static_cast<size_t>(k), false);
    auto rec = [&](auto&& self, int edges_left) -> std::uint64_t {
        if (edges_left == 0) return 1;
        int v = 0;
        while (v < k && used[static_cast<size_t>(v)]) ++v;
        if (v == k) return 0;
        used[static_cast<size_t>(v)] = true;
        std::uint64_t total = 0;
        for (int u = v + 1; u < k; ++u) {
            if (used[static_cast<size_t>(u)]) continue;
            used[static_cast<size_t>(u)] = true;
            total += self(self, edges_left - 1);
            used[static_cast<size_t>(u)] = false;
        }
        total += self(self, edges_left);  // v left unmatched
        used[static_cast<size_t>(v)] = false;
        return total;
    };
    return rec(rec, m);
}

// M(k, m) = p_{k,k-2m} for all m, and the matching generating polynomial
// equals the reversed even-coefficient vector of P_k.
inline IdentityReport matching_identity_check(int k) {
    if (k < 0) throw DomainError("matching_identity_check: negative k");
    if (k > kMatchingBruteForceLimit)
        throw InstanceTooLarge("matching_identity_check: k > " + std::to_string(kMatchingBruteForceLimit));
    const IntPoly pk = laplace_P(k);
    bool ok = true;
    std::vector<BigInt> counts;
    for (int m = 0; 2 * m <= k; ++m) {
        BigInt c(static_cast<unsigned long>(matching_count_bruteforce(k, m)));
        counts.push_back(c);
        if (c != p_coeff_closed(k, k - 2 * m)) ok = false;
    }
    IntPoly matching_gen(std::move(counts));
    std::vector<BigInt> reversed_even;
    for (int m = 0; 2 * m <= k; ++m) reversed_even.push_back(pk.coeff(k - 2 * m));
    ok = ok && matching_gen == IntPoly(std::move(reversed_even));
    IdentityReport rep;
    rep.name = "matching_identity";
    rep.kind = IdentityReport::Kind::Exact;
    rep.verified = ok;
    rep.detail = "k = " + std::to_string(k) + ", m <= " + std::to_string(k / 2);
    return rep;
}

}  // namespace mills
