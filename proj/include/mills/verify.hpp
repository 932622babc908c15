#pragma once

// Named verification suites. Each check runs a bounded-range exact test or a
// tolerance-bounded numeric test and folds the outcome into an IdentityReport;
// the CLI's `verify` subcommand prints one line per report.

#include <string>
#include <vector>

#include "mills/identities.hpp"
#include "mills/laplace.hpp"
#include "mills/mills_ratio.hpp"

namespace mills {

enum class Suite { All, Identities, Polynomials, Numeric };

inline Suite suite_from_string(const std::string& s) {
    if (s == "all") return Suite::All;
    if (s == "identities") return Suite::Identities;
    if (s == "polynomials") return Suite::Polynomials;
    if (s == "numeric") return Suite::Numeric;
    throw DomainError("unknown suite '" + s + "'");
}

namespace verify_detail {

inline IdentityReport exact_report(std::string name, bool ok, std::string range) {
    IdentityReport rep;
    rep.name = std::move(name);
    rep.kind = IdentityReport::Kind::Exact;
    rep.verified = ok;
    rep.detail = std::move(range);
    return rep;
}

inline std::vector<BigRational> log_grid(double lo, double hi, int count) {
    std::vector<BigRational> grid;
    grid.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        double x = count == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
        grid.push_back(BigRational::from_double(x));  // dyadic, hence exact
    }
    return grid;
}

}  // namespace verify_detail

inline std::vector<IdentityReport> run_polynomial_suite(int k_max = 200) {
    using verify_detail::exact_report;
    std::vector<IdentityReport> out;
    const std::string range = "k <= " + std::to_string(k_max);

    bool routes = true, closed = true, parity = true, deriv = true, ode = true, beta = true, qhat = true;
    for (int k = 1; k <= k_max; ++k) {
        LaplacePair a = laplace_pair_recurrence(k);
        LaplacePair b = laplace_pair_three_term(k);
        if (a.P != b.P || a.Q_prev != b.Q_prev) routes = false;
        const IntPoly qk = laplace_Q(k);
        for (int m = 0; m <= k; ++m) {
            if (a.P.coeff(m) != p_coeff_closed(k, m)) closed = false;
            if (qk.coeff(m) != q_coeff_closed(k, m)) closed = false;
            if ((k - m) % 2 != 0 && (sgn(a.P.coeff(m)) != 0 || sgn(qk.coeff(m)) != 0)) parity = false;
        }
        if (a.P.coeff(k) != 1 || qk.coeff(k) != 1 || beta_coeff(k, k) != 1) parity = false;
        if (!derivative_identity_check(k)) deriv = false;
        if (!ode_residual(k).is_zero()) ode = false;
        IntPoly recombined;
        for (const auto& [j, c] : expand_Q_in_P(k)) recombined = recombined + c * laplace_P(j);
        if (recombined != qk) beta = false;
        for (int m = k % 2; m <= k; m += 2)
            if (!qhat_sum_check(k, m)) qhat = false;
    }
    out.push_back(exact_report("route_equivalence", routes, range));
    out.push_back(exact_report("closed_form_coefficients", closed, range));
    out.push_back(exact_report("parity_and_leading", parity, range));
    out.push_back(exact_report("derivative_identity", deriv, range));
    out.push_back(exact_report("ode_residual_zero", ode, range));
    out.push_back(exact_report("beta_expansion", beta, range));
    out.push_back(exact_report("qhat_sum", qhat, range));

    // Coefficient tables (recurrence route) against the closed forms.
    const int table_k = std::min(k_max, 120);
    CoeffTable tp(CoeffFamily::P), tq(CoeffFamily::Q), tb(CoeffFamily::Beta);
    bool tables = true;
    for (int k = 0; k <= table_k; ++k)
        for (int m = k % 2; m <= k; m += 2) {
            if (tp.entry(k, m) != p_coeff_closed(k, m)) tables = false;
            if (tq.entry(k, m) != q_coeff_closed(k, m)) tables = false;
            if (tb.entry(k, m) != beta_coeff(k, m)) tables = false;
        }
    out.push_back(exact_report("coeff_table_recurrences", tables, "k <= " + std::to_string(table_k)));
    return out;
}

inline std::vector<IdentityReport> run_identity_suite() {
    using verify_detail::exact_report;
    std::vector<IdentityReport> out;

    out.push_back(identity_one_verify(BigRational(BigInt(1), pow10(12)), 128));

    // Term-by-term agreement of the triple sum with q_{k,m}/(k+1)! and with
    // the k-th term of the Q generating series at s = t = 1.
    {
        bool ok = true;
        for (int k = 0; k <= 40 && ok; ++k) {
            BigRational row_sum;
            const BigRational kfac(factorial(static_cast<unsigned long>(k) + 1));
            for (int m = k % 2; m <= k; m += 2) {
                BigRational term = identity_one_term((k - m) / 2, m);
                if (term != BigRational(q_coeff_closed(k, m)) / kfac) ok = false;
                row_sum += term;
            }
            if (row_sum != laplace_Q(k).eval(BigRational(1)) / kfac) ok = false;
        }
        out.push_back(exact_report("identity_one_terms_match_q", ok, "k <= 40"));
    }

    {
        bool ok = true;
        for (int n = 0; n <= 500 && ok; ++n) ok = identity_two_verify(n).verified;
        out.push_back(exact_report("identity_two", ok, "n <= 500"));
    }
    {
        bool ok = true;
        for (int n = 0; n <= 200 && ok; ++n) ok = q_diagonal_check(n).verified;
        out.push_back(exact_report("q_diagonal", ok, "n <= 200"));
    }
    {
        bool ok = true;
        for (int k = 0; k <= 50 && ok; ++k) ok = hermite_relation_check(k).verified;
        out.push_back(exact_report("hermite_relation", ok, "k <= 50"));
    }
    {
        bool ok = true;
        for (int k = 0; k <= 10 && ok; ++k) ok = matching_identity_check(k).verified;
        for (int k = 2; k <= 12 && ok; ++k)
            ok = BigInt(static_cast<unsigned long>(matching_count_bruteforce(k, 1))) ==
                 binomial(static_cast<unsigned long>(k), 2);
        out.push_back(exact_report("matching_identity", ok, "k <= 10 (edge counts to 12)"));
    }

    out.push_back(pgen_check(BigRational(1), BigRational(1), 40, 128));
    out.push_back(pgen_check(BigRational(1, 2), BigRational(-2), 40, 128));
    out.push_back(qgen_check(BigRational(1), BigRational(1), 40, 128));
    out.push_back(qgen_check(BigRational(1), BigRational(0), 40, 128));

    // qgen at (1,1) is exactly the identity-one right-hand side.
    {
        BigReal a = identity_one_rhs(160);
        BigRational partial;
        BigRational kfac_inv(1);
        for (int k = 0; k <= 60; ++k) {
            kfac_inv /= BigRational(k + 1);
            partial += laplace_Q(k).eval(BigRational(1)) * kfac_inv;
        }
        BigRational gap = abs(BigReal::from_rational(partial, 160) - a).upper_rational();
        bool ok = gap < BigRational(BigInt(1), pow10(20));
        IdentityReport rep;
        rep.name = "qgen_matches_identity_one_rhs";
        rep.kind = IdentityReport::Kind::Numeric;
        rep.verified = ok;
        rep.detail = "|Q-series(1,1) - rhs| <= " + gap.to_decimal_string(24);
        out.push_back(rep);
    }
    return out;
}

inline std::vector<IdentityReport> run_numeric_suite() {
    using verify_detail::exact_report;
    std::vector<IdentityReport> out;
    const mpfr_prec_t prec = digits_to_bits(50);
    const auto grid = verify_detail::log_grid(0.05, 20.0, 16);

    {
        bool sandwich = true, nesting = true;
        for (const auto& t : grid) {
            const BigReal r = mills_ratio(t, prec);
            const BigRational err10 = 10 * r.error_rational();
            Bracket prev;
            for (int j = 1; j <= 10; ++j) {
                Bracket b = bracket(t, j);
                if (!(r.definitely_above(b.lower) && r.definitely_below(b.upper))) sandwich = false;
                if (!(err10 < b.width())) sandwich = false;
                if (j > 1 && !(prev.lower < b.lower && b.upper < prev.upper && b.width() < prev.width()))
                    nesting = false;
                prev = b;
            }
        }
        out.push_back(exact_report("bracket_sandwich", sandwich, "16 grid points, depth <= 10, 50 digits"));
        out.push_back(exact_report("bracket_nesting", nesting, "16 grid points, depth <= 10"));
    }

    {
        bool ok = true;
        const BigRational pts[] = {BigRational(1, 3), BigRational(1), BigRational(7, 2), BigRational(10)};
        for (const auto& t : pts)
            for (int k = 1; k <= 50 && ok; ++k)
                ok = cf_convergent(k, t) == laplace_Q(k - 1).eval(t) / laplace_P(k).eval(t);
        out.push_back(exact_report("cf_equals_poly_ratio", ok, "k <= 50, t in {1/3, 1, 7/2, 10}"));
    }

    {
        bool ok = true;
        for (const auto& t : grid)
            ok = ok && normal_upper_tail(t, prec).definitely_below(gaussian_density(t, prec).lower_rational() / t);
        out.push_back(exact_report("elementary_bound", ok, "Phibar(t) <= phi(t)/t on the grid"));
    }

    {
        bool envelope = true, first_term = true;
        for (long ti : {5L, 8L, 13L, 20L}) {
            const BigRational t(ti);
            const BigReal r = mills_ratio(t, prec);
            for (int j = 0; j <= 5; ++j) {
                BigRational sj = asymptotic_partial_sum(t, j);
                BigRational sj1 = asymptotic_partial_sum(t, j + 1);
                if (j % 2 == 0) {  // S_even above, S_odd below
                    if (!(r.definitely_below(sj) && r.definitely_above(sj1))) envelope = false;
                } else {
                    if (!(r.definitely_above(sj) && r.definitely_below(sj1))) envelope = false;
                }
                BigRational bound = BigRational(double_factorial(2 * j + 1)) /
                                    rational_pow(t, static_cast<unsigned long>(2 * j + 3));
                if (!abs(r - sj).definitely_below(bound)) first_term = false;
            }
        }
        out.push_back(exact_report("asymptotic_enveloping", envelope, "t in {5,8,13,20}, j <= 5"));
        out.push_back(exact_report("asymptotic_first_omitted_term", first_term, "t in {5,8,13,20}, j <= 5"));
    }

    {
        bool signs = true, stepping = true;
        const auto sign_grid = verify_detail::log_grid(0.05, 20.0, 8);
        for (const auto& t : sign_grid) {
            std::vector<BigReal> d;
            for (int k = 0; k <= 12; ++k) {
                d.push_back(mills_derivative(k, t, prec));
                const BigReal& v = d.back();
                if (k % 2 == 0 ? !v.definitely_positive() : !v.definitely_negative()) signs = false;
                if (k >= 2) {
                    BigReal rhs = t * d[static_cast<size_t>(k) - 1] + BigRational(k - 1) * d[static_cast<size_t>(k) - 2];
                    BigReal diff = d.back() - rhs;
                    if (diff.definitely_positive() || diff.definitely_negative()) stepping = false;
                }
            }
        }
        out.push_back(exact_report("derivative_signs", signs, "k <= 12, 8 grid points, 50 digits"));
        out.push_back(exact_report("derivative_stepping_rule", stepping, "k <= 12, 8 grid points"));
    }

    {
        BigReal r1 = taylor_shift_check(BigRational(1, 10), BigRational(1), 20, prec);
        BigReal r2 = taylor_shift_check(BigRational(1, 2), BigRational(2), 30, prec);
        BigReal r0 = taylor_shift_check(BigRational(0), BigRational(3), 10, prec);
        bool ok = r1.definitely_below(BigRational(BigInt(1), pow10(15))) &&
                  r2.definitely_below(BigRational(BigInt(1), pow10(12))) &&
                  r0.definitely_below(BigRational(BigInt(1), pow10(30)));
        IdentityReport rep;
        rep.name = "taylor_shift";
        rep.kind = IdentityReport::Kind::Numeric;
        rep.verified = ok;
        rep.detail = "residuals " + r1.to_decimal_string(18) + ", " + r2.to_decimal_string(14) + ", " +
                     r0.to_decimal_string(14);
        out.push_back(rep);
    }

    {
        bool ok = true;
        double worst = 0.0;
        for (double td : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            double q = mills_ratio_quadrature(td);
            double r = mills_ratio(BigRational::from_double(td), prec).value_double();
            worst = std::max(worst, std::fabs(q - r));
        }
        ok = worst < 1e-8;
        IdentityReport rep;
        rep.name = "laplace_transform_quadrature";
        rep.kind = IdentityReport::Kind::Numeric;
        rep.verified = ok;
        rep.detail = "max |quadrature - R| = " + std::to_string(worst);
        out.push_back(rep);
    }
    return out;
}

inline std::vector<IdentityReport> run_suite(Suite s) {
    std::vector<IdentityReport> out;
    auto append = [&out](std::vector<IdentityReport> v) {
        for (auto& r : v) out.push_back(std::move(r));
    };
    if (s == Suite::All || s == Suite::Polynomials) append(run_polynomial_suite());
    if (s == Suite::All || s == Suite::Identities) append(run_identity_suite());
    if (s == Suite::All || s == Suite::Numeric) append(run_numeric_suite());
    return out;
}

}  // namespace mills
