#include <catch2/catch_amalgamated.hpp>

#include "mills/identities.hpp"

using namespace mills;

namespace {

// sqrt(2 pi) e^2 (Phi(2) - Phi(1)) at 49 digits, independent oracle (mpmath).
const char* kIdentityOneRhs = "2.5171826096145381874175473900494368959935295530101";

BigRational tol(int digits) { return BigRational(BigInt(1), pow10(static_cast<unsigned long>(digits))); }

IntPoly poly(std::vector<long> c) {
    std::vector<BigInt> v(c.begin(), c.end());
    return IntPoly(std::move(v));
}

}  // namespace

TEST_CASE("identity one right-hand side matches the oracle") {
    BigReal rhs = identity_one_rhs(digits_to_bits(60));
    CHECK(abs(rhs - BigRational::from_string(kIdentityOneRhs)).definitely_below(tol(48)));
}

TEST_CASE("identity one verifies at several tolerances") {
    IdentityReport fine = identity_one_verify(tol(10), 128);
    CHECK(fine.verified);
    CHECK(fine.kind == IdentityReport::Kind::Numeric);
    CHECK(fine.residual < tol(10));
    IdentityReport coarse = identity_one_verify(tol(4), 128);
    CHECK(coarse.verified);
    CHECK(coarse.detail.find("n,m <=") != std::string::npos);
    CHECK_THROWS_AS(identity_one_verify(tol(31), 128), DomainError);
}

TEST_CASE("identity one terms equal q_{k,m}/(k+1)!") {
    for (int k = 0; k <= 30; ++k) {
        BigRational row;
        BigRational kfac1(factorial(static_cast<unsigned long>(k) + 1));
        for (int m = k % 2; m <= k; m += 2) {
            BigRational term = identity_one_term((k - m) / 2, m);
            CHECK(term == BigRational(q_coeff_closed(k, m)) / kfac1);
            row += term;
        }
        CHECK(row == laplace_Q(k).eval(BigRational(1)) / kfac1);
    }
}

TEST_CASE("identity one majorant dominates the terms") {
    for (int n = 0; n <= 12; ++n)
        for (int m = 0; m <= 12; ++m) CHECK(identity_one_term(n, m) <= identity_one_majorant(n, m));
}

TEST_CASE("identity two") {
    CHECK(identity_two_verify(0).verified);
    IdentityReport r2 = identity_two_verify(2);  // 1 - 2/3 + 1/5 = 8/15 on both sides
    CHECK(r2.verified);
    CHECK(identity_two_verify(500).verified);
    CHECK_THROWS_AS(identity_two_verify(-1), DomainError);
}

TEST_CASE("q diagonal") {
    CHECK(q_diagonal_check(0).verified);
    CHECK(q_diagonal_check(2).verified);  // q_{4,0} = 8 = 2^2 2!
    CHECK(q_diagonal_check(3).verified);  // q_{6,0} = 48 = 2^3 3!
    for (int n = 0; n <= 64; ++n) CHECK(q_diagonal_check(n).verified);
}

TEST_CASE("P generating function against the exponential oracle") {
    IdentityReport trivial = pgen_check(BigRational(0), BigRational(9), 5, 128);
    CHECK(trivial.verified);
    CHECK(trivial.residual.is_zero());

    IdentityReport a = pgen_check(BigRational(1), BigRational(1), 40, 128);
    CHECK(a.verified);
    CHECK(a.residual < tol(20));

    IdentityReport b = pgen_check(BigRational(1, 2), BigRational(-2), 40, 128);
    CHECK(b.verified);
    CHECK(b.residual < tol(20));

    CHECK_THROWS_AS(pgen_check(BigRational(1), BigRational(1), 2, 128), NonConvergence);
}

TEST_CASE("Q generating function against the Phi oracle") {
    // s = 0: the sum is empty and the right side is Phi(t) - Phi(t); the
    // residual reduces to the oracle's own error budget.
    IdentityReport trivial = qgen_check(BigRational(0), BigRational(3), 5, 128);
    CHECK(trivial.verified);
    CHECK(trivial.residual < tol(30));

    IdentityReport a = qgen_check(BigRational(1), BigRational(1), 40, 128);
    CHECK(a.verified);
    CHECK(a.residual < tol(15));

    IdentityReport b = qgen_check(BigRational(1), BigRational(0), 40, 128);
    CHECK(b.verified);
    CHECK(b.residual < tol(15));
}

TEST_CASE("Q series at t = 0 equals the odd double-factorial series") {
    // sum_k Q_k(0) s^(k+1)/(k+1)! = sum_n 2^n n! s^(2n+1)/(2n+1)!, term by term.
    for (int k = 0; k <= 20; ++k) {
        BigInt qk0 = q_coeff_closed(k, 0);
        if (k % 2 != 0) {
            CHECK(qk0 == 0);
            continue;
        }
        long n = k / 2;
        CHECK(qk0 == pow2(static_cast<unsigned long>(n)) * factorial(static_cast<unsigned long>(n)));
    }
}

TEST_CASE("hermite polynomials") {
    CHECK(hermite_poly(0) == poly({1}));
    CHECK(hermite_poly(2) == poly({-1, 0, 1}));
    CHECK(hermite_poly(4) == poly({3, 0, -6, 0, 1}));
    CHECK(hermite_poly(1) == poly({0, 1}));
}

TEST_CASE("hermite correspondence with P") {
    CHECK(hermite_relation_check(0).verified);
    CHECK(hermite_relation_check(4).verified);
    CHECK(hermite_relation_check(7).verified);
    for (int k = 0; k <= 50; ++k) CHECK(hermite_relation_check(k).verified);
}

TEST_CASE("hermite coefficient signs follow (-1)^n") {
    for (int k = 0; k <= 30; ++k) {
        IntPoly h = hermite_poly(k);
        for (int m = k % 2; m <= k; m += 2) {
            int expected = ((k - m) / 2) % 2 == 0 ? 1 : -1;
            CHECK(sgn(h.coeff(m)) == expected);
        }
    }
}

TEST_CASE("matching counts by brute force") {
    CHECK(matching_count_bruteforce(4, 2) == 3);
    for (int k = 0; k <= 12; ++k) CHECK(matching_count_bruteforce(k, 0) == 1);
    CHECK(matching_count_bruteforce(6, 3) == 15);
    CHECK(p_coeff_closed(6, 0) == 15);
    CHECK(matching_count_bruteforce(5, 3) == 0);  // above the maximal matching
    CHECK_THROWS_AS(matching_count_bruteforce(13, 1), InstanceTooLarge);
    for (int k = 2; k <= 12; ++k)
        CHECK(BigInt(static_cast<unsigned long>(matching_count_bruteforce(k, 1))) ==
              binomial(static_cast<unsigned long>(k), 2));
}

TEST_CASE("matching identity M(k,m) = p_{k,k-2m}") {
    CHECK(matching_identity_check(1).verified);
    CHECK(matching_identity_check(4).verified);  // (1, 6, 3)
    CHECK(matching_identity_check(8).verified);  // M(8,2) = 210 = p_{8,4}
    for (int k = 0; k <= 10; ++k) CHECK(matching_identity_check(k).verified);
    CHECK_THROWS_AS(matching_identity_check(13), InstanceTooLarge);
}
