#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mills/int_poly.hpp"
#include "mills/rational.hpp"

using namespace mills;

namespace {

IntPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> deg(-1, 6);
    std::uniform_int_distribution<int> coeff(-9, 9);
    int d = deg(rng);
    std::vector<BigInt> c;
    for (int i = 0; i <= d; ++i) c.emplace_back(coeff(rng));
    return IntPoly(std::move(c));
}

BigRational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 12);
    return BigRational(BigInt(num(rng)), BigInt(den(rng)));
}

}  // namespace

TEST_CASE("BigRational canonical form") {
    CHECK(BigRational(BigInt(2), BigInt(4)) == BigRational(BigInt(1), BigInt(2)));
    CHECK(BigRational(BigInt(-1), BigInt(-2)) == BigRational(BigInt(1), BigInt(2)));
    CHECK(BigRational(BigInt(3), BigInt(-6)).num() == -1);
    CHECK(BigRational(BigInt(3), BigInt(-6)).den() == 2);
    CHECK(BigRational().num() == 0);
    CHECK(BigRational().den() == 1);
    CHECK(BigRational(BigInt(0), BigInt(-7)).den() == 1);
    CHECK_THROWS_AS(BigRational(BigInt(1), BigInt(0)), DomainError);
}

TEST_CASE("BigRational arithmetic and comparison") {
    BigRational a(1, 3), b(1, 6);
    CHECK(a + b == BigRational(1, 2));
    CHECK(a - b == b);
    CHECK(a * b == BigRational(1, 18));
    CHECK(a / b == BigRational(2));
    CHECK(-a < b);
    CHECK(abs(BigRational(-5, 4)) == BigRational(5, 4));
    CHECK_THROWS_AS(a / BigRational(), DomainError);
    CHECK(rational_pow(BigRational(2, 3), 3) == BigRational(8, 27));
}

TEST_CASE("BigRational strings") {
    CHECK(BigRational(21, 8).to_string() == "21/8");
    CHECK(BigRational(-4, 2).to_string() == "-2");
    CHECK(BigRational(3, 5).to_fraction_string() == "3/5");
    CHECK(BigRational(7).to_fraction_string() == "7/1");
    CHECK(BigRational::from_string("21/8") == BigRational(21, 8));
    CHECK(BigRational::from_string("-3.25") == BigRational(-13, 4));
    CHECK(BigRational::from_string("42") == BigRational(42));
    CHECK_THROWS_AS(BigRational::from_string("1/0"), DomainError);
    CHECK_THROWS_AS(BigRational::from_string("x"), DomainError);
    CHECK_THROWS_AS(BigRational::from_string(""), DomainError);
    CHECK(BigRational(3, 5).to_decimal_string(4) == "0.6000");
    CHECK(BigRational(-1, 3).to_decimal_string(5) == "-0.33333");
    CHECK(BigRational(2, 3).to_decimal_string(3) == "0.667");
    CHECK(BigRational(5).to_decimal_string(0) == "5");
    // ties round away from zero
    CHECK(BigRational(1, 2).to_decimal_string(0) == "1");
}

TEST_CASE("BigRational from_double is exact") {
    CHECK(BigRational::from_double(0.5) == BigRational(1, 2));
    CHECK(BigRational::from_double(0.1) == BigRational(BigInt("3602879701896397"), pow2(55)));
}

TEST_CASE("poly_eval worked examples") {
    IntPoly p4(std::vector<BigInt>{3, 0, 6, 0, 1});  // t^4+6t^2+3
    CHECK(poly_eval(p4, BigRational(1)) == BigRational(10));
    CHECK(poly_eval(IntPoly(), BigRational(7, 3)) == BigRational());
    IntPoly q3(std::vector<BigInt>{0, 5, 0, 1});  // t^3+5t
    CHECK(poly_eval(q3, BigRational(1, 2)) == BigRational(21, 8));
}

TEST_CASE("poly_derivative worked examples") {
    IntPoly p(std::vector<BigInt>{1, 0, 1});  // t^2+1
    CHECK(poly_derivative(p) == IntPoly(std::vector<BigInt>{0, 2}));
    CHECK(poly_derivative(IntPoly::constant(1)).is_zero());
    IntPoly p4(std::vector<BigInt>{3, 0, 6, 0, 1});
    CHECK(poly_derivative(p4) == IntPoly(std::vector<BigInt>{0, 12, 0, 4}));
    CHECK(poly_derivative(p4).degree() == p4.degree() - 1);
}

TEST_CASE("poly arithmetic worked examples") {
    IntPoly t(std::vector<BigInt>{0, 1});
    IntPoly one = IntPoly::constant(1);
    CHECK(poly_add(t, one) == IntPoly(std::vector<BigInt>{1, 1}));
    IntPoly t2p1(std::vector<BigInt>{1, 0, 1});
    CHECK(poly_mul(t, t2p1) == IntPoly(std::vector<BigInt>{0, 1, 0, 1}));
    CHECK(poly_shift_mul_t(t2p1) == poly_mul(t, t2p1));
    CHECK(poly_sub(t2p1, t2p1).is_zero());
}

TEST_CASE("canonical form ignores trailing zeros") {
    IntPoly a(std::vector<BigInt>{1, 2, 0, 0});
    IntPoly b(std::vector<BigInt>{1, 2});
    CHECK(a == b);
    CHECK(a.degree() == 1);
    CHECK(IntPoly(std::vector<BigInt>{0, 0}).is_zero());
    CHECK(IntPoly().degree() == -1);
    CHECK(a.coeff(17) == 0);
}

TEST_CASE("polynomial strings") {
    CHECK(IntPoly(std::vector<BigInt>{3, 0, 6, 0, 1}).to_string() == "t^4+6t^2+3");
    CHECK(IntPoly(std::vector<BigInt>{-1, 0, 1}).to_string() == "t^2-1");
    CHECK(IntPoly(std::vector<BigInt>{0, 1}).to_string() == "t");
    CHECK(IntPoly(std::vector<BigInt>{0, -2}).to_string() == "-2t");
    CHECK(IntPoly().to_string() == "0");
    CHECK(IntPoly::constant(1).to_string() == "1");
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        IntPoly p = random_poly(rng);
        IntPoly q = random_poly(rng);
        BigRational x = random_rational(rng);
        CHECK(poly_eval(p + q, x) == poly_eval(p, x) + poly_eval(q, x));
        CHECK(poly_eval(p * q, x) == poly_eval(p, x) * poly_eval(q, x));
    }
}

TEST_CASE("derivative satisfies the product rule") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        IntPoly p = random_poly(rng);
        IntPoly q = random_poly(rng);
        CHECK(poly_derivative(p * q) == poly_derivative(p) * q + p * poly_derivative(q));
    }
}
