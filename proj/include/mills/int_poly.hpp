#pragma once

// Dense univariate polynomials over the arbitrary-precision integers.
// Canonical form: no stored trailing (highest-index) zero coefficients;
// the zero polynomial stores nothing and reports degree -1.

#include <string>
#include <utility>
#include <vector>

#include "mills/rational.hpp"

namespace mills {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPoly constant(BigInt v) {
        std::vector<BigInt> c;
        c.push_back(std::move(v));
        return IntPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    // Coefficient of t^m; zero beyond the degree.
    const BigInt& coeff(int m) const {
        static const BigInt zero = 0;
        if (m < 0 || m >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<size_t>(m)];
    }

    const std::vector<BigInt>& coeffs() const { return c_; }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return a.c_ != b.c_; }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return IntPoly(std::move(c));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return IntPoly(std::move(c));
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(c));
    }

    friend IntPoly operator*(const BigInt& s, const IntPoly& p) {
        if (sgn(s) == 0) return IntPoly();
        std::vector<BigInt> c(p.c_);
        for (auto& v : c) v *= s;
        return IntPoly(std::move(c));
    }

    // Multiplication by the monomial t: shifts every index up by one.
    IntPoly shift_mul_t() const {
        if (is_zero()) return IntPoly();
        std::vector<BigInt> c(c_.size() + 1);
        for (size_t i = 0; i < c_.size(); ++i) c[i + 1] = c_[i];
        return IntPoly(std::move(c));
    }

    // Formal derivative; drops the degree by exactly one for nonconstant input.
    IntPoly derivative() const {
        if (c_.size() <= 1) return IntPoly();
        std::vector<BigInt> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = BigInt(static_cast<long>(i)) * c_[i];
        return IntPoly(std::move(c));
    }

    // Exact evaluation at a rational point. Horner on the numerator with the
    // matching denominator power, so every intermediate stays integral.
    BigRational eval(const BigRational& x) const {
        if (is_zero()) return BigRational();
        const BigInt a = x.num();
        const BigInt b = x.den();
        BigInt acc = c_.back();
        BigInt bpow = 1;
        for (int m = degree() - 1; m >= 0; --m) {
            acc *= a;
            bpow *= b;
            acc += c_[static_cast<size_t>(m)] * bpow;
        }
        return BigRational(acc, bpow);
    }

    BigRational operator()(const BigRational& x) const { return eval(x); }

    // Descending powers, unit coefficients elided: "t^4+6t^2+3", "t^2-1".
    std::string to_string(char var = 't') const;

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }

    std::vector<BigInt> c_;
};

inline IntPoly poly_add(const IntPoly& a, const IntPoly& b) { return a + b; }
inline IntPoly poly_sub(const IntPoly& a, const IntPoly& b) { return a - b; }
inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) { return a * b; }
inline IntPoly poly_shift_mul_t(const IntPoly& a) { return a.shift_mul_t(); }
inline IntPoly poly_derivative(const IntPoly& p) { return p.derivative(); }
inline BigRational poly_eval(const IntPoly& p, const BigRational& x) { return p.eval(x); }

inline std::string IntPoly::to_string(char var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int m = degree(); m >= 0; --m) {
        const BigInt& c = coeff(m);
        if (sgn(c) == 0) continue;
        BigInt a = abs(c);
        if (out.empty()) {
            if (sgn(c) < 0) out += '-';
        } else {
            out += sgn(c) < 0 ? '-' : '+';
        }
        if (m == 0 || a != 1) out += a.get_str();
        if (m >= 1) {
            out += var;
            if (m >= 2) out += "^" + std::to_string(m);
        }
    }
    return out;
}

}  // namespace mills
