#pragma once

// Exact arbitrary-precision integers and rationals, GMP-backed.
// BigRational is kept canonical at all times: positive denominator,
// gcd(|num|, den) = 1, zero stored as 0/1.

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "mills/errors.hpp"

namespace mills {

using BigInt = mpz_class;

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// n!! for n >= -1, with (-1)!! = 0!! = 1.
inline BigInt double_factorial(long n) {
    if (n < -1) throw DomainError("double_factorial: n < -1");
    if (n <= 0) return 1;
    BigInt r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt pow2(unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline BigInt pow10(unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

class BigRational {
public:
    BigRational() : q_(0) {}
    BigRational(long n) : q_(n) {}  // NOLINT: implicit by design, integers are rationals
    BigRational(const BigInt& n) : q_(n) {}
    BigRational(const BigInt& num, const BigInt& den) : q_(num, den) {
        if (sgn(den) == 0) throw DomainError("BigRational: zero denominator");
        q_.canonicalize();
    }
    explicit BigRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // Exact conversion; every finite double is a dyadic rational.
    static BigRational from_double(double d);

    // Accepts "n", "n/d", and decimal strings like "-3.25".
    static BigRational from_string(std::string_view s);

    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    BigRational operator-() const { return BigRational(mpq_class(-q_)); }

    BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
    BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
    BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
    BigRational& operator/=(const BigRational& o) {
        if (o.is_zero()) throw DomainError("BigRational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a.q_, b.q_) == 0; }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return cmp(a.q_, b.q_) != 0; }
    friend bool operator<(const BigRational& a, const BigRational& b) { return cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const BigRational& a, const BigRational& b) { return cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return cmp(a.q_, b.q_) >= 0; }

    friend BigRational abs(const BigRational& a) { return BigRational(mpq_class(abs(a.q_))); }

    // "num" for integers, "num/den" otherwise.
    std::string to_string() const;

    // Always "num/den"; the exact-field wire format.
    std::string to_fraction_string() const;

    // Fixed-point decimal with `digits` fractional digits, rounded to
    // nearest with ties away from zero. Locale-independent.
    std::string to_decimal_string(int digits) const;

    double to_double() const { return q_.get_d(); }

private:
    mpq_class q_;
};

inline BigRational BigRational::from_double(double d) {
    if (!std::isfinite(d)) throw DomainError("BigRational::from_double: non-finite value");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), d);
    return BigRational(q);
}

inline BigRational BigRational::from_string(std::string_view s) {
    auto malformed = [&] { return DomainError("BigRational: malformed literal '" + std::string(s) + "'"); };
    if (s.empty()) throw malformed();
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    std::string intpart, tail;
    char sep = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            (sep ? tail : intpart) += c;
        } else if ((c == '/' || c == '.') && !sep) {
            sep = c;
        } else {
            throw malformed();
        }
    }
    if (intpart.empty() || (sep && tail.empty())) throw malformed();
    BigInt num(intpart, 10);
    BigInt den = 1;
    if (sep == '/') {
        den = BigInt(tail, 10);
        if (sgn(den) == 0) throw malformed();
    } else if (sep == '.') {
        den = pow10(tail.size());
        num = num * den + BigInt(tail, 10);
    }
    if (neg) num = -num;
    return BigRational(num, den);
}

inline BigRational rational_pow(const BigRational& x, unsigned long e) {
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), x.num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), x.den().get_mpz_t(), e);
    return BigRational(n, d);
}

inline std::string BigRational::to_string() const {
    return is_integer() ? q_.get_num().get_str() : q_.get_str();
}

inline std::string BigRational::to_fraction_string() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

inline std::string BigRational::to_decimal_string(int digits) const {
    if (digits < 0) throw DomainError("to_decimal_string: negative digit count");
    BigInt scaled_num = abs(num()) * pow10(static_cast<unsigned long>(digits));
    BigInt quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(), den().get_mpz_t());
    if (2 * rem >= den()) quot += 1;
    std::string s = quot.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    if (digits > 0) s.insert(s.size() - digits, ".");
    if (sign() < 0 && sgn(quot) != 0) s.insert(0, "-");
    return s;
}

}  // namespace mills
