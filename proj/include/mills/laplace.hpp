#pragma once

// Laplace polynomials P_k, Q_k and their exact coefficient families.
//
// Three independent construction routes are kept side by side on purpose:
//   * derivative recurrences  P_{k+1} = t P_k + P_k',  Q_k = P_k + Q_{k-1}'
//   * three-term recurrences  P_{k+1} = t P_k + k P_{k-1},
//                             Q_{k+1} = t Q_k + (k+1) Q_{k-1}
//   * closed forms            p_{k,m} = k!/(m! 2^n n!),  n = (k-m)/2,
//                             q_{k,m} = ((k+m)/2)!/m! * 2^-n * sum_{j<=n} C(k+1,j)
// plus the coefficient-level recurrences behind CoeffTable. Exact agreement
// of all routes is a first-class test, not an implementation detail.

#include <map>
#include <mutex>
#include <vector>

#include "mills/errors.hpp"
#include "mills/int_poly.hpp"

namespace mills {

struct LaplacePair {
    int k = 0;
    IntPoly P;       // degree k, monic
    IntPoly Q_prev;  // Q_{k-1}, degree k-1, monic
};

namespace detail {

struct PolyCache {
    std::mutex mu;
    std::vector<IntPoly> P{IntPoly::constant(1)};
    std::vector<IntPoly> Q{IntPoly::constant(1)};
};

inline PolyCache& derivative_route_cache() {
    static PolyCache c;
    return c;
}

inline PolyCache& three_term_route_cache() {
    static PolyCache c;
    return c;
}

inline void ensure_derivative_route(PolyCache& c, int k) {
    while (static_cast<int>(c.P.size()) <= k) {
        const IntPoly& pk = c.P.back();
        c.P.push_back(pk.shift_mul_t() + pk.derivative());
        // Q_j = P_j + Q_{j-1}' with the P of the same order, so fill after P.
        size_t j = c.Q.size();
        c.Q.push_back(c.P[j] + c.Q[j - 1].derivative());
    }
}

inline void ensure_three_term_route(PolyCache& c, int k) {
    if (c.P.size() == 1) {
        IntPoly t(std::vector<BigInt>{0, 1});
        c.P.push_back(t);
        c.Q.push_back(t);
    }
    while (static_cast<int>(c.P.size()) <= k) {
        size_t j = c.P.size() - 1;  // have orders 0..j, building j+1
        c.P.push_back(c.P[j].shift_mul_t() + BigInt(static_cast<long>(j)) * c.P[j - 1]);
        c.Q.push_back(c.Q[j].shift_mul_t() + BigInt(static_cast<long>(j + 1)) * c.Q[j - 1]);
    }
}

}  // namespace detail

// P_k and Q_k from the derivative-recurrence route; memoized upward from
// order 0, synchronized, returned by value (immutable snapshots).
inline IntPoly laplace_P(int k) {
    if (k < 0) throw DomainError("laplace_P: negative order");
    auto& c = detail::derivative_route_cache();
    std::lock_guard<std::mutex> lock(c.mu);
    detail::ensure_derivative_route(c, k);
    return c.P[static_cast<size_t>(k)];
}

inline IntPoly laplace_Q(int k) {
    if (k < 0) throw DomainError("laplace_Q: negative order");
    auto& c = detail::derivative_route_cache();
    std::lock_guard<std::mutex> lock(c.mu);
    detail::ensure_derivative_route(c, k);
    return c.Q[static_cast<size_t>(k)];
}

inline LaplacePair laplace_pair_recurrence(int k) {
    if (k < 1) throw DomainError("laplace_pair_recurrence: k must be >= 1");
    auto& c = detail::derivative_route_cache();
    std::lock_guard<std::mutex> lock(c.mu);
    detail::ensure_derivative_route(c, k);
    return LaplacePair{k, c.P[static_cast<size_t>(k)], c.Q[static_cast<size_t>(k) - 1]};
}

inline LaplacePair laplace_pair_three_term(int k) {
    if (k < 1) throw DomainError("laplace_pair_three_term: k must be >= 1");
    auto& c = detail::three_term_route_cache();
    std::lock_guard<std::mutex> lock(c.mu);
    detail::ensure_three_term_route(c, k);
    return LaplacePair{k, c.P[static_cast<size_t>(k)], c.Q[static_cast<size_t>(k) - 1]};
}

// ---- Closed forms ----

// k!/(m! 2^n n!) = C(k,m) * (2n-1)!!, zero off the parity lattice.
inline BigInt p_coeff_closed(long k, long m) {
    if (k < 0 || m < 0) throw DomainError("p_coeff_closed: negative index");
    if (m > k || (k - m) % 2 != 0) return 0;
    long n = (k - m) / 2;
    return binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(m)) * double_factorial(2 * n - 1);
}

// ((k+m)/2)!/m! * 2^-n * sum_{j=0}^{n} C(k+1, j). The division by 2^n is
// performed last and checked: a failure would mean the formula was misread.
inline BigInt q_coeff_closed(long k, long m) {
    if (k < 0 || m < 0) throw DomainError("q_coeff_closed: negative index");
    if (m > k || (k - m) % 2 != 0) return 0;
    const long n = (k - m) / 2;
    BigInt rising = 1;  // ((k+m)/2)! / m!
    for (long i = m + 1; i <= (k + m) / 2; ++i) rising *= i;
    BigInt binom_sum = 0;
    BigInt term = 1;  // C(k+1, j), advanced incrementally
    for (long j = 0; j <= n; ++j) {
        binom_sum += term;
        term = term * (k + 1 - j) / (j + 1);
    }
    BigInt numer = rising * binom_sum;
    if (mpz_divisible_2exp_p(numer.get_mpz_t(), static_cast<mp_bitcnt_t>(n)) == 0)
        throw IntegralityViolation("q_coeff_closed: 2^n does not divide the numerator at k=" +
                                   std::to_string(k) + ", m=" + std::to_string(m));
    BigInt out;
    mpz_tdiv_q_2exp(out.get_mpz_t(), numer.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
    return out;
}

// beta_{k,j} = n!/j! with n = (k+j)/2, zero off the parity lattice.
inline BigInt beta_coeff(long k, long j) {
    if (k < 0 || j < 0) throw DomainError("beta_coeff: negative index");
    if (j > k || (k - j) % 2 != 0) return 0;
    BigInt r = 1;
    for (long i = j + 1; i <= (k + j) / 2; ++i) r *= i;
    return r;
}

// ---- Coefficient tables (recurrence route) ----

enum class CoeffFamily { P, Q, Beta };

// Lazily extendable triangular table filled row by row through the
// coefficient recurrences. Filling is the only mutation and is mutex-confined;
// readers only ever see fully written rows.
class CoeffTable {
public:
    explicit CoeffTable(CoeffFamily family) : family_(family) {}

    CoeffFamily family() const { return family_; }

    int max_k() const {
        std::lock_guard<std::mutex> lock(mu_);
        return static_cast<int>(rows_.size()) - 1;
    }

    // Entry (k, m); fills rows up to k on demand.
    BigInt entry(int k, int m) const {
        if (k < 0 || m < 0) throw DomainError("CoeffTable::entry: negative index");
        if (m > k || (k - m) % 2 != 0) return 0;
        std::lock_guard<std::mutex> lock(mu_);
        ensure_locked(k);
        return rows_[static_cast<size_t>(k)][static_cast<size_t>(m)];
    }

    // One step of the family's recurrence, computed from rows that must
    // already be present. Does not extend the table (the Q family's internal
    // p rows are a private dependency and are grown as needed).
    BigInt recurrence_step(int k, int m) const {
        if (k < 1 || m < 0) throw DomainError("CoeffTable::recurrence_step: bad index");
        std::lock_guard<std::mutex> lock(mu_);
        const int have = static_cast<int>(rows_.size()) - 1;
        const int need = family_ == CoeffFamily::Beta ? k - 2 : k - 1;
        if (have < need)
            throw MissingDependency("CoeffTable: row " + std::to_string(k) +
                                    " requested before lower rows were filled");
        if (family_ == CoeffFamily::Q) ensure_p_rows_locked(k);
        return step_locked(k, m);
    }

private:
    BigInt at_locked(int k, int m) const {
        if (k < 0 || m < 0 || m > k) return 0;
        return rows_[static_cast<size_t>(k)][static_cast<size_t>(m)];
    }

    BigInt p_at_locked(int k, int m) const {
        if (k < 0 || m < 0 || m > k) return 0;
        return p_rows_[static_cast<size_t>(k)][static_cast<size_t>(m)];
    }

    // Value of entry (k, m) from rows < k (and the p table for family Q).
    BigInt step_locked(int k, int m) const {
        switch (family_) {
            case CoeffFamily::P:
                // p_{k,m} = p_{k-1,m-1} + (m+1) p_{k-1,m+1}; at m = 0 this
                // degenerates to p_{k,0} = p_{k-1,1}.
                if (m == 0) return at_locked(k - 1, 1);
                return at_locked(k - 1, m - 1) + BigInt(m + 1) * at_locked(k - 1, m + 1);
            case CoeffFamily::Q:
                // q_{k,m} = p_{k,m} + (m+1) q_{k-1,m+1}
                return p_at_locked(k, m) + BigInt(m + 1) * at_locked(k - 1, m + 1);
            case CoeffFamily::Beta:
                // beta_{k,j} = beta_{k-1,j-1} - (j+1) beta_{k-1,j+1} + k beta_{k-2,j}
                return at_locked(k - 1, m - 1) - BigInt(m + 1) * at_locked(k - 1, m + 1) +
                       BigInt(k) * at_locked(k - 2, m);
        }
        throw std::logic_error("CoeffTable: unknown family");
    }

    void ensure_p_rows_locked(int k) const {
        if (p_rows_.empty()) p_rows_.push_back({BigInt(1)});
        while (static_cast<int>(p_rows_.size()) <= k) {
            const int kk = static_cast<int>(p_rows_.size());
            std::vector<BigInt> prow(static_cast<size_t>(kk) + 1);
            for (int m = 0; m <= kk; ++m)
                prow[static_cast<size_t>(m)] =
                    m == 0 ? p_at_locked(kk - 1, 1)
                           : p_at_locked(kk - 1, m - 1) + BigInt(m + 1) * p_at_locked(kk - 1, m + 1);
            p_rows_.push_back(std::move(prow));
        }
    }

    void ensure_locked(int k) const {
        if (rows_.empty()) rows_.push_back({BigInt(1)});
        while (static_cast<int>(rows_.size()) <= k) {
            const int kk = static_cast<int>(rows_.size());
            if (family_ == CoeffFamily::Q) ensure_p_rows_locked(kk);
            std::vector<BigInt> row(static_cast<size_t>(kk) + 1);
            for (int m = 0; m <= kk; ++m) {
                row[static_cast<size_t>(m)] = step_locked(kk, m);
                if (sgn(row[static_cast<size_t>(m)]) < 0)
                    throw std::logic_error("CoeffTable: negative entry, recurrence bug");
            }
            rows_.push_back(std::move(row));
        }
    }

    CoeffFamily family_;
    mutable std::mutex mu_;
    mutable std::vector<std::vector<BigInt>> rows_;
    mutable std::vector<std::vector<BigInt>> p_rows_;  // Q family only
};

inline BigInt coeff_recurrence_step(const CoeffTable& table, int k, int m) {
    return table.recurrence_step(k, m);
}

// ---- Polynomial-level identity checks ----

// P_k' = k P_{k-1}, exactly.
inline bool derivative_identity_check(int k) {
    if (k < 1) throw DomainError("derivative_identity_check: k must be >= 1");
    return laplace_P(k).derivative() == BigInt(k) * laplace_P(k - 1);
}

// P_k'' + t P_k' - k P_k; the contract is that this is the zero polynomial.
inline IntPoly ode_residual(int k) {
    if (k < 0) throw DomainError("ode_residual: negative order");
    IntPoly p = laplace_P(k);
    IntPoly dp = p.derivative();
    return dp.derivative() + dp.shift_mul_t() - BigInt(k) * p;
}

// The beta row of Q_k in the P basis: Q_k = sum_j beta_{k,j} P_j.
inline std::map<int, BigInt> expand_Q_in_P(int k) {
    if (k < 0) throw DomainError("expand_Q_in_P: negative order");
    std::map<int, BigInt> row;
    for (int j = k % 2; j <= k; j += 2) row[j] = beta_coeff(k, j);
    return row;
}

// m! q_{k,m} = sum_{j=0}^{n} (m+j)! p_{k-j,m+j} with n = (k-m)/2; the sum's
// upper limit only makes sense for m <= k, so that is required, not guessed.
inline bool qhat_sum_check(int k, int m) {
    if (k < 0 || m < 0 || m > k || (k - m) % 2 != 0)
        throw DomainError("qhat_sum_check: need 0 <= m <= k with k = m (mod 2)");
    const long n = (k - m) / 2;
    BigInt lhs = factorial(static_cast<unsigned long>(m)) * q_coeff_closed(k, m);
    BigInt rhs = 0;
    for (long j = 0; j <= n; ++j)
        rhs += factorial(static_cast<unsigned long>(m + j)) * p_coeff_closed(k - j, m + j);
    return lhs == rhs;
}

}  // namespace mills
