#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "hmvol/integer.hpp"

namespace hmvol {

inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace detail {

// Pollard rho with Brent's cycle detection. n must be odd and composite.
inline Integer pollard_rho(const Integer& n) {
    for (unsigned long c = 1;; ++c) {
        Integer x = 2, y = 2, d = 1, q = 1, ys;
        auto f = [&](const Integer& v) { return mod(v * v + c, n); };
        unsigned long r = 1;
        const unsigned long m = 64;
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mod(q * abs(x - y), n);
                }
                d = gcd(q, n);
                k += m;
            } while (k < r && d == 1);
            r *= 2;
        } while (d == 1);
        if (d == n) {
            do {
                ys = f(ys);
                d = gcd(abs(x - ys), n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

inline void factor_into(Integer n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Integer d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of n >= 1 as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<Integer, int>> factorize(const Integer& n) {
    if (n < 1) throw PreconditionError("factorize: argument must be positive, got " + n.get_str());
    std::map<Integer, int> found;
    Integer m = n;
    for (unsigned long p = 2; p < 10000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            ++found[Integer(p)];
            m /= p;
        }
    }
    if (m > 1) detail::factor_into(m, found);
    return {found.begin(), found.end()};
}

/// The factorization as a sorted multiset of primes.
inline std::vector<Integer> prime_multiset(const Integer& n) {
    std::vector<Integer> out;
    for (const auto& [p, e] : factorize(n))
        for (int i = 0; i < e; ++i) out.push_back(p);
    return out;
}

inline std::vector<Integer> distinct_primes(const Integer& n) {
    std::vector<Integer> out;
    for (const auto& pe : factorize(abs(n))) out.push_back(pe.first);
    return out;
}

/// Number of distinct prime divisors; zero for n = 1.
inline int num_prime_divisors(const Integer& n) {
    return static_cast<int>(factorize(abs(n)).size());
}

/// Writes n = core * square^2 with core squarefree and the sign of n kept on core.
inline std::pair<Integer, Integer> squarefree_decomposition(const Integer& n) {
    if (n == 0) throw PreconditionError("squarefree decomposition of zero");
    Integer core = sgn(n) < 0 ? -1 : 1;
    Integer square = 1;
    for (const auto& [p, e] : factorize(abs(n))) {
        if (e % 2) core *= p;
        square *= ipow(p, static_cast<unsigned long>(e / 2));
    }
    return {core, square};
}

}  // namespace hmvol
