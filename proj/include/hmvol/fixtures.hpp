#pragma once

// Closed forms for the worked families, coded from their final displayed
// shape. Nothing here calls into the density, special value or volume code:
// Bernoulli numbers come from power series division, characters from
// Euler's criterion and factorizations from trial division.

#include <cstdint>
#include <utility>
#include <vector>

#include "hmvol/error.hpp"
#include "hmvol/integer.hpp"

namespace hmvol::fixtures {

namespace detail {

inline std::vector<std::pair<long, int>> trial_factor(long n) {
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline long powmod(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = static_cast<long>((__int128)r * b % m);
        b = static_cast<long>((__int128)b * b % m);
        e >>= 1;
    }
    return r;
}

// (D/p) for a prime p: Euler's criterion at odd p, the mod 8 rule at p = 2.
inline int symbol_at_prime(long D, long p) {
    if (p == 2) {
        if (D % 2 == 0) return 0;
        const long r = ((D % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    const long a = ((D % p) + p) % p;
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// e^{x} truncated, coefficients of x^k / k! scaled: returns c_k = a^k / k!.
inline std::vector<Rational> exp_series(const Rational& a, unsigned n) {
    std::vector<Rational> c(n + 1);
    c[0] = 1;
    for (unsigned k = 1; k <= n; ++k) {
        c[k] = c[k - 1] * a / Rational(k);
        c[k].canonicalize();
    }
    return c;
}

// num / den as power series to order n; den[0] != 0.
inline std::vector<Rational> series_divide(const std::vector<Rational>& num, const std::vector<Rational>& den,
                                           unsigned n) {
    std::vector<Rational> q(n + 1);
    for (unsigned k = 0; k <= n; ++k) {
        Rational s = k < num.size() ? num[k] : Rational(0);
        for (unsigned j = 1; j <= k && j < den.size(); ++j) s -= den[j] * q[k - j];
        q[k] = s / den[0];
        q[k].canonicalize();
    }
    return q;
}

}  // namespace detail

inline int rho(long d) { return static_cast<int>(detail::trial_factor(d).size()); }

inline std::vector<long> prime_divisors(long d) {
    std::vector<long> out;
    for (auto [p, e] : detail::trial_factor(d)) out.push_back(p);
    return out;
}

/// p^s || d.
inline int exponent_of(long p, long d) {
    int s = 0;
    while (d % p == 0) {
        d /= p;
        ++s;
    }
    return s;
}

/// Kronecker character chi_D(a) for a >= 1, multiplicative in a.
inline int chi(long D, long a) {
    int r = 1;
    for (auto [p, e] : detail::trial_factor(a)) {
        const int s = detail::symbol_at_prime(D, p);
        if (s == 0) return 0;
        if (e % 2) r *= s;
    }
    return r;
}

/// n! [x^n] x / (e^x - 1).
inline Rational bernoulli(unsigned n) {
    // (e^x - 1)/x = sum x^k / (k+1)!
    std::vector<Rational> den(n + 1);
    Rational f = 1;
    for (unsigned k = 0; k <= n; ++k) {
        f /= Rational(k + 1);
        den[k] = f;
    }
    const auto q = detail::series_divide({Rational(1)}, den, n);
    Rational fact = 1;
    for (unsigned k = 2; k <= n; ++k) fact *= k;
    Rational b = q[n] * fact;
    b.canonicalize();
    return b;
}

/// k! [x^k] sum_{a=1}^{f} chi(a) x e^{ax} / (e^{fx} - 1), f = |D|.
inline Rational generalized_bernoulli(unsigned k, long D) {
    const long f = D < 0 ? -D : D;
    std::vector<Rational> num(k + 1, Rational(0));
    for (long a = 1; a <= f; ++a) {
        const int c = chi(D, a);
        if (c == 0) continue;
        const auto e = detail::exp_series(Rational(a), k);
        for (unsigned j = 0; j <= k; ++j) num[j] += c * e[j];
    }
    // (e^{fx} - 1)/x = sum f^{j+1} x^j / (j+1)!
    const auto e = detail::exp_series(Rational(f), k + 1);
    std::vector<Rational> den(k + 1);
    for (unsigned j = 0; j <= k; ++j) den[j] = e[j + 1];
    const auto q = detail::series_divide(num, den, k);
    Rational fact = 1;
    for (unsigned j = 2; j <= k; ++j) fact *= j;
    Rational b = q[k] * fact;
    b.canonicalize();
    return b;
}

inline Rational power(const Rational& x, long e) {
    Rational r = 1;
    const Rational b = e < 0 ? Rational(1) / x : x;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
    r.canonicalize();
    return r;
}

inline Rational two_to(long e) { return power(Rational(2), e); }

/// P_p(n) written out.
inline Rational p_product(long p, int n) {
    Rational r = 1;
    for (int i = 1; i <= n; ++i) r *= 1 - power(Rational(p), -2 * i);
    r.canonicalize();
    return r;
}

/// B_2 B_4 ... B_top.
inline Rational bernoulli_product(unsigned top) {
    Rational r = 1;
    for (unsigned k = 2; k <= top; k += 2) r *= bernoulli(k);
    return r;
}

/// (2n)!! = 2 4 ... 2n.
inline Rational even_double_factorial(unsigned two_n) {
    Rational r = 1;
    for (unsigned k = 2; k <= two_n; k += 2) r *= k;
    return r;
}

inline Rational factorial(unsigned n) {
    Rational r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Rational prod_over_divisors(long d, long exponent) {
    Rational r = 1;
    for (long p : prime_divisors(d)) r *= 1 + power(Rational(p), -exponent);
    return r;
}

// ---------------------------------------------------------------------------
// Volumes

/// vol_HM(O+(II_{2,8m+2})) = 2^{-(4m+1)} B_2...B_{8m+2}/(8m+2)!! * B_{4m+2}/(4m+2).
inline Rational ii_volume(unsigned m) {
    return two_to(-(4 * static_cast<long>(m) + 1)) * bernoulli_product(8 * m + 2) / even_double_factorial(8 * m + 2) *
           bernoulli(4 * m + 2) / Rational(4 * m + 2);
}

/// vol(O~+(T_{2,8m+2})) / vol(O~+(II_{2,8m+2})).
inline Rational t_ratio(unsigned m) {
    return (two_to(4 * m + 1) + 1) * (two_to(4 * m + 2) - 1);
}

/// vol_HM(O~+(L_{2d}^{(m)})), n = 8m+3, with the extra factor 2 at d = 1.
inline Rational l_volume(unsigned m, long d) {
    const long h = 4 * static_cast<long>(m) + 2;  // (n+1)/2
    Rational v = power(Rational(d) / 2, h) * prod_over_divisors(d, h) * abs(bernoulli_product(8 * m + 4)) /
                 even_double_factorial(8 * m + 4);
    return d == 1 ? 2 * v : v;
}

/// Coefficient of k^19 in dim S_k(O~+(L_{2d}^{(2)})), d > 1.
inline Rational k3_cusp_leading(long d) {
    return two_to(-9) / factorial(19) * power(Rational(d), 10) * prod_over_divisors(d, 10) *
           abs(bernoulli_product(20)) / even_double_factorial(20);
}

inline Rational sp2_volume() { return two_to(-4) * abs(bernoulli(2) * bernoulli(4)); }
inline Rational sp2_cusp_leading() { return two_to(-4) / 3 * abs(bernoulli(2) * bernoulli(4)); }

/// vol_HM(SO~+(L_{2d}^{(0)})) = 2^{-4} d^2 prod_{p|d}(1+p^{-2}) |B_2 B_4|, d > 1.
inline Rational paramodular_volume(long d) {
    return two_to(-4) * Rational(d * d) * prod_over_divisors(d, 2) * abs(bernoulli(2) * bernoulli(4));
}

inline Rational paramodular_cusp_leading(long d) {
    return Rational(d * d) / 48 * prod_over_divisors(d, 2) * abs(bernoulli(2) * bernoulli(4));
}

/// Prime level: (d^2 + 1) / 8640.
inline Rational paramodular_cusp_leading_prime(long d) { return Rational(d * d + 1) / 8640; }

struct QuadraticField {
    long D;
    long t;
};

/// d = d_0 t^2 with d_0 squarefree; D = d_0 or 4 d_0.
inline QuadraticField real_quadratic(long d) {
    long d0 = 1, t = 1;
    for (auto [p, e] : detail::trial_factor(d)) {
        if (e % 2) d0 *= p;
        for (int i = 0; i < e / 2; ++i) t *= p;
    }
    return {d0 % 4 == 1 ? d0 : 4 * d0, t};
}

/// vol_HM(O~+(K_{2d}^{(m)})) = F_2(d) t^{8m+3} B_2...B_{8m+2}/(8m+2)!! B_{4m+2,chi_D}/(4m+2)
/// prod_{p|2t}(1 - chi_D(p) p^{-(4m+2)}), with
/// F_2(d) = 2^{4m+1+delta_{1,d}} for D odd and 2^{-4m-2} for D even.
inline Rational k_volume(unsigned m, long d) {
    const auto [D, t] = real_quadratic(d);
    const long k = 4 * static_cast<long>(m) + 2;
    long e = (D % 2) ? 4 * static_cast<long>(m) + 1 : -4 * static_cast<long>(m) - 2;
    if (d == 1) e += 1;
    Rational euler = 1;
    for (long p : prime_divisors(2 * t)) euler *= 1 - Rational(chi(D, p)) * power(Rational(p), -k);
    return two_to(e) * power(Rational(t), 8 * m + 3) * bernoulli_product(8 * m + 2) /
           even_double_factorial(8 * m + 2) * generalized_bernoulli(static_cast<unsigned>(k), D) / Rational(k) * euler;
}

/// vol_HM(O~+(N_{2d}^{(m)})), d = 1 mod 4: 2^{delta_{1,d}-4m-2} t^{8m+3} B_2...B_{8m+2}/(8m+2)!!
/// B_{4m+2,chi_D}/(4m+2) prod_{p|t}(1 - chi_D(p) p^{-(4m+2)}).
inline Rational n_volume(unsigned m, long d) {
    const auto [D, t] = real_quadratic(d);
    const long k = 4 * static_cast<long>(m) + 2;
    const long e = (d == 1 ? 1 : 0) - 4 * static_cast<long>(m) - 2;
    Rational euler = 1;
    for (long p : prime_divisors(t)) euler *= 1 - Rational(chi(D, p)) * power(Rational(p), -k);
    return two_to(e) * power(Rational(t), 8 * m + 3) * bernoulli_product(8 * m + 2) /
           even_double_factorial(8 * m + 2) * generalized_bernoulli(static_cast<unsigned>(k), D) / Rational(k) * euler;
}

// ---------------------------------------------------------------------------
// Local density tables

inline Rational alpha_ii(unsigned m, long p) {
    const long h = 4 * static_cast<long>(m) + 2;
    return (p == 2 ? two_to(8 * m + 4) : Rational(1)) * p_product(p, static_cast<int>(h)) /
           (1 + power(Rational(p), -h));
}

/// alpha_2(T_{2,8m+2}) = 2^{8m+7} (1-2^{-2})...(1-2^{-8m}) (1-2^{-(4m+1)}).
inline Rational alpha_t_two(unsigned m) {
    return two_to(8 * m + 7) * p_product(2, static_cast<int>(4 * m)) * (1 - two_to(-(4 * static_cast<long>(m) + 1)));
}

inline Rational alpha_l(unsigned m, long d, long p) {
    const int h = static_cast<int>(4 * m + 2);
    const int s = exponent_of(p, d);
    if (p == 2) {
        if (s == 0) return two_to(8 * m + 6) * p_product(2, h);
        return two_to(8 * m + 7 + s) * p_product(2, h) / (1 + two_to(-h));
    }
    if (s == 0) return p_product(p, h);
    return 2 * power(Rational(p), s) * p_product(p, h) / (1 + power(Rational(p), -h));
}

inline Rational alpha_k(unsigned m, long d, long p) {
    const int h = static_cast<int>(4 * m + 1);
    if (p == 2) {
        long v;
        switch (d % 4) {
            case 1: v = 6; break;
            case 3: v = 7; break;
            case 2: v = 8; break;
            default: {
                const int s = exponent_of(2, d);
                v = s == 2 ? 9 : 8 + s;
                break;
            }
        }
        return two_to(8 * m + v) * p_product(2, h);
    }
    const int s = exponent_of(p, d);
    if (s == 0) return p_product(p, h) * (1 - Rational(chi(4 * d, p)) * power(Rational(p), -(h + 1)));
    return 2 * power(Rational(p), s) * p_product(p, h);
}

inline Rational alpha_n(unsigned m, long d, long p) {
    const int h = static_cast<int>(4 * m + 1);
    if (p == 2) return two_to(8 * m + 4) * p_product(2, h) * (1 - Rational(chi(d, 2)) * two_to(-(h + 1)));
    const int s = exponent_of(p, d);
    if (s == 0) return p_product(p, h) * (1 - Rational(chi(d, p)) * power(Rational(p), -(h + 1)));
    return 2 * power(Rational(p), s) * p_product(p, h);
}

}  // namespace hmvol::fixtures
