#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <string>

#include "hmvol/integer.hpp"
#include "hmvol/special_values.hpp"
#include "hmvol/symbolic.hpp"

namespace hmvol::numeric {

/// 100 significant decimal digits; the numeric echo never needs more.
using Real = boost::multiprecision::cpp_dec_float_100;

inline Real to_real(const Integer& n) { return Real(n.get_str()); }
inline Real to_real(const Rational& q) { return to_real(q.get_num()) / to_real(q.get_den()); }

inline Real pi() { return boost::math::constants::pi<Real>(); }

inline Real evaluate(const SymbolicReal& x) {
    Real r = to_real(x.coefficient());
    if (x.pi_half_exponent() != 0) r *= pow(sqrt(pi()), x.pi_half_exponent());
    if (x.radicand() != 1) r *= sqrt(to_real(x.radicand()));
    return r;
}

inline std::string format(const Real& x, int digits) {
    return x.str(digits, std::ios_base::scientific);
}

/// zeta(s) for real s > 1 by Euler-Maclaurin summation: N terms directly,
/// then the integral, the half term and `terms` Bernoulli corrections.
inline Real zeta_em(const Real& s, unsigned N = 40, unsigned terms = 30) {
    Real sum = 0;
    for (unsigned n = 1; n < N; ++n) sum += pow(Real(n), -s);
    const Real NN(N);
    sum += pow(NN, 1 - s) / (s - 1) + pow(NN, -s) / 2;
    // sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    Real rising = s;
    for (unsigned k = 1; k <= terms; ++k) {
        sum += to_real(bernoulli(2 * k)) / to_real(factorial(2 * k)) * rising * pow(NN, -s - 2 * k + 1);
        rising *= (s + 2 * k - 1) * (s + 2 * k);
    }
    return sum;
}

/// log Gamma(x) for x > 0: shift x up by recursion, then Stirling's series.
inline Real lgamma_stirling(Real x, unsigned terms = 40) {
    Real shift = 0;
    while (x < 60) {
        shift += log(x);
        x += 1;
    }
    Real r = (x - Real(1) / 2) * log(x) - x + log(2 * pi()) / 2;
    Real xp = x;
    const Real x2 = x * x;
    for (unsigned k = 1; k <= terms; ++k) {
        r += to_real(bernoulli(2 * k)) / (Real(2 * k) * Real(2 * k - 1) * xp);
        xp *= x2;
    }
    return r - shift;
}

inline Real gamma_stirling(const Real& x) { return exp(lgamma_stirling(x)); }

/// L(s, chi_D) for real s > 1 via the Hurwitz decomposition
/// L = |D|^{-s} sum_{a=1}^{|D|} chi(a) zeta(s, a/|D|), each Hurwitz zeta by Euler-Maclaurin.
inline Real hurwitz_em(const Real& s, const Real& a, unsigned N = 40, unsigned terms = 30) {
    Real sum = 0;
    for (unsigned n = 0; n < N; ++n) sum += pow(a + n, -s);
    const Real x = a + N;
    sum += pow(x, 1 - s) / (s - 1) + pow(x, -s) / 2;
    Real rising = s;
    for (unsigned k = 1; k <= terms; ++k) {
        sum += to_real(bernoulli(2 * k)) / to_real(factorial(2 * k)) * rising * pow(x, -s - 2 * k + 1);
        rising *= (s + 2 * k - 1) * (s + 2 * k);
    }
    return sum;
}

inline Real l_series(const Real& s, const Integer& D) {
    const Integer f = abs(D);
    Real total = 0;
    for (Integer a = 1; a <= f; ++a) {
        const int chi = kronecker(D, a);
        if (chi == 0) continue;
        total += chi * hurwitz_em(s, to_real(a) / to_real(f));
    }
    return total * pow(to_real(f), -s);
}

/// Relative difference |a-b|/max(|a|,|b|), zero when both vanish.
inline Real relative_error(const Real& a, const Real& b) {
    const Real m = abs(a) > abs(b) ? abs(a) : abs(b);
    return m == 0 ? Real(0) : Real(abs(a - b) / m);
}

}  // namespace hmvol::numeric
