#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "hmvol/error.hpp"

namespace hmvol {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer ipow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

/// base^exp for any integer exponent; base must be nonzero when exp < 0.
inline Rational rpow(const Rational& base, long exp) {
    if (exp < 0) {
        if (base == 0) throw InternalError("rpow: zero to a negative power");
        Rational inv = 1 / base;
        return rpow(inv, -exp);
    }
    Integer num = ipow(base.get_num(), static_cast<unsigned long>(exp));
    Integer den = ipow(base.get_den(), static_cast<unsigned long>(exp));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Nonnegative residue of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// p-adic valuation of a nonzero integer.
inline int valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw InternalError("valuation of zero");
    Integer m = abs(n);
    int v = 0;
    Integer q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return v;
        m = q;
        ++v;
    }
}

/// p-adic valuation of a nonzero rational.
inline int valuation(const Rational& x, const Integer& p) {
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// 2 * 4 * ... * n for even n, 1 * 3 * ... * n for odd n.
inline Integer double_factorial(unsigned long n) {
    Integer r;
    mpz_2fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw InternalError("inverse_mod: " + a.get_str() + " is not invertible mod " + m.get_str());
    return r;
}

inline bool fits_long(const Integer& n) { return n.fits_slong_p() != 0; }

inline long to_long(const Integer& n) {
    if (!fits_long(n)) throw InternalError("integer " + n.get_str() + " does not fit in a machine word");
    return n.get_si();
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline std::string to_string(const Rational& x) { return x.get_str(); }

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace hmvol
