#pragma once

#include <mutex>
#include <utility>
#include <vector>

#include "hmvol/error.hpp"
#include "hmvol/factor.hpp"
#include "hmvol/integer.hpp"
#include "hmvol/symbolic.hpp"

namespace hmvol {

inline constexpr unsigned kBernoulliCache = 64;

namespace detail {

class BernoulliTable {
public:
    static BernoulliTable& instance() {
        static BernoulliTable t;
        return t;
    }

    Rational get(unsigned n) {
        std::lock_guard<std::mutex> lock(mu_);
        if (n < values_.size()) return values_[n];
        if (n <= kBernoulliCache) {
            extend(values_, n);
            return values_[n];
        }
        std::vector<Rational> scratch = values_;
        extend(scratch, n);
        return scratch[n];
    }

private:
    BernoulliTable() { values_.push_back(Rational(1)); }

    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    static void extend(std::vector<Rational>& v, unsigned n) {
        while (v.size() <= n) {
            const unsigned m = static_cast<unsigned>(v.size());
            Rational s = 0;
            for (unsigned k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * v[k];
            Rational b = -s / Rational(m + 1);
            b.canonicalize();
            v.push_back(b);
        }
    }

    std::mutex mu_;
    std::vector<Rational> values_;
};

}  // namespace detail

/// B_n with B_1 = -1/2. Odd n > 1 gives 0.
inline Rational bernoulli(unsigned n) {
    if (n > 1 && n % 2) return 0;
    return detail::BernoulliTable::instance().get(n);
}

/// B_n(x) = sum_k C(n,k) B_k x^{n-k}.
inline Rational bernoulli_polynomial(unsigned n, const Rational& x) {
    Rational r = 0, xp = 1;
    for (unsigned j = 0; j <= n; ++j) {
        // term with B_{n-j} x^j
        r += Rational(binomial(n, j)) * bernoulli(n - j) * xp;
        xp *= x;
    }
    r.canonicalize();
    return r;
}

/// Kronecker symbol (a/n), GMP's extension of the Jacobi symbol to all n.
inline int kronecker(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

struct QuadraticDiscriminant {
    Integer discriminant;  // D
    Integer squarefree;    // d_0
    Integer cofactor;      // t, m = d_0 t^2
};

/// Discriminant of Q(sqrt(m)). m = 1 (or any square) gives D = 1.
inline QuadraticDiscriminant fundamental_discriminant(const Integer& m) {
    if (m == 0) throw PreconditionError("fundamental discriminant of zero");
    auto [d0, t] = squarefree_decomposition(m);
    Integer D = mod(d0, 4) == 1 ? d0 : Integer(4 * d0);
    return {D, d0, t};
}

/// B_{k,chi_D} = f^{k-1} sum_{a=1}^{f} chi_D(a) B_k(a/f), f = |D|.
inline Rational generalized_bernoulli(unsigned k, const Integer& D) {
    if (D == 1) return k == 1 ? Rational(1, 2) : bernoulli(k);
    const Integer f = abs(D);
    Rational s = 0;
    for (Integer a = 1; a <= f; ++a) {
        const int chi = kronecker(D, a);
        if (chi == 0) continue;
        s += chi * bernoulli_polynomial(k, Rational(a, f));
    }
    s *= Rational(ipow(f, k - 1));
    s.canonicalize();
    return s;
}

/// zeta(k2) for even k2 >= 2: (-1)^{k+1} B_{2k} 2^{2k-1} pi^{2k} / (2k)!.
inline SymbolicReal zeta_closed(unsigned k2) {
    if (k2 < 2 || k2 % 2) throw PreconditionError("zeta_closed needs an even argument >= 2");
    const unsigned k = k2 / 2;
    Rational c = bernoulli(k2) * Rational(ipow(Integer(2), k2 - 1)) / Rational(factorial(k2));
    if (k % 2 == 0) c = -c;
    return {c, static_cast<long>(2 * k2), 1};
}

/// L(t, chi_D) for t >= 1 with chi_D(-1) = (-1)^t, from the functional equation:
/// (-1)^{1+floor(t/2)} 2^{t-1} B_{t,chi} pi^t sqrt|D| / (t! |D|^t).
inline SymbolicReal l_closed(unsigned t, const Integer& D) {
    if (t == 0) throw PreconditionError("l_closed needs t >= 1");
    if (D == 1) return zeta_closed(t);
    const int parity = kronecker(D, Integer(-1));
    if (parity != (t % 2 ? -1 : 1))
        throw PreconditionError("character of discriminant " + D.get_str() + " has the wrong parity for L(" +
                                std::to_string(t) + ")");
    const Integer f = abs(D);
    Rational c = Rational(ipow(Integer(2), t - 1)) * generalized_bernoulli(t, D) /
                 Rational(factorial(t) * ipow(f, t));
    if ((1 + t / 2) % 2) c = -c;
    return SymbolicReal(c) * SymbolicReal(Rational(1), static_cast<long>(2 * t), f);
}

/// prod_{k=1}^{rho} pi^{-k/2} Gamma(k/2).
inline SymbolicReal gamma_factor(unsigned rho) {
    if (rho < 1) throw PreconditionError("gamma_factor needs rho >= 1");
    Rational c = 1;
    long h = 0;
    for (unsigned k = 1; k <= rho; ++k) {
        h -= k;
        if (k % 2 == 0) {
            c *= Rational(factorial(k / 2 - 1));
        } else {
            // Gamma(j + 1/2) = (2j)! / (4^j j!) sqrt(pi)
            const unsigned j = (k - 1) / 2;
            c *= make_rational(factorial(2 * j), ipow(Integer(4), j) * factorial(j));
            h += 1;
        }
    }
    c.canonicalize();
    return {c, h, 1};
}

/// gamma_m = prod_{k=1}^{m} pi^{k/2} Gamma(k/2)^{-1}; gamma_0 = 1.
inline SymbolicReal gamma_m(unsigned m) { return m == 0 ? SymbolicReal(1) : gamma_factor(m).inverse(); }

}  // namespace hmvol
