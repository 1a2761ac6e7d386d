#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include "hmvol/error.hpp"
#include "hmvol/factor.hpp"
#include "hmvol/integer.hpp"

namespace hmvol {

/// coefficient * pi^(pi_half_exponent/2) * sqrt(radicand), radicand squarefree and positive.
class SymbolicReal {
public:
    SymbolicReal() = default;
    SymbolicReal(const Rational& c) : coeff_(c) { coeff_.canonicalize(); }  // NOLINT(implicit)
    SymbolicReal(long c) : coeff_(c) {}                                       // NOLINT(implicit)

    SymbolicReal(const Rational& c, long pi_half_exponent, const Integer& radicand)
        : coeff_(c), pi_half_(pi_half_exponent), radicand_(1) {
        if (radicand < 1) throw PreconditionError("radicand must be positive, got " + radicand.get_str());
        auto [core, square] = squarefree_decomposition(radicand);
        coeff_ *= square;
        radicand_ = core;
        coeff_.canonicalize();
        if (coeff_ == 0) clear_zero();
    }

    static SymbolicReal pi_power(long half_exponent) { return {Rational(1), half_exponent, 1}; }

    /// sqrt(n) for n >= 1, square part pulled into the coefficient.
    static SymbolicReal sqrt(const Integer& n) { return {Rational(1), 0, n}; }

    /// |x|^(k/2) for a nonzero rational x.
    static SymbolicReal half_power(const Rational& x, long k) {
        if (x == 0) throw PreconditionError("half_power of zero");
        const Rational a = abs(x);
        SymbolicReal r(rpow(a, k / 2 - (k < 0 && k % 2 ? 1 : 0)));
        if (k % 2) {
            // a = num/den, sqrt(a) = sqrt(num*den)/den
            r *= SymbolicReal(Rational(1, 1) / Rational(a.get_den()), 0, a.get_num() * a.get_den());
        }
        return r;
    }

    const Rational& coefficient() const noexcept { return coeff_; }
    long pi_half_exponent() const noexcept { return pi_half_; }
    const Integer& radicand() const noexcept { return radicand_; }

    bool is_zero() const { return coeff_ == 0; }
    bool is_rational() const { return is_zero() || (pi_half_ == 0 && radicand_ == 1); }

    Rational to_rational() const {
        if (!is_rational()) throw InternalError("value " + str() + " is not rational");
        return coeff_;
    }

    SymbolicReal& operator*=(const SymbolicReal& o) {
        coeff_ *= o.coeff_;
        if (coeff_ == 0) {
            clear_zero();
            return *this;
        }
        pi_half_ += o.pi_half_;
        const Integer g = gcd(radicand_, o.radicand_);
        coeff_ *= g;
        radicand_ = (radicand_ / g) * (o.radicand_ / g);
        coeff_.canonicalize();
        return *this;
    }

    SymbolicReal inverse() const {
        if (is_zero()) throw InternalError("division by symbolic zero");
        // 1/(c sqrt(s)) = sqrt(s) / (c s)
        SymbolicReal r;
        r.coeff_ = 1 / (coeff_ * radicand_);
        r.coeff_.canonicalize();
        r.pi_half_ = -pi_half_;
        r.radicand_ = radicand_;
        return r;
    }

    SymbolicReal& operator/=(const SymbolicReal& o) { return *this *= o.inverse(); }

    friend SymbolicReal operator*(SymbolicReal a, const SymbolicReal& b) { return a *= b; }
    friend SymbolicReal operator/(SymbolicReal a, const SymbolicReal& b) { return a /= b; }
    friend SymbolicReal operator-(SymbolicReal a) {
        a.coeff_ = -a.coeff_;
        return a;
    }

    friend bool operator==(const SymbolicReal& a, const SymbolicReal& b) {
        return a.coeff_ == b.coeff_ && a.pi_half_ == b.pi_half_ && a.radicand_ == b.radicand_;
    }

    std::string str() const {
        std::ostringstream os;
        os << coeff_.get_str();
        if (pi_half_ != 0) {
            os << " * pi^";
            if (pi_half_ % 2 == 0) os << (pi_half_ / 2 < 0 ? "(" : "") << pi_half_ / 2 << (pi_half_ / 2 < 0 ? ")" : "");
            else os << "(" << pi_half_ << "/2)";
        }
        if (radicand_ != 1) os << " * sqrt(" << radicand_.get_str() << ")";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const SymbolicReal& x) { return os << x.str(); }

private:
    void clear_zero() {
        coeff_ = 0;
        pi_half_ = 0;
        radicand_ = 1;
    }

    Rational coeff_ = 0;
    long pi_half_ = 0;
    Integer radicand_ = 1;
};

}  // namespace hmvol
