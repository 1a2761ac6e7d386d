#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hmvol/error.hpp"
#include "hmvol/integer.hpp"
#include "hmvol/matrix.hpp"

namespace hmvol {

using IntMatrix = SquareMatrix<Integer>;
using RatMatrix = SquareMatrix<Rational>;

struct Signature {
    int positive = 0;
    int negative = 0;

    int rank() const noexcept { return positive + negative; }
    bool is_indefinite() const noexcept { return positive > 0 && negative > 0; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

inline constexpr std::size_t kMaxRank = 64;

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer bareiss_det(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Sylvester counts of a nonsingular symmetric rational matrix, computed by
/// symmetric Gaussian reduction. A zero diagonal pivot is repaired by adding
/// a coupled row/column, which makes the diagonal entry 2*a_ij (+ a_jj).
inline Signature sylvester_signature(const IntMatrix& gram) {
    const std::size_t n = gram.size();
    RatMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = gram(i, j);

    Signature sig;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pivot = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && a(i, i) != 0) {
                pivot = i;
                break;
            }
        if (pivot == n) {
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && a(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) throw PreconditionError("singular Gram matrix");
            for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
            for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
            pivot = pi;
        }
        const Rational d = a(pivot, pivot);
        (sgn(d) > 0 ? sig.positive : sig.negative) += 1;
        done[pivot] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a(i, pivot) == 0) continue;
            const Rational f = a(i, pivot) / d;
            for (std::size_t j = 0; j < n; ++j)
                if (!done[j]) a(i, j) -= f * a(pivot, j);
        }
        for (std::size_t j = 0; j < n; ++j)
            if (!done[j]) a(pivot, j) = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i]) a(i, pivot) = 0;
    }
    return sig;
}

/// A nondegenerate integral lattice given by its Gram matrix. Rank,
/// determinant and signature are computed once at construction; instances
/// are immutable afterwards.
///
/// `has_hyperbolic_summand` records constructor provenance: it is true when
/// a copy of the hyperbolic plane was placed as an orthogonal summand
/// (U or U(-1)), which is what the one-class and index arguments need.
class Lattice {
public:
    static Lattice from_gram(IntMatrix gram, bool hyperbolic_summand = false) {
        validate(gram);
        Lattice l;
        l.gram_ = std::move(gram);
        l.det_ = bareiss_det(l.gram_);
        if (l.det_ == 0) throw PreconditionError("singular Gram matrix (determinant 0)");
        l.sig_ = sylvester_signature(l.gram_);
        l.hyperbolic_ = hyperbolic_summand;
        const int expected_sign = (l.sig_.negative % 2) ? -1 : 1;
        if (sgn(l.det_) != expected_sign)
            throw InternalError("determinant sign disagrees with signature");
        return l;
    }

    std::size_t rank() const noexcept { return gram_.size(); }
    const IntMatrix& gram() const noexcept { return gram_; }
    const Integer& entry(std::size_t i, std::size_t j) const { return gram_(i, j); }
    const Integer& det() const noexcept { return det_; }
    Signature signature() const noexcept { return sig_; }
    bool has_hyperbolic_summand() const noexcept { return hyperbolic_; }

    bool is_even() const {
        for (std::size_t i = 0; i < rank(); ++i)
            if (mpz_odd_p(gram_(i, i).get_mpz_t())) return false;
        return true;
    }

    friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

private:
    Lattice() = default;

    static void validate(const IntMatrix& gram) {
        if (gram.size() == 0) throw PreconditionError("empty Gram matrix");
        if (gram.size() > kMaxRank)
            throw PreconditionError("rank " + std::to_string(gram.size()) + " exceeds the cap of " +
                                    std::to_string(kMaxRank));
        if (!gram.is_symmetric()) throw PreconditionError("Gram matrix is not symmetric");
        static const Integer bound = ipow(Integer(2), 63);
        for (std::size_t i = 0; i < gram.size(); ++i)
            for (std::size_t j = 0; j < gram.size(); ++j)
                if (abs(gram(i, j)) >= bound)
                    throw PreconditionError("Gram entry " + gram(i, j).get_str() + " exceeds 2^63 in absolute value");
    }

    IntMatrix gram_;
    Integer det_;
    Signature sig_;
    bool hyperbolic_ = false;
};

/// Gram scaled by c (the lattice L(c)).
inline Lattice rescale(const Lattice& l, const Integer& c) {
    if (c == 0) throw PreconditionError("scale factor must be nonzero");
    IntMatrix g = l.gram();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) g(i, j) *= c;
    // U(-1) is isometric to U, any other rescaling destroys the unimodular summand.
    return Lattice::from_gram(std::move(g), l.has_hyperbolic_summand() && abs(c) == 1);
}

inline Lattice direct_sum(const Lattice& a, const Lattice& b) {
    return Lattice::from_gram(block_sum(a.gram(), b.gram()),
                              a.has_hyperbolic_summand() || b.has_hyperbolic_summand());
}

/// m-fold orthogonal sum of l with itself (m >= 1).
inline Lattice repeat(const Lattice& l, int m) {
    if (m < 1) throw PreconditionError("multiplier must be positive, got " + std::to_string(m));
    Lattice out = l;
    for (int i = 1; i < m; ++i) out = direct_sum(out, l);
    return out;
}

inline Lattice hyperbolic_plane(const Integer& scale = 1) {
    if (scale == 0) throw PreconditionError("scale factor must be nonzero");
    return Lattice::from_gram(IntMatrix{{0, scale}, {scale, 0}}, abs(scale) == 1);
}

/// Cartan matrix of the E8 root system (Bourbaki labelling) scaled by `scale`.
/// E8(-1) is the negative definite form.
inline Lattice e8(const Integer& scale = 1) {
    if (scale == 0) throw PreconditionError("scale factor must be nonzero");
    IntMatrix g(8);
    for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
    const std::pair<int, int> edges[] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
    for (auto [i, j] : edges) g(i, j) = g(j, i) = -1;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) g(i, j) *= scale;
    return Lattice::from_gram(std::move(g));
}

/// The rank one lattice <k>.
inline Lattice rank_one(const Integer& k) {
    if (k == 0) throw PreconditionError("rank one lattice <0> is degenerate");
    return Lattice::from_gram(IntMatrix{{k}});
}

inline Lattice from_rows(const std::vector<std::vector<Integer>>& rows) {
    IntMatrix g(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw PreconditionError("Gram literal is not square: row " + std::to_string(i) + " has " +
                                    std::to_string(rows[i].size()) + " entries, expected " +
                                    std::to_string(rows.size()));
        for (std::size_t j = 0; j < rows.size(); ++j) g(i, j) = rows[i][j];
    }
    return Lattice::from_gram(std::move(g));
}

enum class LatticeKind { U, E8, Rank1, Gram };

/// Tagged constructor. `parameter` is the k of RANK1(k); `rows` the literal of GRAM.
inline Lattice construct(LatticeKind kind, const Integer& scale, const Integer& parameter = 1,
                         const std::vector<std::vector<Integer>>& rows = {}) {
    if (scale == 0) throw PreconditionError("scale factor must be nonzero");
    switch (kind) {
        case LatticeKind::U: return hyperbolic_plane(scale);
        case LatticeKind::E8: return e8(scale);
        case LatticeKind::Rank1: return rank_one(parameter * scale);
        case LatticeKind::Gram: return rescale(from_rows(rows), scale);
    }
    throw InternalError("unknown lattice kind");
}

/// The families used throughout the examples: II_{2,8m+2}, T_{2,8m+2},
/// L_{2d}^{(m)}, K_{2d}^{(m)} and N_{2d}^{(m)}.
namespace families {

inline Lattice with_e8(Lattice base, int m) {
    if (m < 0) throw PreconditionError("m must be nonnegative");
    return m == 0 ? base : direct_sum(base, repeat(e8(-1), m));
}

inline Lattice even_unimodular(int m) { return with_e8(repeat(hyperbolic_plane(), 2), m); }

inline Lattice t_lattice(int m) {
    return with_e8(direct_sum(hyperbolic_plane(), hyperbolic_plane(2)), m);
}

inline Lattice l_lattice(int m, const Integer& d) {
    if (d < 1) throw PreconditionError("d must be positive");
    return direct_sum(with_e8(repeat(hyperbolic_plane(), 2), m), rank_one(-2 * d));
}

inline Lattice k_lattice(int m, const Integer& d) {
    if (d < 1) throw PreconditionError("d must be positive");
    return direct_sum(direct_sum(with_e8(hyperbolic_plane(), m), rank_one(2)), rank_one(-2 * d));
}

inline Lattice n_lattice(int m, const Integer& d) {
    if (d < 1 || mod(d, 4) != 1) throw PreconditionError("N_{2d} needs d = 1 mod 4");
    const Integer c = (1 - d) / 2;
    return direct_sum(with_e8(hyperbolic_plane(), m), Lattice::from_gram(IntMatrix{{2, 1}, {1, c}}));
}

}  // namespace families

}  // namespace hmvol
