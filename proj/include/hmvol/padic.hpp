#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmvol/error.hpp"
#include "hmvol/factor.hpp"
#include "hmvol/integer.hpp"
#include "hmvol/lattice.hpp"

namespace hmvol {

/// 2-adic classification of one unimodular constituent N_j = N_j^even + N_j^odd.
struct TwoAdicData {
    int even_rank = 0;
    std::vector<int> odd_units;  // diagonal units of N_j^odd, residues mod 8
    bool is_even = true;
};

/// One p^j-modular constituent L_j = N_j(p^j).
///
/// `unimodular_gram` is the Gram of N_j, exact modulo p^(K - level) where K
/// is the working precision of the decomposition. For p odd it is diagonal.
/// For p = 2 it is block diagonal with even 2x2 blocks first, followed by the
/// odd diagonal units.
struct JordanBlock {
    int level = 0;
    int rank = 0;
    IntMatrix unimodular_gram;
    int chi = 0;
    std::optional<TwoAdicData> two_adic;
};

struct JordanDecomposition {
    Integer prime;
    std::vector<JordanBlock> blocks;  // sorted by level, no empty blocks
    int precision = 0;
    bool normalized = false;

    int rank() const {
        int r = 0;
        for (const auto& b : blocks) r += b.rank;
        return r;
    }
    int det_valuation() const {
        int v = 0;
        for (const auto& b : blocks) v += b.level * b.rank;
        return v;
    }
    const JordanBlock* at_level(int j) const {
        for (const auto& b : blocks)
            if (b.level == j) return &b;
        return nullptr;
    }
};

namespace detail {

// A rank one or rank two piece split off during elimination; the Gram is
// already divided by p^level.
struct JordanPiece {
    int level = 0;
    IntMatrix gram;
};

struct PrecisionExhausted {};

inline int legendre(const Integer& a, const Integer& p) {
    return mpz_legendre(mod(a, p).get_mpz_t(), p.get_mpz_t());
}

// Elimination modulo p^K. Throws PrecisionExhausted when every remaining
// entry vanishes modulo p^K.
inline std::vector<JordanPiece> split_pieces(const IntMatrix& gram, const Integer& p, int precision) {
    const std::size_t n = gram.size();
    const Integer modulus = ipow(p, static_cast<unsigned long>(precision));
    IntMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = mod(gram(i, j), modulus);

    auto val = [&](const Integer& x) { return x == 0 ? precision : valuation(x, p); };

    std::vector<bool> active(n, true);
    std::vector<JordanPiece> pieces;
    const bool two = (p == 2);
    for (std::size_t remaining = n; remaining > 0;) {
        int best = precision;
        std::size_t bi = n, bj = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i; j < n; ++j) {
                if (!active[j]) continue;
                const int v = val(a(i, j));
                // Prefer diagonal pivots at equal valuation.
                if (v < best || (v == best && i == j && bi != bj)) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best >= precision) throw PrecisionExhausted{};
        const Integer pv = ipow(p, static_cast<unsigned long>(best));
        const Integer low = ipow(p, static_cast<unsigned long>(precision - best));

        if (bi != bj && !two) {
            // Surface a diagonal pivot: row_i += row_j, col_i += col_j.
            for (std::size_t k = 0; k < n; ++k) a(bi, k) = mod(a(bi, k) + a(bj, k), modulus);
            for (std::size_t k = 0; k < n; ++k) a(k, bi) = mod(a(k, bi) + a(k, bj), modulus);
            bj = bi;
        }

        if (bi == bj) {
            const std::size_t i = bi;
            const Integer unit = mod(a(i, i) / pv, low);
            const Integer inv = inverse_mod(unit, low);
            std::vector<Integer> c(n);
            for (std::size_t k = 0; k < n; ++k)
                if (active[k] && k != i) c[k] = a(k, i) / pv;
            for (std::size_t k = 0; k < n; ++k) {
                if (!active[k] || k == i) continue;
                for (std::size_t l = 0; l < n; ++l) {
                    if (!active[l] || l == i) continue;
                    a(k, l) = mod(a(k, l) - c[k] * c[l] * inv * pv, modulus);
                }
            }
            pieces.push_back({best, IntMatrix{{unit}}});
            active[i] = false;
            remaining -= 1;
        } else {
            const std::size_t i = bi, j = bj;
            const Integer e = mod(a(i, i) / pv, low), f = mod(a(i, j) / pv, low), g = mod(a(j, j) / pv, low);
            const Integer det_inv = inverse_mod(mod(e * g - f * f, low), low);
            // Inverse of [[e,f],[f,g]] modulo p^(K - v).
            const Integer ie = mod(g * det_inv, low), ifv = mod(-f * det_inv, low), ig = mod(e * det_inv, low);
            std::vector<Integer> ci(n), cj(n);
            for (std::size_t k = 0; k < n; ++k)
                if (active[k] && k != i && k != j) {
                    ci[k] = a(k, i) / pv;
                    cj[k] = a(k, j) / pv;
                }
            for (std::size_t k = 0; k < n; ++k) {
                if (!active[k] || k == i || k == j) continue;
                for (std::size_t l = 0; l < n; ++l) {
                    if (!active[l] || l == i || l == j) continue;
                    const Integer q = ci[k] * (ie * ci[l] + ifv * cj[l]) + cj[k] * (ifv * ci[l] + ig * cj[l]);
                    a(k, l) = mod(a(k, l) - q * pv, modulus);
                }
            }
            pieces.push_back({best, IntMatrix{{e, f}, {f, g}}});
            active[i] = active[j] = false;
            remaining -= 2;
        }
    }
    return pieces;
}

inline Integer det_mod(const IntMatrix& g, const Integer& m) { return mod(bareiss_det(g), m); }

inline int chi_odd(const IntMatrix& unimodular, const Integer& p) {
    const std::size_t n = unimodular.size();
    if (n % 2) return 0;
    Integer d = bareiss_det(unimodular);
    if ((n / 2) % 2) d = -d;
    return legendre(d, p);
}

// chi of an even unimodular Z_2-lattice from its determinant class mod 8.
inline int chi_even_two_adic(const IntMatrix& even_part) {
    const std::size_t n = even_part.size();
    if (n == 0) return 1;
    Integer d = det_mod(even_part, 8);
    const Integer expected = ((n / 2) % 2) ? 7 : 1;
    return d == expected ? 1 : -1;
}

}  // namespace detail

/// Raw Jordan splitting of L over Z_p. For p odd the result is final; for
/// p = 2 the blocks hold the elimination pieces (odd rank one units and
/// even rank two blocks) and still need two_adic_normalize().
inline JordanDecomposition jordan_split(const Lattice& lattice, const Integer& p) {
    if (!is_prime(p)) throw PreconditionError(p.get_str() + " is not prime");
    int precision = valuation(lattice.det(), p) + 3;
    std::vector<detail::JordanPiece> pieces;
    for (;;) {
        try {
            pieces = detail::split_pieces(lattice.gram(), p, precision);
            break;
        } catch (const detail::PrecisionExhausted&) {
            if (precision > 4096) throw InternalError("p-adic precision exhausted");
            precision *= 2;
        }
    }

    std::map<int, std::vector<detail::JordanPiece>> by_level;
    for (auto& piece : pieces) by_level[piece.level].push_back(std::move(piece));

    JordanDecomposition out;
    out.prime = p;
    out.precision = precision;
    out.normalized = (p != 2);
    for (auto& [level, list] : by_level) {
        // Even rank two pieces first, then rank one pieces.
        std::stable_sort(list.begin(), list.end(),
                         [](const auto& x, const auto& y) { return x.gram.size() > y.gram.size(); });
        JordanBlock block;
        block.level = level;
        IntMatrix g(0);
        for (const auto& piece : list) g = block_sum(g, piece.gram);
        block.rank = static_cast<int>(g.size());
        block.unimodular_gram = std::move(g);
        if (p == 2) {
            TwoAdicData data;
            for (const auto& piece : list) {
                if (piece.gram.size() == 2)
                    data.even_rank += 2;
                else
                    data.odd_units.push_back(static_cast<int>(mod(piece.gram(0, 0), 8).get_si()));
            }
            data.is_even = data.odd_units.empty();
            block.two_adic = data;
        } else {
            block.chi = detail::chi_odd(block.unimodular_gram, p);
        }
        out.blocks.push_back(std::move(block));
    }
    if (out.det_valuation() != valuation(lattice.det(), p) || out.rank() != static_cast<int>(lattice.rank()))
        throw InternalError("Jordan splitting violates rank or valuation conservation");
    return out;
}

/// chi of a constituent: for p odd from the Legendre symbol of
/// (-1)^(n/2) det N_j (0 for odd rank); for p = 2 the chi of the even part
/// N_j^even read from its determinant class mod 8 (+1 for an empty even part).
inline int block_chi(const JordanBlock& block, const Integer& p) {
    if (p != 2) return detail::chi_odd(block.unimodular_gram, p);
    const int even_rank = block.two_adic ? block.two_adic->even_rank : 0;
    IntMatrix even(static_cast<std::size_t>(even_rank));
    for (int i = 0; i < even_rank; ++i)
        for (int j = 0; j < even_rank; ++j) even(i, j) = block.unimodular_gram(i, j);
    return detail::chi_even_two_adic(even);
}

/// Compresses every 2-adic odd part to rank <= 2. Three odd units e1, e2, e3
/// span the even binary lattice on (x1 + x2, x2 + x3), Gram
/// [[e1+e2, e2], [e2, e2+e3]], whose orthogonal complement is <e1 e2 e3 / D>
/// with D = e1 e2 + e1 e3 + e2 e3.
inline JordanDecomposition two_adic_normalize(JordanDecomposition decomp) {
    if (decomp.prime != 2) throw PreconditionError("two_adic_normalize needs p = 2");
    for (auto& block : decomp.blocks) {
        const std::size_t n = block.unimodular_gram.size();
        const Integer modulus = ipow(Integer(2), static_cast<unsigned long>(decomp.precision - block.level));
        std::vector<IntMatrix> evens;
        std::vector<Integer> units;
        for (std::size_t i = 0; i < n;) {
            if (i + 1 < n && block.unimodular_gram(i, i + 1) != 0) {
                evens.push_back(IntMatrix{{block.unimodular_gram(i, i), block.unimodular_gram(i, i + 1)},
                                          {block.unimodular_gram(i + 1, i), block.unimodular_gram(i + 1, i + 1)}});
                i += 2;
            } else {
                units.push_back(block.unimodular_gram(i, i));
                i += 1;
            }
        }
        while (units.size() >= 3) {
            const Integer e3 = units.back();
            units.pop_back();
            const Integer e2 = units.back();
            units.pop_back();
            const Integer e1 = units.back();
            units.pop_back();
            const Integer d = mod(e1 * e2 + e1 * e3 + e2 * e3, modulus);
            evens.push_back(IntMatrix{{mod(e1 + e2, modulus), e2}, {e2, mod(e2 + e3, modulus)}});
            units.push_back(mod(e1 * e2 * e3 * inverse_mod(d, modulus), modulus));
        }
        IntMatrix g(0);
        for (const auto& e : evens) g = block_sum(g, e);
        for (const auto& u : units) g = block_sum(g, IntMatrix{{u}});
        if (static_cast<int>(g.size()) != block.rank) throw InternalError("2-adic normalization changed the rank");
        block.unimodular_gram = std::move(g);

        TwoAdicData data;
        data.even_rank = static_cast<int>(2 * evens.size());
        for (const auto& u : units) data.odd_units.push_back(static_cast<int>(mod(u, 8).get_si()));
        data.is_even = units.empty();
        block.two_adic = data;
        block.chi = block_chi(block, 2);
    }
    decomp.normalized = true;
    return decomp;
}

/// Jordan decomposition of L over Z_p, 2-adically normalized when p = 2.
inline JordanDecomposition jordan_decompose(const Lattice& lattice, const Integer& p) {
    JordanDecomposition d = jordan_split(lattice, p);
    return p == 2 ? two_adic_normalize(std::move(d)) : d;
}

}  // namespace hmvol
