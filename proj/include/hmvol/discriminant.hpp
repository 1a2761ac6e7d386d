#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hmvol/error.hpp"
#include "hmvol/factor.hpp"
#include "hmvol/integer.hpp"
#include "hmvol/lattice.hpp"

namespace hmvol {

/// Smith normal form U A V = diag(d_1, ..., d_n) with d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
    std::vector<Integer> diagonal;
    IntMatrix column_transform;  // V, unimodular
};

inline SmithForm smith_normal_form(IntMatrix a) {
    const std::size_t n = a.size();
    IntMatrix v(n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1;

    auto swap_cols = [&](std::size_t x, std::size_t y) {
        for (std::size_t r = 0; r < n; ++r) {
            std::swap(a(r, x), a(r, y));
            std::swap(v(r, x), v(r, y));
        }
    };
    auto swap_rows = [&](std::size_t x, std::size_t y) {
        for (std::size_t c = 0; c < n; ++c) std::swap(a(x, c), a(y, c));
    };
    // col y -= q col x
    auto col_sub = [&](std::size_t y, std::size_t x, const Integer& q) {
        for (std::size_t r = 0; r < n; ++r) {
            a(r, y) -= q * a(r, x);
            v(r, y) -= q * v(r, x);
        }
    };
    auto row_sub = [&](std::size_t y, std::size_t x, const Integer& q) {
        for (std::size_t c = 0; c < n; ++c) a(y, c) -= q * a(x, c);
    };

    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pr = n, pc = n;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (a(i, j) != 0 && (pr == n || abs(a(i, j)) < abs(a(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == n) break;
            swap_rows(k, pr);
            swap_cols(k, pc);
            bool clean = true;
            for (std::size_t i = k + 1; i < n; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, k).get_mpz_t(), a(k, k).get_mpz_t());
                row_sub(i, k, q);
                if (a(i, k) != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(k, j).get_mpz_t(), a(k, k).get_mpz_t());
                col_sub(j, k, q);
                if (a(k, j) != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility: fold any row whose entry is not a multiple of the pivot
            bool divides = true;
            for (std::size_t i = k + 1; i < n && divides; ++i)
                for (std::size_t j = k + 1; j < n; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(k, k).get_mpz_t())) {
                        for (std::size_t c = 0; c < n; ++c) a(k, c) += a(i, c);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a(k, k) < 0) {
            for (std::size_t c = 0; c < n; ++c) a(k, c) = -a(k, c);
        }
    }
    SmithForm out;
    for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(a(i, i));
    out.column_transform = std::move(v);
    return out;
}

/// The discriminant form (A_L, q_L) on Smith generators g_i of order d_i.
/// With M the exponent of A_L, q(g_i) is stored as the integer M q(g_i) mod 2M
/// and b(g_i, g_j) as M b(g_i, g_j) mod M.
struct FiniteQuadraticForm {
    std::vector<Integer> orders;
    Integer exponent = 1;
    std::vector<Integer> q_scaled;
    std::vector<std::vector<Integer>> b_scaled;

    Integer size() const {
        Integer s = 1;
        for (const auto& d : orders) s *= d;
        return s;
    }
    Rational q(std::size_t i) const { return make_rational(q_scaled[i], exponent); }
    Rational b(std::size_t i, std::size_t j) const { return make_rational(b_scaled[i][j], exponent); }

    bool is_two_elementary() const {
        return std::all_of(orders.begin(), orders.end(), [](const Integer& d) { return d == 2; });
    }
};

inline FiniteQuadraticForm discriminant_form(const Lattice& lattice) {
    if (!lattice.is_even()) throw PreconditionError("discriminant form needs an even lattice");
    const std::size_t n = lattice.rank();
    const SmithForm snf = smith_normal_form(lattice.gram());
    FiniteQuadraticForm f;
    // dual generators x_i = V e_i / d_i for d_i > 1
    std::vector<std::vector<Rational>> gens;
    for (std::size_t i = 0; i < n; ++i) {
        const Integer& d = snf.diagonal[i];
        if (d == 1) continue;
        std::vector<Rational> x(n);
        for (std::size_t r = 0; r < n; ++r) x[r] = make_rational(snf.column_transform(r, i), d);
        gens.push_back(std::move(x));
        f.orders.push_back(d);
    }
    for (const auto& d : f.orders) f.exponent = lcm(f.exponent, d);
    auto pair = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s += x[i] * Rational(lattice.entry(i, j)) * y[j];
        s.canonicalize();
        return s;
    };
    const std::size_t k = gens.size();
    f.q_scaled.resize(k);
    f.b_scaled.assign(k, std::vector<Integer>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const Rational s = pair(gens[i], gens[j]) * Rational(f.exponent);
            if (s.get_den() != 1) throw InternalError("discriminant pairing not in (1/M)Z");
            f.b_scaled[i][j] = mod(s.get_num(), f.exponent);
            if (i == j) f.q_scaled[i] = mod(s.get_num(), Integer(2 * f.exponent));
        }
    }
    if (f.size() != abs(lattice.det())) throw InternalError("|A_L| differs from |det L|");
    return f;
}

inline constexpr long kIsometryGuard = 100000;

/// |O(q)| by assigning generator images one at a time. An image of g_i must
/// be killed by d_i, carry the value q(g_i) and pair correctly with the
/// images already chosen. Nondegeneracy of b makes every such map injective.
inline Integer finite_isometry_order(const FiniteQuadraticForm& q) {
    const Integer size = q.size();
    if (size > kIsometryGuard)
        throw GuardError("discriminant group of order " + size.get_str() + " exceeds the enumeration guard " +
                         std::to_string(kIsometryGuard));
    const std::size_t k = q.orders.size();
    if (k == 0) return 1;
    std::vector<long> ord;
    for (const auto& d : q.orders) ord.push_back(d.get_si());
    const long M = q.exponent.get_si();
    std::vector<long> Q, B(k * k);
    for (std::size_t i = 0; i < k; ++i) Q.push_back(q.q_scaled[i].get_si());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) B[i * k + j] = q.b_scaled[i][j].get_si();

    // all elements as coordinate vectors
    const long total = size.get_si();
    std::vector<std::vector<long>> elems(total, std::vector<long>(k));
    for (long e = 0; e < total; ++e) {
        long t = e;
        for (std::size_t i = 0; i < k; ++i) {
            elems[e][i] = t % ord[i];
            t /= ord[i];
        }
    }
    auto md = [](long x, long m) { return ((x % m) + m) % m; };
    auto qval = [&](const std::vector<long>& c) {
        long s = 0;
        for (std::size_t i = 0; i < k; ++i) {
            s = md(s + c[i] * c[i] % (2 * M) * Q[i], 2 * M);
            for (std::size_t j = i + 1; j < k; ++j) s = md(s + 2 * (c[i] * c[j] % M) * B[i * k + j], 2 * M);
        }
        return s;
    };
    auto bval = [&](const std::vector<long>& x, const std::vector<long>& y) {
        long s = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) s = md(s + (x[i] * y[j] % M) * B[i * k + j], M);
        return s;
    };
    auto killed_by = [&](const std::vector<long>& c, long d) {
        for (std::size_t i = 0; i < k; ++i)
            if ((c[i] * d) % ord[i] != 0) return false;
        return true;
    };

    std::vector<long> qv(total);
    for (long e = 0; e < total; ++e) qv[e] = qval(elems[e]);
    std::vector<std::vector<long>> cand(k);
    for (std::size_t i = 0; i < k; ++i)
        for (long e = 0; e < total; ++e)
            if (qv[e] == Q[i] && killed_by(elems[e], ord[i])) cand[i].push_back(e);

    std::vector<long> chosen(k);
    Integer count = 0;
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
        if (i == k) {
            ++count;
            return;
        }
        for (long e : cand[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) ok = bval(elems[chosen[j]], elems[e]) == B[j * k + i];
            if (!ok) continue;
            chosen[i] = e;
            assign(i + 1);
        }
    };
    assign(0);
    return count;
}

/// -id lies in the stable group exactly when it acts trivially on A_L,
/// i.e. when every element of A_L has order dividing 2.
inline bool minus_id_in_tilde(const Lattice& lattice) { return discriminant_form(lattice).is_two_elementary(); }

enum class GroupTag { O, OPlus, SOPlus, OTildePlus, SOTildePlus };

inline const std::vector<GroupTag>& all_group_tags() {
    static const std::vector<GroupTag> tags = {GroupTag::O, GroupTag::OPlus, GroupTag::SOPlus,
                                               GroupTag::OTildePlus, GroupTag::SOTildePlus};
    return tags;
}

inline std::string tag_name(GroupTag t) {
    switch (t) {
        case GroupTag::O: return "O";
        case GroupTag::OPlus: return "O+";
        case GroupTag::SOPlus: return "SO+";
        case GroupTag::OTildePlus: return "O~+";
        case GroupTag::SOTildePlus: return "SO~+";
    }
    throw InternalError("unknown group tag");
}

inline GroupTag parse_tag(const std::string& s) {
    for (GroupTag t : all_group_tags())
        if (tag_name(t) == s) return t;
    throw PreconditionError("unknown group '" + s + "' (expected O, O+, SO+, O~+ or SO~+)");
}

inline bool needs_discriminant(GroupTag t) { return t == GroupTag::OTildePlus || t == GroupTag::SOTildePlus; }

/// Index data of one group of the diagram for a lattice of signature (2,n).
struct GroupIndex {
    GroupTag tag;
    Integer group_index;       // [O(L) : Gamma]
    bool contains_minus_id;    // -id in Gamma
    Integer projective_index;  // [PO(L) : P Gamma]
};

/// Checks the hypotheses of the group diagram and returns N = |O(q_L)| when needed.
inline GroupIndex group_index(const Lattice& lattice, GroupTag tag) {
    const Signature sig = lattice.signature();
    if (sig.positive != 2 || sig.negative < 1)
        throw PreconditionError("group indices need signature (2,n) with n >= 1");
    if (tag != GroupTag::O && !lattice.has_hyperbolic_summand())
        throw PreconditionError("group " + tag_name(tag) + " needs a hyperbolic plane summand");
    const int n = sig.negative;
    GroupIndex gi{tag, 1, true, 1};
    // -id has (-1)-spinor norm +1 in signature (2,n) and determinant (-1)^{n+2}
    switch (tag) {
        case GroupTag::O: break;
        case GroupTag::OPlus: gi.group_index = 2; break;
        case GroupTag::SOPlus:
            gi.group_index = 4;
            gi.contains_minus_id = n % 2 == 0;
            break;
        case GroupTag::OTildePlus:
        case GroupTag::SOTildePlus: {
            if (!lattice.is_even()) throw PreconditionError("group " + tag_name(tag) + " needs an even lattice");
            const FiniteQuadraticForm q = discriminant_form(lattice);
            const Integer N = finite_isometry_order(q);
            const bool e = q.is_two_elementary();
            gi.group_index = (tag == GroupTag::OTildePlus ? 2 : 4) * N;
            gi.contains_minus_id = tag == GroupTag::OTildePlus ? e : (e && n % 2 == 0);
            break;
        }
    }
    gi.projective_index = gi.contains_minus_id ? gi.group_index : Integer(gi.group_index / 2);
    return gi;
}

inline Integer projective_index(const Lattice& lattice, GroupTag tag) {
    return group_index(lattice, tag).projective_index;
}

}  // namespace hmvol
