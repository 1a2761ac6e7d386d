#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmvol/error.hpp"
#include "hmvol/factor.hpp"
#include "hmvol/integer.hpp"
#include "hmvol/lattice.hpp"
#include "hmvol/padic.hpp"

namespace hmvol {

/// P_p(n) = prod_{i=1}^{n} (1 - p^{-2i}); P_p(0) = 1.
inline Rational p_series(const Integer& p, int n) {
    if (n < 0) throw PreconditionError("p_series needs n >= 0");
    Rational r = 1;
    Integer pp = p * p, pw = 1;
    for (int i = 1; i <= n; ++i) {
        pw *= pp;
        r *= Rational(pw - 1, pw);
    }
    r.canonicalize();
    return r;
}

/// w = sum_j j n_j ((n_j + 1)/2 + sum_{k>j} n_k). The term j n_j (n_j+1)/2
/// is integral because n_j (n_j+1)/2 is.
inline long cross_rank_weight(const JordanDecomposition& decomp) {
    long w = 0;
    for (std::size_t a = 0; a < decomp.blocks.size(); ++a) {
        const long j = decomp.blocks[a].level;
        const long nj = decomp.blocks[a].rank;
        long above = 0;
        for (std::size_t b = a + 1; b < decomp.blocks.size(); ++b) above += decomp.blocks[b].rank;
        w += j * (nj * (nj + 1) / 2) + j * nj * above;
    }
    return w;
}

/// Factor E_j of the 2-adic formula (the density divides by it).
struct LevelFactor {
    int level = 0;
    Rational value;
};

struct DensityBreakdown {
    int s = 0;                  // number of nonzero constituents
    long w = 0;
    long q = 0;                 // p = 2 only
    long power_of_two = 0;      // exponent of the leading power of 2
    Rational p_factor = 1;      // P_p(L)
    Rational e_factor = 1;      // E_p(L)
    std::vector<LevelFactor> levels;  // (1 + chi p^{-n_j/2}) for p odd, E_j for p = 2
};

struct LocalDensity {
    Integer prime;
    Rational value;
    DensityBreakdown breakdown;

    /// Reassembles the value from the breakdown.
    Rational recombine() const {
        Rational r = rpow(Rational(2), breakdown.power_of_two);
        if (prime != 2) r *= rpow(Rational(prime), breakdown.w);
        return r * breakdown.p_factor * breakdown.e_factor;
    }
};

namespace detail {

inline bool level_is_even(const JordanDecomposition& d, int j) {
    const JordanBlock* b = d.at_level(j);
    return b == nullptr || b->two_adic->is_even;
}

inline LocalDensity density_odd(const JordanDecomposition& d) {
    const Integer& p = d.prime;
    LocalDensity out;
    out.prime = p;
    auto& br = out.breakdown;
    br.s = static_cast<int>(d.blocks.size());
    br.w = cross_rank_weight(d);
    br.power_of_two = br.s - 1;
    for (const auto& b : d.blocks) {
        br.p_factor *= p_series(p, b.rank / 2);
        Rational f = 1;
        if (b.chi != 0) f += Rational(b.chi) / Rational(ipow(p, static_cast<unsigned long>(b.rank / 2)));
        br.levels.push_back({b.level, f});
        br.e_factor /= f;
    }
    br.e_factor.canonicalize();
    out.value = out.recombine();
    return out;
}

inline LocalDensity density_two(const JordanDecomposition& d) {
    if (!d.normalized) throw InternalError("2-adic density needs a normalized decomposition");
    LocalDensity out;
    out.prime = 2;
    auto& br = out.breakdown;
    br.s = static_cast<int>(d.blocks.size());
    br.w = cross_rank_weight(d);
    for (const auto& b : d.blocks) {
        if (b.two_adic->is_even) continue;
        br.q += level_is_even(d, b.level + 1) ? b.rank : b.rank + 1;
    }
    for (const auto& b : d.blocks) br.p_factor *= p_series(2, b.two_adic->even_rank / 2);

    const int lo = d.blocks.front().level - 1, hi = d.blocks.back().level + 1;
    for (int j = lo; j <= hi; ++j) {
        const JordanBlock* b = d.at_level(j);
        const int chi = b ? b->chi : 1;
        const int even_rank = b ? b->two_adic->even_rank : 0;
        bool special = false;
        if (b && b->two_adic->odd_units.size() == 2)
            special = (b->two_adic->odd_units[0] - b->two_adic->odd_units[1]) % 4 == 0;
        Rational e(1, 2);
        if (level_is_even(d, j - 1) && level_is_even(d, j + 1) && !special)
            e = Rational(1, 2) * (1 + Rational(chi, ipow(Integer(2), static_cast<unsigned long>(even_rank / 2))));
        e.canonicalize();
        br.levels.push_back({j, e});
        br.e_factor /= e;
    }
    br.e_factor.canonicalize();
    br.power_of_two = d.rank() - 1 + br.w - br.q;
    out.value = out.recombine();
    return out;
}

}  // namespace detail

inline LocalDensity local_density(const JordanDecomposition& decomp) {
    return decomp.prime == 2 ? detail::density_two(decomp) : detail::density_odd(decomp);
}

/// alpha_p(L) from the Jordan decomposition of L over Z_p.
inline LocalDensity local_density(const Lattice& lattice, const Integer& p) {
    return local_density(jordan_decompose(lattice, p));
}

/// Sorted distinct primes dividing 2 det(L).
inline std::vector<Integer> bad_primes(const Lattice& lattice) {
    return distinct_primes(2 * lattice.det());
}

// ---------------------------------------------------------------------------
// Siegel counting oracle

/// How X^t S X = S (mod p^r) is read at p = 2. Entrywise compares every entry
/// modulo 2^r; DiagonalDoubled compares the diagonal modulo 2^(r+1).
enum class CountingConvention { Entrywise, DiagonalDoubled };

inline constexpr double kOracleGuard = 1073741824.0;  // 2^30

/// Work estimate of the column-by-column enumeration: all p^(r rank)
/// candidate columns plus the pairwise compatibility scans, which touch
/// about p^(2 r (rank-1)) column pairs per extra column.
inline double oracle_cost(std::size_t rank, const Integer& p, int r) {
    const double pr = std::pow(p.get_d(), r);
    const double n = static_cast<double>(rank);
    return std::pow(pr, n) + (n - 1) * std::pow(pr, 2 * (n - 1));
}

inline void check_oracle_guard(const Lattice& lattice, const Integer& p, int r) {
    if (lattice.rank() > 3)
        throw GuardError("counting oracle limited to rank <= 3, lattice has rank " + std::to_string(lattice.rank()) +
                         " (estimated cost " + std::to_string(oracle_cost(lattice.rank(), p, r)) + ")");
    const double cost = oracle_cost(lattice.rank(), p, r);
    if (cost > kOracleGuard)
        throw GuardError("counting oracle at p=" + p.get_str() + ", r=" + std::to_string(r) + " needs about " +
                         std::to_string(cost) + " steps, above the 2^30 guard");
}

namespace detail {

struct OracleColumn {
    std::uint32_t x[3];
    std::uint32_t sx[3];  // S x, reduced
};

// Counts X = (x_1 .. x_n) with x_i in cand[i] and x_i^t S x_j = t[i][j]
// for i < j. `reduce` maps a nonnegative sum below 3 P^2 to its residue mod P.
// X and -X are solutions together, so only one of x_1, -x_1 is visited.
template <typename Reduce>
std::uint64_t count_columns(std::size_t n, const std::vector<std::vector<OracleColumn>>& cand,
                            const std::uint32_t t[3][3], std::uint32_t P, Reduce reduce) {
    auto pair = [&](const OracleColumn& a, const OracleColumn& b) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc += std::uint64_t(a.x[i]) * b.sx[i];
        return reduce(acc);
    };
    auto weight = [&](const OracleColumn& c) -> int {
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t neg = c.x[i] == 0 ? 0 : P - c.x[i];
            if (c.x[i] != neg) return c.x[i] < neg ? 2 : 0;
        }
        return 1;
    };

    std::uint64_t total = 0;
    if (n == 1) return cand[0].size();
    std::vector<const OracleColumn*> third;
    for (const auto& x1 : cand[0]) {
        const int w = weight(x1);
        if (w == 0) continue;
        std::uint64_t c = 0;
        if (n == 2) {
            for (const auto& x2 : cand[1])
                if (pair(x1, x2) == t[0][1]) ++c;
        } else {
            third.clear();
            for (const auto& x3 : cand[2])
                if (pair(x1, x3) == t[0][2]) third.push_back(&x3);
            if (third.empty()) continue;
            for (const auto& x2 : cand[1]) {
                if (pair(x1, x2) != t[0][1]) continue;
                for (const OracleColumn* x3 : third)
                    if (pair(x2, *x3) == t[1][2]) ++c;
            }
        }
        total += std::uint64_t(w) * c;
    }
    return total;
}

}  // namespace detail

/// 1/2 p^{-r n(n-1)/2} #{X mod p^r : X^t S X = S mod p^r}.
inline Rational siegel_count_oracle(const Lattice& lattice, const Integer& p, int r,
                                    CountingConvention convention = CountingConvention::Entrywise) {
    if (!is_prime(p)) throw PreconditionError(p.get_str() + " is not prime");
    if (r < 1) throw PreconditionError("oracle depth r must be >= 1");
    check_oracle_guard(lattice, p, r);

    const std::size_t n = lattice.rank();
    const std::int64_t P = ipow(p, static_cast<unsigned long>(r)).get_si();
    const std::int64_t diag_mod = (p == 2 && convention == CountingConvention::DiagonalDoubled) ? 2 * P : P;
    std::int64_t s[3][3] = {};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s[i][j] = mod(lattice.entry(i, j), Integer(diag_mod)).get_si();

    std::int64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= P;

    // Candidate columns per diagonal entry: x^t S x = S_ii. The stored S x is
    // reduced mod P, which is all the off-diagonal tests need.
    std::vector<std::vector<detail::OracleColumn>> cand(n);
    for (std::int64_t code = 0; code < total; ++code) {
        detail::OracleColumn c{};
        std::int64_t x[3] = {}, t = code;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = t % P;
            t /= P;
        }
        std::int64_t qv = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < n; ++j) acc = (acc + s[i][j] * x[j]) % diag_mod;
            c.x[i] = static_cast<std::uint32_t>(x[i]);
            c.sx[i] = static_cast<std::uint32_t>(acc % P);
            qv = (qv + x[i] * acc) % diag_mod;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (qv == s[i][i]) cand[i].push_back(c);
    }

    std::uint32_t t[3][3] = {};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<std::uint32_t>(s[i][j] % P);
    const auto up = static_cast<std::uint32_t>(P);
    std::uint64_t count;
    if (p == 2) {
        const std::uint64_t mask = up - 1;
        count = detail::count_columns(n, cand, t, up, [mask](std::uint64_t a) { return std::uint32_t(a & mask); });
    } else {
        count = detail::count_columns(n, cand, t, up, [up](std::uint64_t a) { return std::uint32_t(a % up); });
    }
    const unsigned long exponent = static_cast<unsigned long>(r) * n * (n - 1) / 2;
    return make_rational(Integer(static_cast<unsigned long>(count)), 2 * ipow(p, exponent));
}

struct OracleRun {
    std::vector<std::pair<int, Rational>> values;  // (r, value) in increasing r
    bool stable = false;
    int stable_r = 0;
    Rational value;
};

/// Evaluates the oracle at consecutive depths starting from v_p(2 det) + 1
/// until two consecutive values agree or the guard stops the search.
inline OracleRun stabilized_oracle(const Lattice& lattice, const Integer& p,
                                   CountingConvention convention = CountingConvention::Entrywise,
                                   std::optional<int> start = std::nullopt) {
    OracleRun run;
    int r = start.value_or(valuation(Integer(2 * lattice.det()), p) + 1);
    check_oracle_guard(lattice, p, r + 1);
    run.values.emplace_back(r, siegel_count_oracle(lattice, p, r, convention));
    for (;;) {
        if (oracle_cost(lattice.rank(), p, r + 1) > kOracleGuard) break;
        run.values.emplace_back(r + 1, siegel_count_oracle(lattice, p, r + 1, convention));
        const auto& a = run.values[run.values.size() - 2];
        const auto& b = run.values.back();
        if (a.second == b.second) {
            run.stable = true;
            run.stable_r = a.first;
            run.value = a.second;
            return run;
        }
        ++r;
    }
    run.value = run.values.back().second;
    return run;
}

}  // namespace hmvol
